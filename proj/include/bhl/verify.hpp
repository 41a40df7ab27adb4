#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bhl::verify {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;  // measured-vs-expected summary, one line
};

enum class Profile { Quick, Paper };

// Run one criterion (1..10) or all of them. Quick profile uses the desk-scale
// bounds; Paper runs the full prime bounds and the x = 10^8 estimate checks.
CriterionResult run_criterion(int id, Profile profile);
std::vector<CriterionResult> run_all(Profile profile, std::ostream& progress);

// extended paper-profile run: recompute the 20-pair table at x = 10^8
// (counts included); prints as it goes, returns overall success
bool run_paper_table(std::ostream& out);

}  // namespace bhl::verify
