#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "bhl/polynomial.hpp"
#include "bhl/primes.hpp"

namespace bhl {

struct EstimateReport {
    std::string poly_key;
    u64 x = 0;
    u64 Q = 0;
    double E = 0.0;
    double relative_error = 0.0;  // (E - Q) / Q
    u64 constant_bound = 0;
};

struct PrimePowerHit {
    u64 t;
    u64 value;
    u64 base;
    unsigned exponent;  // >= 2
};

struct CounterOptions {
    int threads = 0;          // 0 = library default
    u64 chunk = u64(1) << 16; // contiguous t-range per work item
    std::string journal_path; // empty = no checkpointing
};

// exact number of t in [1, x] with f(t) prime
u64 count_Q(const IntPolynomial& f, u64 x, const CounterOptions& opt = {});

// conjunction variant: t where every f_i(t) is prime
u64 count_Q_tuple(const std::vector<IntPolynomial>& fs, u64 x,
                  const CounterOptions& opt = {});

// all t in [1, x] with f(t) a proper prime power, ascending t
std::vector<PrimePowerHit> scan_prime_powers(const IntPolynomial& f, u64 x,
                                             const CounterOptions& opt = {});

// count + ledger-backed constant + estimate in one report
EstimateReport compare(const IntPolynomial& f, u64 x, u64 P,
                       const std::string& ledger_path,
                       const CounterOptions& opt = {});

// classification of f(t) for t = 0 .. limit-1 (design hunting starts at 0)
std::vector<std::tuple<i64, i64, ValueClass>> first_hits(const IntPolynomial& f,
                                                         int limit);

std::string report_csv(const std::vector<EstimateReport>& rows);
std::string report_table(const std::vector<EstimateReport>& rows);

}  // namespace bhl
