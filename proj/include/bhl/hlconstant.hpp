#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bhl/polynomial.hpp"
#include "bhl/primes.hpp"

namespace bhl {

struct HLConstant {
    double value = 0.0;
    u64 prime_bound = 0;
    int k = 0;                           // number of polynomials
    std::vector<std::string> poly_keys;  // canonical text forms
    std::string computed_at;             // ISO-8601 UTC
};

// Truncated Hardy-Littlewood constant
//   prod over primes p <= P of (1 - 1/p)^(-k) * (1 - omega(p)/p),
// accumulated as a compensated sum of logs in ascending prime order.
// Deterministic for fixed (fs, P) regardless of thread count.
// Throws std::domain_error if some f vanishes identically mod some p
// (omega = p would zero the product), std::invalid_argument for empty fs
// or P < 2.
HLConstant compute_constant(const std::vector<IntPolynomial>& fs, u64 P,
                            const PrimeCache* cache = nullptr);

// partial products at each checkpoint, one pass; checkpoints ascending
std::vector<std::pair<u64, double>> convergence_trace(
    const std::vector<IntPolynomial>& fs, const std::vector<u64>& checkpoints,
    const PrimeCache* cache = nullptr);

// Append-only tab-separated ledger keyed by (poly list, P); malformed lines
// are skipped with a warning on stderr, never trusted.
HLConstant ledger_get_or_compute(const std::vector<IntPolynomial>& fs, u64 P,
                                 const std::string& ledger_path,
                                 const PrimeCache* cache = nullptr);

std::string joined_poly_keys(const std::vector<IntPolynomial>& fs);

}  // namespace bhl
