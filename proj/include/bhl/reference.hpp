#pragma once

#include <vector>

#include "bhl/counter.hpp"
#include "bhl/polynomial.hpp"
#include "bhl/primes.hpp"

// Serial reference implementations: straight single-threaded loops with none
// of the production shortcuts (no presieve, no chunking). Used by tests to
// pin the parallel kernels down, and by the benchmark as the baseline.
namespace bhl::ref {

u64 count_Q_serial(const IntPolynomial& f, u64 x);
std::vector<PrimePowerHit> scan_prime_powers_serial(const IntPolynomial& f, u64 x);

// one uninterrupted compensated log-sum over all primes <= P
double constant_serial(const std::vector<IntPolynomial>& fs, u64 P);

bool trial_division_is_prime(u64 v);

}  // namespace bhl::ref
