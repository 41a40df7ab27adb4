#pragma once

#include <vector>

#include "bhl/polynomial.hpp"
#include "bhl/primes.hpp"

namespace bhl {

// Legendre symbol (q/p) for odd prime p, computed by the binary Jacobi
// algorithm (no factorization of q). Rejects p = 2 and any composite p
// caught by trial division up to 10^3; beyond that the caller guarantees
// primality.
int legendre(i64 q, u64 p);

// Euler's criterion q^((p-1)/2) mod p; independent oracle used by tests.
int legendre_euler(i64 q, u64 p);

// number of roots of f mod p; closed form via (disc/p)+1 when the quadratic
// formula applies, degree-reduction case analysis when p | leading or p = 2
i64 omega_quadratic(const IntPolynomial& f, u64 p);

// exact count by scanning all residues; guarded to p <= 10^6
i64 omega_bruteforce(const IntPolynomial& f, u64 p);

// distinct roots of f mod p (degree <= 2 closed form, Tonelli-Shanks for the
// square root; brute force for small p or higher degree)
std::vector<u64> poly_roots_mod_p(const IntPolynomial& f, u64 p);

// |union of root sets of the f_i mod p| -- the omega of the product polynomial.
// Throws std::domain_error if some f_i vanishes identically mod p, and
// std::invalid_argument for composite p (check skippable by trusted callers
// iterating a prime cache).
i64 omega_product(const std::vector<IntPolynomial>& fs, u64 p, bool check_p = true);

// Tonelli-Shanks: x with x^2 = a (mod p); pre: p odd prime, (a/p) = 1
u64 sqrt_mod_p(u64 a, u64 p);

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 a, u64 e, u64 m);

}  // namespace bhl
