#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "bhl/primes.hpp"

namespace bhl {

// Exact integer polynomial, coefficients ascending by degree, canonical
// (no stored leading zeros). Immutable value type.
struct IntPolynomial {
    std::vector<i64> coeffs;

    static IntPolynomial from_coeffs(std::vector<i64> c);
    int degree() const;  // zero polynomial -> -1
    i64 leading() const;
    bool operator==(const IntPolynomial&) const = default;
};

// exact evaluation; throws std::overflow_error if the value leaves i64
i64 eval(const IntPolynomial& f, i64 t);
std::optional<i64> eval_checked(const IntPolynomial& f, i64 t);
mpz_class eval_big(const IntPolynomial& f, const mpz_class& t);
double eval_double(const IntPolynomial& f, double t);

struct FamilyParams {
    i64 n = 0;
    i64 r = 0;
    bool admissible = false;             // r < 4n and r(r-1)/2 = n+1 (mod 2n)
    std::optional<i64> triangular_a;     // present iff 8n+1 is a perfect square
};

// f_{n,r}(t) = 8n^2 t^2 + 2n(2r-1) t + (r(r-1)/2 - n). Throws for n < 2 or r < 1.
std::pair<IntPolynomial, FamilyParams> family(i64 n, i64 r);

// all admissible (n, r), 2 <= n <= n_max, ordered (n asc, r asc); triangular
// n included and flagged
std::vector<FamilyParams> enumerate_pairs(i64 n_max);

// b^2 - 4ac; throws std::invalid_argument unless degree == 2
i64 discriminant(const IntPolynomial& f);

// a with n = a(a+1)/2, if any
std::optional<i64> is_triangular(i64 n);

struct BunyakovskyReport {
    bool cond_a = false;        // positive leading coefficient
    bool cond_b = false;        // irreducible over Z (degree <= 2 only)
    bool cond_b_known = true;   // false for degree > 2: cond_b is then meaningless
    bool cond_c = false;        // not identically 0 mod any prime
    std::vector<i64> blocking_primes;
};

BunyakovskyReport bunyakovsky_check(const IntPolynomial& f);

struct QuadraticFactorization {
    IntPolynomial g, h;
    bool identity_ok = false;
};

// f_{n,r} = g*h for triangular n; throws for non-triangular n
QuadraticFactorization factor_family(i64 n, i64 r);

// canonical text form: ascending coefficients, e.g. "[1,20,32]"
std::string poly_key(const IntPolynomial& f);
std::optional<IntPolynomial> parse_poly(const std::string& s);

}  // namespace bhl
