#pragma once

#include <optional>
#include <string>

#include "bhl/polynomial.hpp"
#include "bhl/primes.hpp"

namespace bhl {

// Parameters of the 2-design attached to a prime-power value c = f_{n,r}(t).
// m is fixed at 1 by the construction.
struct DesignParams {
    i64 n = 0;
    i64 m = 1;
    i64 c = 0;        // prime power class size, c = f(t)
    i64 d = 0;        // class count, 1 + (c-1)/n
    i64 k_block = 0;  // block size, 4nt + r
    i64 v = 0;        // points, c*d
    i64 t = 0;
};

struct UsefulPairResult {
    bool useful = false;
    bool prime_power = false;
    bool congruent = false;           // c = 1 (mod 2n)
    std::optional<i64> k_block;       // k >= 2n with k(k-1)/2 = c+n, if any
    std::string diagnostic;
};

UsefulPairResult useful_pair_check(i64 n, i64 c);

// nothing unless f_{n,r}(t) is a prime power and a valid block size exists;
// throws std::invalid_argument for non-admissible (n, r) or t < 0
std::optional<DesignParams> design_params(i64 n, i64 r, i64 t);

// classification of f_{n,r}(0); throws for non-admissible pairs
ValueClass t0_classify(i64 n, i64 r);

struct Realization {
    i64 n, r, a;
};

// Even prime-power realization at t = 0: given odd prime p and i >= 1 with
// p^i > 3, the pair (n, r) = ((p^{2i}-1)/8, (3p^i+1)/2) has f_{n,r}(0) = p^{2i}
// and n triangular with parameter a = (p^i-1)/2.
Realization realize_even_power(u64 p, unsigned i);

enum class T0Case { EvenPower, Seven, NotPrimePower };

struct T0Classification {
    T0Case kind = T0Case::NotPrimePower;
    u64 p = 0;       // EvenPower: f(0) = p^{2i}
    unsigned i = 0;
};

// Clause analysis of the t = 0 value for reducible (triangular-n) pairs;
// throws for non-triangular n or non-admissible (n, r).
T0Classification reducible_t0_classify(i64 n, i64 r);

}  // namespace bhl
