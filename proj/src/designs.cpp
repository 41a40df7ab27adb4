#include "bhl/designs.hpp"

#include <sstream>
#include <stdexcept>

namespace bhl {

namespace {

/// largest k with k(k-1)/2 = s, if any: 8s+1 must be an odd perfect square
std::optional<i64> solve_binomial2(i64 s) {
    if (s < 1) return std::nullopt;
    const u64 disc = 8 * static_cast<u64>(s) + 1;
    const u64 root = int_nth_root(disc, 2);
    if (root * root != disc) return std::nullopt;
    return static_cast<i64>((1 + root) / 2);
}

FamilyParams require_admissible(i64 n, i64 r) {
    const auto [f, params] = family(n, r);
    (void)f;
    if (!params.admissible)
        throw std::invalid_argument("pair (" + std::to_string(n) + "," +
                                    std::to_string(r) + ") is not admissible");
    return params;
}

}  // namespace

UsefulPairResult useful_pair_check(i64 n, i64 c) {
    if (n < 2) throw std::invalid_argument("useful_pair_check: n must be >= 2");
    UsefulPairResult res;
    std::ostringstream diag;
    const ValueClass vc = classify_value(c);
    res.prime_power = vc.is_prime_power();
    if (!res.prime_power) diag << "c is not a prime power; ";
    res.congruent = c > 0 && c % (2 * n) == 1;
    if (!res.congruent) diag << "c != 1 (mod 2n); ";
    if (const auto k = solve_binomial2(c + n)) {
        if (*k >= 2 * n)
            res.k_block = *k;
        else
            diag << "block size k=" << *k << " below 2n; ";
    } else {
        diag << "c+n is not a binomial(k,2); ";
    }
    res.useful = res.prime_power && res.congruent && res.k_block.has_value();
    res.diagnostic = diag.str();
    return res;
}

std::optional<DesignParams> design_params(i64 n, i64 r, i64 t) {
    require_admissible(n, r);
    if (t < 0) throw std::invalid_argument("design_params: t must be >= 0");
    const auto [f, params] = family(n, r);
    (void)params;
    const i64 c = eval(f, t);
    const ValueClass vc = classify_value(c);
    if (!vc.is_prime_power()) return std::nullopt;
    // admissibility gives c = 1 (mod 2n), so d is integral
    DesignParams dp;
    dp.n = n;
    dp.m = 1;
    dp.c = c;
    dp.d = 1 + (c - 1) / n;
    dp.k_block = 4 * n * t + r;
    dp.v = dp.c * dp.d;
    dp.t = t;
    if (dp.k_block < 2 * n) return std::nullopt;  // no valid block size
    return dp;
}

ValueClass t0_classify(i64 n, i64 r) {
    require_admissible(n, r);
    return classify_value(r * (r - 1) / 2 - n);
}

Realization realize_even_power(u64 p, unsigned i) {
    if (p == 2 || !is_prime(p)) throw std::invalid_argument("realize_even_power: p must be an odd prime");
    if (i < 1) throw std::invalid_argument("realize_even_power: i must be >= 1");
    u128 q = 1;
    for (unsigned j = 0; j < i; ++j) {
        q *= p;
        // n = (p^{2i}-1)/8 must fit i64
        if (q > 3000000000ULL) throw std::overflow_error("realize_even_power: p^i too large");
    }
    const u64 pi = static_cast<u64>(q);
    if (pi <= 3) throw std::invalid_argument("realize_even_power: requires p^i > 3");
    Realization out;
    out.n = static_cast<i64>((pi * pi - 1) / 8);
    out.a = static_cast<i64>((pi - 1) / 2);
    out.r = static_cast<i64>((3 * pi + 1) / 2);
    return out;
}

T0Classification reducible_t0_classify(i64 n, i64 r) {
    const auto a = is_triangular(n);
    if (!a) throw std::invalid_argument("reducible_t0_classify: n is not triangular");
    require_admissible(n, r);
    // clause (a): 8n+1 = (2a+1)^2 = p^{2i} needs 2a+1 a power of an odd prime
    // and r the matching (3 p^i + 1)/2
    const u64 m = static_cast<u64>(2 * *a + 1);
    u64 base = m;
    unsigned exp = 1;
    if (m >= 4) {
        if (const auto d = perfect_power_decompose(m)) {
            base = d->base;
            exp = d->exponent;
        }
    }
    if (base > 2 && is_prime(base) && r == static_cast<i64>((3 * m + 1) / 2))
        return {T0Case::EvenPower, base, exp};
    if (n == 3 && r == 5) return {T0Case::Seven, 7, 0};
    return {T0Case::NotPrimePower, 0, 0};
}

}  // namespace bhl
