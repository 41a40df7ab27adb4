#include "bhl/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace bhl {

// ---- IntPolynomial ----

IntPolynomial IntPolynomial::from_coeffs(std::vector<i64> c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
    return IntPolynomial{std::move(c)};
}

int IntPolynomial::degree() const { return static_cast<int>(coeffs.size()) - 1; }

i64 IntPolynomial::leading() const {
    if (coeffs.empty()) return 0;
    return coeffs.back();
}

namespace {

bool add_overflows(i64 a, i64 b, i64& out) { return __builtin_add_overflow(a, b, &out); }
bool mul_overflows(i64 a, i64 b, i64& out) { return __builtin_mul_overflow(a, b, &out); }

}  // namespace

std::optional<i64> eval_checked(const IntPolynomial& f, i64 t) {
    // Horner, abandoning on the first overflowing step
    i64 acc = 0;
    for (auto it = f.coeffs.rbegin(); it != f.coeffs.rend(); ++it) {
        i64 m, s;
        if (mul_overflows(acc, t, m)) return std::nullopt;
        if (add_overflows(m, *it, s)) return std::nullopt;
        acc = s;
    }
    return acc;
}

i64 eval(const IntPolynomial& f, i64 t) {
    if (auto v = eval_checked(f, t)) return *v;
    throw std::overflow_error("eval: value exceeds 64 bits; use eval_big");
}

mpz_class eval_big(const IntPolynomial& f, const mpz_class& t) {
    mpz_class acc = 0;
    for (auto it = f.coeffs.rbegin(); it != f.coeffs.rend(); ++it) {
        acc = acc * t + static_cast<long>(*it);
    }
    return acc;
}

double eval_double(const IntPolynomial& f, double t) {
    double acc = 0.0;
    for (auto it = f.coeffs.rbegin(); it != f.coeffs.rend(); ++it)
        acc = acc * t + static_cast<double>(*it);
    return acc;
}

// ---- the f_{n,r} family ----

std::optional<i64> is_triangular(i64 n) {
    if (n < 1) return std::nullopt;
    const u64 s = 8 * static_cast<u64>(n) + 1;
    const u64 root = int_nth_root(s, 2);
    if (root * root != s) return std::nullopt;
    return static_cast<i64>((root - 1) / 2);
}

std::pair<IntPolynomial, FamilyParams> family(i64 n, i64 r) {
    if (n < 2) throw std::invalid_argument("family: n must be >= 2");
    if (r < 1) throw std::invalid_argument("family: r must be >= 1");
    FamilyParams params;
    params.n = n;
    params.r = r;
    params.triangular_a = is_triangular(n);
    const i64 tri_r = r * (r - 1) / 2;
    params.admissible = r < 4 * n && ((tri_r - (n + 1)) % (2 * n) == 0);
    IntPolynomial f =
        IntPolynomial::from_coeffs({tri_r - n, 2 * n * (2 * r - 1), 8 * n * n});
    return {std::move(f), params};
}

std::vector<FamilyParams> enumerate_pairs(i64 n_max) {
    if (n_max < 2) throw std::invalid_argument("enumerate_pairs: n_max must be >= 2");
    std::vector<FamilyParams> out;
    for (i64 n = 2; n <= n_max; ++n) {
        for (i64 r = 1; r < 4 * n; ++r) {
            auto [f, params] = family(n, r);
            (void)f;
            if (params.admissible) out.push_back(params);
        }
    }
    return out;
}

i64 discriminant(const IntPolynomial& f) {
    if (f.degree() != 2) throw std::invalid_argument("discriminant: degree must be 2");
    const i128 a = f.coeffs[2], b = f.coeffs[1], c = f.coeffs[0];
    const i128 d = b * b - 4 * a * c;
    if (d > i128(INT64_MAX) || d < i128(INT64_MIN))
        throw std::overflow_error("discriminant: exceeds 64 bits");
    return static_cast<i64>(d);
}

// ---- Bunyakovsky conditions ----

namespace {

// prime factors of |v| (trial division + Miller-Rabin + Pollard rho, enough
// for any 64-bit content)
void prime_factors_u64(u64 v, std::vector<i64>& out) {
    for (u64 p = 2; p * p <= v && p < 3000; p = (p == 2 ? 3 : p + 2)) {
        if (v % p == 0) {
            out.push_back(static_cast<i64>(p));
            while (v % p == 0) v /= p;
        }
    }
    if (v == 1) return;
    if (is_prime(v)) {
        out.push_back(static_cast<i64>(v));
        return;
    }
    // Pollard rho (Brent variant), only reachable for composite v > ~9e6
    auto rho = [](u64 n) -> u64 {
        for (u64 c = 1;; ++c) {
            auto g = [&](u64 x) { return (u64)(((u128)x * x + c) % n); };
            u64 x = 2, y = 2, d = 1;
            while (d == 1) {
                x = g(x);
                y = g(g(y));
                d = std::gcd(x > y ? x - y : y - x, n);
            }
            if (d != n) return d;
        }
    };
    const u64 d = rho(v);
    prime_factors_u64(d, out);
    prime_factors_u64(v / d, out);
}

}  // namespace

BunyakovskyReport bunyakovsky_check(const IntPolynomial& f) {
    if (f.degree() < 1)
        throw std::invalid_argument("bunyakovsky_check: polynomial must be non-constant");
    BunyakovskyReport rep;
    rep.cond_a = f.leading() > 0;

    const int deg = f.degree();
    if (deg == 1) {
        rep.cond_b = true;
    } else if (deg == 2) {
        // irreducible over Z iff the discriminant is not a perfect square
        const i64 d = discriminant(f);
        bool square = false;
        if (d >= 0) {
            const u64 root = int_nth_root(static_cast<u64>(d), 2);
            square = root * root == static_cast<u64>(d);
        }
        rep.cond_b = !square;
    } else {
        rep.cond_b = false;
        rep.cond_b_known = false;  // out of scope beyond quadratics
    }

    // candidate blockers: prime divisors of the coefficient gcd, plus every
    // p <= deg (a nonzero poly of degree d mod p, p > d, cannot vanish
    // identically unless all coefficients do)
    u64 content = 0;
    for (i64 c : f.coeffs) content = std::gcd(content, static_cast<u64>(std::llabs(c)));
    std::vector<i64> candidates;
    if (content > 1) prime_factors_u64(content, candidates);
    for (i64 p = 2; p <= deg; ++p)
        if (is_prime(static_cast<u64>(p))) candidates.push_back(p);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    for (i64 p : candidates) {
        bool all_zero = true;
        for (i64 t = 0; t < p && all_zero; ++t) {
            i64 acc = 0;  // Horner mod p, coefficients reduced first
            for (auto it = f.coeffs.rbegin(); it != f.coeffs.rend(); ++it) {
                const i64 c = ((*it % p) + p) % p;
                acc = (acc * t + c) % p;
            }
            if (acc != 0) all_zero = false;
        }
        if (all_zero) rep.blocking_primes.push_back(p);
    }
    rep.cond_c = rep.blocking_primes.empty();
    return rep;
}

// ---- reducible factorization ----

QuadraticFactorization factor_family(i64 n, i64 r) {
    const auto a = is_triangular(n);
    if (!a) throw std::invalid_argument("factor_family: n is not triangular");
    // f_{n,r} = (1/2)(4nt + r + a)(4nt + r - a - 1); exactly one factor has
    // both coefficients even (4n is even; r+a, r-a-1 have opposite parity)
    const i64 b1 = 4 * n, c1 = r + *a;
    const i64 b2 = 4 * n, c2 = r - *a - 1;
    QuadraticFactorization out;
    if (c1 % 2 == 0) {
        out.g = IntPolynomial::from_coeffs({c1 / 2, b1 / 2});
        out.h = IntPolynomial::from_coeffs({c2, b2});
    } else {
        out.g = IntPolynomial::from_coeffs({c1, b1});
        out.h = IntPolynomial::from_coeffs({c2 / 2, b2 / 2});
    }
    // verify g*h = f coefficient-by-coefficient
    const auto [f, params] = family(n, r);
    (void)params;
    const i64 p0 = out.g.coeffs[0] * out.h.coeffs[0];
    const i64 p1 = out.g.coeffs[0] * out.h.coeffs[1] + out.g.coeffs[1] * out.h.coeffs[0];
    const i64 p2 = out.g.coeffs[1] * out.h.coeffs[1];
    out.identity_ok = f.coeffs == std::vector<i64>{p0, p1, p2};
    return out;
}

// ---- canonical text form ----

std::string poly_key(const IntPolynomial& f) {
    std::ostringstream os;
    os << '[';
    for (size_t i = 0; i < f.coeffs.size(); ++i) {
        if (i) os << ',';
        os << f.coeffs[i];
    }
    os << ']';
    return os.str();
}

std::optional<IntPolynomial> parse_poly(const std::string& s) {
    size_t i = 0, n = s.size();
    auto skip_ws = [&] { while (i < n && std::isspace((unsigned char)s[i])) ++i; };
    skip_ws();
    if (i >= n || s[i] != '[') return std::nullopt;
    ++i;
    std::vector<i64> coeffs;
    skip_ws();
    if (i < n && s[i] == ']') { ++i; }
    else {
        while (true) {
            skip_ws();
            size_t consumed = 0;
            i64 v;
            try {
                v = std::stoll(s.substr(i), &consumed);
            } catch (...) {
                return std::nullopt;
            }
            i += consumed;
            coeffs.push_back(v);
            skip_ws();
            if (i < n && s[i] == ',') { ++i; continue; }
            if (i < n && s[i] == ']') { ++i; break; }
            return std::nullopt;
        }
    }
    skip_ws();
    if (i != n) return std::nullopt;
    return IntPolynomial::from_coeffs(std::move(coeffs));
}

}  // namespace bhl
