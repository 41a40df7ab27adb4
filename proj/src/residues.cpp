#include "bhl/residues.hpp"

#include <algorithm>
#include <stdexcept>

namespace bhl {

u64 mulmod(u64 a, u64 b, u64 m) { return (u128)a * b % m; }

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

namespace {

// Jacobi symbol (a/n) for odd n >= 1. Binary algorithm: strip twos with the
// (2/n) rule, flip by reciprocity when both sides are 3 (mod 4).
int jacobi(u64 a, u64 n) {
    int s = 1;
    a %= n;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            const u64 m = n & 7;
            if (m == 3 || m == 5) s = -s;  // (2/n) = -1 iff n = +-3 (mod 8)
        }
        std::swap(a, n);
        if ((a & 3) == 3 && (n & 3) == 3) s = -s;
        a %= n;
    }
    return n == 1 ? s : 0;
}

void guard_odd_prime(u64 p) {
    if (p < 3 || (p & 1) == 0)
        throw std::invalid_argument("legendre: p must be an odd prime");
    // cheap composite rejection; full primality is the caller's contract
    for (u64 d = 3; d <= 1000 && d * d <= p; d += 2)
        if (p % d == 0)
            throw std::invalid_argument("legendre: p is composite");
}

}  // namespace

int legendre(i64 q, u64 p) {
    guard_odd_prime(p);
    const i64 m = ((q % static_cast<i64>(p)) + static_cast<i64>(p)) % static_cast<i64>(p);
    return jacobi(static_cast<u64>(m), p);
}

int legendre_euler(i64 q, u64 p) {
    guard_odd_prime(p);
    const u64 m = static_cast<u64>(((q % static_cast<i64>(p)) + static_cast<i64>(p)) %
                                   static_cast<i64>(p));
    if (m == 0) return 0;
    const u64 e = powmod(m, (p - 1) / 2, p);
    return e == 1 ? 1 : -1;
}

// ---- root counting ----

i64 omega_bruteforce(const IntPolynomial& f, u64 p) {
    if (p > 1000000) throw std::invalid_argument("omega_bruteforce: p too large");
    if (p < 2) throw std::invalid_argument("omega_bruteforce: p must be prime");
    // reduce coefficients once, then Horner over every residue
    std::vector<u64> c(f.coeffs.size());
    for (size_t i = 0; i < c.size(); ++i) {
        const i64 m = ((f.coeffs[i] % static_cast<i64>(p)) + static_cast<i64>(p)) %
                      static_cast<i64>(p);
        c[i] = static_cast<u64>(m);
    }
    i64 count = 0;
    for (u64 t = 0; t < p; ++t) {
        u64 acc = 0;
        for (size_t i = c.size(); i-- > 0;) acc = (mulmod(acc, t, p) + c[i]) % p;
        if (acc == 0) ++count;
    }
    return count;
}

namespace {

struct ReducedQuadratic {
    u64 a, b, c;  // f mod p, ascending stored as c + b t + a t^2
};

ReducedQuadratic reduce_mod(const IntPolynomial& f, u64 p) {
    auto red = [&](i64 v) -> u64 {
        return static_cast<u64>(((v % static_cast<i64>(p)) + static_cast<i64>(p)) %
                                static_cast<i64>(p));
    };
    ReducedQuadratic q{0, 0, 0};
    if (f.coeffs.size() > 0) q.c = red(f.coeffs[0]);
    if (f.coeffs.size() > 1) q.b = red(f.coeffs[1]);
    if (f.coeffs.size() > 2) q.a = red(f.coeffs[2]);
    return q;
}

}  // namespace

i64 omega_quadratic(const IntPolynomial& f, u64 p) {
    if (f.degree() != 2) throw std::invalid_argument("omega_quadratic: degree must be 2");
    const auto q = reduce_mod(f, p);
    if (p == 2 || q.a == 0) {
        // quadratic formula is invalid: degree dropped mod p (or p = 2);
        // the surviving linear/constant part decides
        if (p == 2) return omega_bruteforce(f, 2);
        if (q.b != 0) return 1;          // linear: unique root
        return q.c == 0 ? static_cast<i64>(p) : 0;  // constant
    }
    // omega = (disc/p) + 1; raw jacobi here -- p is a trusted prime and this
    // sits on the constant computation's hot path
    const u64 d2 = (mulmod(q.b, q.b, p) + (p - mulmod(mulmod(4 % p, q.a, p), q.c, p))) % p;
    if (d2 == 0) return 1;
    return jacobi(d2, p) + 1;
}

u64 sqrt_mod_p(u64 a, u64 p) {
    a %= p;
    if (a == 0) return 0;
    if (p == 2) return a;
    // Tonelli-Shanks
    if (powmod(a, (p - 1) / 2, p) != 1)
        throw std::domain_error("sqrt_mod_p: a is not a quadratic residue");
    if ((p & 3) == 3) return powmod(a, (p + 1) / 4, p);
    u64 q = p - 1;
    unsigned s = 0;
    while ((q & 1) == 0) { q >>= 1; ++s; }
    u64 z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    u64 m = s;
    u64 c = powmod(z, q, p);
    u64 t = powmod(a, q, p);
    u64 r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        u64 t2 = t;
        u64 i = 0;
        while (t2 != 1) { t2 = mulmod(t2, t2, p); ++i; }
        u64 b = c;
        for (u64 j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return r;
}

std::vector<u64> poly_roots_mod_p(const IntPolynomial& f, u64 p) {
    if (p < 2) throw std::invalid_argument("poly_roots_mod_p: p must be prime");
    std::vector<u64> roots;
    if (p < 50 || f.degree() > 2) {
        if (p > 1000000)
            throw std::invalid_argument("poly_roots_mod_p: brute force capped at 10^6");
        const auto q = reduce_mod(f, p);
        const bool cubic_plus = f.degree() > 2;
        for (u64 t = 0; t < p; ++t) {
            u64 acc;
            if (cubic_plus) {
                acc = 0;
                for (size_t i = f.coeffs.size(); i-- > 0;) {
                    const i64 m =
                        ((f.coeffs[i] % static_cast<i64>(p)) + static_cast<i64>(p)) %
                        static_cast<i64>(p);
                    acc = (mulmod(acc, t, p) + static_cast<u64>(m)) % p;
                }
            } else {
                acc = (mulmod(mulmod(q.a, t, p), t, p) + mulmod(q.b, t, p) + q.c) % p;
            }
            if (acc == 0) roots.push_back(t);
        }
        return roots;
    }
    const auto q = reduce_mod(f, p);
    if (q.a == 0) {
        if (q.b != 0) {
            // unique root -c/b
            const u64 binv = powmod(q.b, p - 2, p);
            roots.push_back(mulmod(p - q.c, binv, p) % p);
        } else if (q.c == 0) {
            throw std::domain_error("poly_roots_mod_p: f vanishes identically mod p");
        }
        return roots;
    }
    const u64 disc = (mulmod(q.b, q.b, p) + (p - mulmod(mulmod(4 % p, q.a, p), q.c, p))) % p;
    const u64 inv2a = powmod(mulmod(2, q.a, p), p - 2, p);
    if (disc == 0) {
        roots.push_back(mulmod((p - q.b) % p, inv2a, p));
        return roots;
    }
    if (legendre(static_cast<i64>(disc), p) == -1) return roots;
    const u64 s = sqrt_mod_p(disc, p);
    const u64 r1 = mulmod(((p - q.b) + s) % p, inv2a, p);
    const u64 r2 = mulmod(((p - q.b) + (p - s)) % p, inv2a, p);
    roots.push_back(r1);
    if (r2 != r1) roots.push_back(r2);
    std::sort(roots.begin(), roots.end());
    return roots;
}

i64 omega_product(const std::vector<IntPolynomial>& fs, u64 p, bool check_p) {
    if (fs.empty()) throw std::invalid_argument("omega_product: empty polynomial list");
    if (check_p && !is_prime(p)) throw std::invalid_argument("omega_product: p must be prime");
    for (const auto& f : fs) {
        bool all_zero = true;
        for (i64 c : f.coeffs)
            if (c % static_cast<i64>(p) != 0) { all_zero = false; break; }
        if (all_zero || f.coeffs.empty())
            throw std::domain_error("omega_product: polynomial vanishes identically mod p");
    }
    if (fs.size() == 1) {
        const auto& f = fs[0];
        if (f.degree() == 2 && p >= 50) return omega_quadratic(f, p);
        return omega_bruteforce(f, p);
    }
    std::vector<u64> all;
    for (const auto& f : fs) {
        auto roots = poly_roots_mod_p(f, p);
        all.insert(all.end(), roots.begin(), roots.end());
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return static_cast<i64>(all.size());
}

}  // namespace bhl
