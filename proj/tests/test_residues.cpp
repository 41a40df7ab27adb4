#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <initializer_list>
#include <random>
#include <set>
#include <stdexcept>

#include "bhl/polynomial.hpp"
#include "bhl/primes.hpp"
#include "bhl/residues.hpp"

using namespace bhl;

TEST_CASE("legendre symbol: known values") {
    CHECK(legendre(1, 3) == 1);
    CHECK(legendre(2, 3) == -1);
    CHECK(legendre(0, 5) == 0);
    CHECK(legendre(105, 53) == 1);

    // quadratic residues mod 17
    const std::set<i64> qr17 = {1, 2, 4, 8, 9, 13, 15, 16};
    for (i64 q = 1; q < 17; ++q)
        CHECK(legendre(q, 17) == (qr17.count(q) ? 1 : -1));

    // supplements: (-1/p) and (2/p)
    CHECK(legendre(-1, 13) == 1);   // 13 = 1 (mod 4)
    CHECK(legendre(-1, 19) == -1);  // 19 = 3 (mod 4)
    CHECK(legendre(2, 17) == 1);    // 17 = 1 (mod 8)
    CHECK(legendre(2, 11) == -1);   // 11 = 3 (mod 8)
    CHECK(legendre(2, 7) == 1);     // 7 = 7 (mod 8)
}

TEST_CASE("legendre symbol: structure") {
    std::mt19937 rng(12345);
    const u64 ps[] = {53, 101, 499, 997, 1009};
    for (u64 p : ps) {
        std::uniform_int_distribution<i64> d(-i64(2 * p), i64(2 * p));
        for (int iter = 0; iter < 40; ++iter) {
            const i64 a = d(rng), b = d(rng);
            CHECK(legendre(a * b % i64(p), p) == legendre(a, p) * legendre(b, p));
            CHECK(legendre(a + i64(p), p) == legendre(a, p));
            CHECK(legendre(a - i64(p), p) == legendre(a, p));
        }
    }
}

TEST_CASE("legendre agrees with Euler's criterion") {
    for (u64 p : {3, 5, 7, 11, 31, 97, 131, 197}) {
        for (i64 q = -i64(2 * p); q <= i64(2 * p); ++q)
            REQUIRE(legendre(q, p) == legendre_euler(q, p));
    }
}

TEST_CASE("legendre rejects bad moduli") {
    CHECK_THROWS_AS(legendre(3, 2), std::invalid_argument);
    CHECK_THROWS_AS(legendre(3, 1), std::invalid_argument);
    CHECK_THROWS_AS(legendre(3, 9), std::invalid_argument);
    CHECK_THROWS_AS(legendre(3, 15), std::invalid_argument);
    CHECK_THROWS_AS(legendre(3, 1007), std::invalid_argument);  // 19 * 53
}

TEST_CASE("root counts: closed form vs brute force") {
    const auto f23 = family(2, 3).first;
    for (u64 p : {2, 3, 5, 7, 11, 13, 17, 53, 101, 997})
        CHECK(omega_quadratic(f23, p) == omega_bruteforce(f23, p));

    // p = 3 divides 2n = 18: the quadratic degenerates to the constant 1
    CHECK(omega_quadratic(family(9, 5).first, 3) == 0);
    CHECK(omega_bruteforce(family(9, 5).first, 3) == 0);

    // t^2 + t + 41 mod 41: t(t+1), two roots
    const auto e41 = IntPolynomial::from_coeffs({41, 1, 1});
    CHECK(omega_quadratic(e41, 41) == 2);

    // leading coefficient divisible by p
    CHECK(omega_quadratic(IntPolynomial::from_coeffs({0, 1, 2}), 2) == 1);
    CHECK(omega_quadratic(IntPolynomial::from_coeffs({1, 0, 2}), 2) == 0);

    // identically zero mod 3: every residue is a root
    const auto vanish = IntPolynomial::from_coeffs({3, 0, 6});
    CHECK(omega_quadratic(vanish, 3) == 3);
    CHECK(omega_bruteforce(vanish, 3) == 3);
}

TEST_CASE("root counts: randomized sweep") {
    std::mt19937 rng(987654);
    std::uniform_int_distribution<i64> coeff(-50, 50);
    std::uniform_int_distribution<u64> pick(2, 1999);
    int done = 0;
    while (done < 120) {
        const u64 p = pick(rng);
        if (!is_prime(p)) continue;
        const auto f =
            IntPolynomial::from_coeffs({coeff(rng), coeff(rng), coeff(rng)});
        if (f.degree() != 2) continue;
        REQUIRE(omega_quadratic(f, p) == omega_bruteforce(f, p));
        ++done;
    }
}

TEST_CASE("explicit root sets") {
    const auto f23 = family(2, 3).first;
    for (u64 p : {53, 1009, 104729}) {
        const auto roots = poly_roots_mod_p(f23, p);
        CHECK(i64(roots.size()) == omega_quadratic(f23, p));
        u64 prev = 0;
        bool first = true;
        for (u64 r : roots) {
            if (!first) CHECK(prev < r);
            prev = r;
            first = false;
            u64 v = ((32 * r % p) * r % p + 20 * r % p + 1) % p;
            CHECK(v == 0);
        }
    }
    CHECK(poly_roots_mod_p(IntPolynomial::from_coeffs({3, 4}), 7) ==
          std::vector<u64>{1});
}

TEST_CASE("omega of a product: union of root sets") {
    const auto fac = factor_family(3, 5);  // (12t+7)(6t+1)
    const std::vector<IntPolynomial> pair = {fac.g, fac.h};
    CHECK(omega_product(pair, 5) == 1);   // shared root t = 4
    CHECK(omega_product(pair, 7) == 2);
    CHECK(omega_product(pair, 11) == 2);
    CHECK(omega_product(pair, 13) == 2);

    // brute-force cross-check of the union count
    for (u64 p : {5, 7, 11, 13, 17, 19, 23, 29}) {
        i64 cnt = 0;
        for (u64 t = 0; t < p; ++t) {
            const bool g0 = (eval(fac.g, i64(t)) % i64(p)) == 0;
            const bool h0 = (eval(fac.h, i64(t)) % i64(p)) == 0;
            if (g0 || h0) ++cnt;
        }
        CHECK(omega_product(pair, p) == cnt);
    }

    CHECK_THROWS_AS(omega_product({IntPolynomial::from_coeffs({3, 3, 3})}, 3),
                    std::domain_error);
    CHECK_THROWS_AS(omega_product(pair, 15), std::invalid_argument);
}

TEST_CASE("modular square roots") {
    for (u64 p : {3, 5, 13, 17, 97, 193, 577, 786433}) {
        int tested = 0;
        for (u64 a = 1; a < p && tested < 60; ++a) {
            if (legendre_euler(i64(a), p) != 1) continue;
            const u64 r = sqrt_mod_p(a, p);
            CHECK(mulmod(r, r, p) == a);
            ++tested;
        }
    }
}

TEST_CASE("modular arithmetic helpers") {
    const u64 p = 2305843009213693951ULL;  // 2^61 - 1
    CHECK(powmod(3, p - 1, p) == 1);
    CHECK(mulmod(p - 1, p - 1, p) == 1);
    CHECK(powmod(2, 61, p) == 1);  // 2^61 = 1 (mod 2^61 - 1)
    CHECK(mulmod(123456789012345678ULL, 987654321098765432ULL,
                 18446744073709551557ULL) ==
          u64((u128(123456789012345678ULL) * 987654321098765432ULL) %
              18446744073709551557ULL));
}
