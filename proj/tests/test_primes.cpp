#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <stdexcept>

#include "bhl/primes.hpp"
#include "bhl/reference.hpp"

using namespace bhl;

TEST_CASE("sieve basics") {
    const auto c = sieve_upto(100);
    CHECK(c.bound == 100);
    CHECK(c.primes.size() == 25);
    CHECK(c.primes.front() == 2);
    CHECK(c.primes.back() == 97);

    CHECK(sieve_upto(2).primes == std::vector<u64>{2});
    CHECK_THROWS_AS(sieve_upto(1), std::invalid_argument);
}

TEST_CASE("sieve across segment boundaries") {
    // a tiny segment forces many segment transitions
    const auto small_seg = sieve_upto(100000, 1 << 8);
    const auto one_shot = sieve_upto(100000);
    CHECK(small_seg.primes == one_shot.primes);
    CHECK(one_shot.primes.size() == 9592);  // pi(1e5)
}

TEST_CASE("deterministic Miller-Rabin") {
    CHECK_FALSE(is_prime(0));
    CHECK_FALSE(is_prime(1));
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK_FALSE(is_prime(4));

    // Carmichael numbers
    CHECK_FALSE(is_prime(561));
    CHECK_FALSE(is_prime(41041));
    // strong pseudoprime to several small bases
    CHECK_FALSE(is_prime(3215031751ULL));

    CHECK(is_prime(2305843009213693951ULL));       // 2^61 - 1
    CHECK(is_prime(18446744073709551557ULL));      // largest 64-bit prime
    CHECK_FALSE(is_prime(18446744073709551615ULL));

    for (u64 v = 2; v <= 20000; ++v)
        REQUIRE(is_prime(v) == ref::trial_division_is_prime(v));
}

TEST_CASE("perfect power decomposition is maximal") {
    const auto check = [](u64 v, u64 base, unsigned e) {
        const auto d = perfect_power_decompose(v);
        REQUIRE(d.has_value());
        CHECK(d->base == base);
        CHECK(d->exponent == e);
    };
    check(4, 2, 2);
    check(8, 2, 3);
    check(16, 2, 4);  // not (4, 2)
    check(64, 2, 6);
    check(729, 3, 6);
    check(36, 6, 2);
    check(100, 10, 2);
    check(6436343, 23, 5);
    check(u64(1) << 62, 2, 62);
    check(450283905890997363ULL, 3, 37);
    check(9223372030926249001ULL, 3037000499ULL, 2);

    for (u64 v : {2ULL, 3ULL, 5ULL, 6ULL, 7ULL, 10ULL, 12ULL, 97ULL,
                  (1ULL << 62) - 1})
        CHECK_FALSE(perfect_power_decompose(v).has_value());

    CHECK_THROWS_AS(perfect_power_decompose(1), std::invalid_argument);
    CHECK_THROWS_AS(perfect_power_decompose(0), std::invalid_argument);
}

TEST_CASE("integer nth root is exact at edges") {
    CHECK(int_nth_root(~u64(0), 2) == 4294967295ULL);
    const u64 k = 2642245;  // k^3 just fits in 64 bits
    CHECK(int_nth_root(k * k * k, 3) == k);
    CHECK(int_nth_root(k * k * k - 1, 3) == k - 1);
    const u64 s = 3037000499ULL;  // floor(sqrt(2^63))-ish
    CHECK(int_nth_root(s * s, 2) == s);
    CHECK(int_nth_root(s * s - 1, 2) == s - 1);
    CHECK(int_nth_root(s * s + 1, 2) == s);
    CHECK(int_nth_root(1, 7) == 1);
}

TEST_CASE("value classification") {
    CHECK(classify_value(-5).tag == ValueTag::NonPositive);
    CHECK(classify_value(0).tag == ValueTag::NonPositive);
    CHECK(classify_value(1).tag == ValueTag::One);
    CHECK(classify_value(2).tag == ValueTag::Prime);
    CHECK(classify_value(53).tag == ValueTag::Prime);
    CHECK(classify_value(12).tag == ValueTag::Composite);
    CHECK(classify_value(36).tag == ValueTag::Composite);  // 6^2: base not prime

    const auto nine = classify_value(9);
    CHECK(nine.tag == ValueTag::ProperPrimePower);
    CHECK(nine.base == 3);
    CHECK(nine.exponent == 2);
    CHECK(nine.is_prime_power());

    const auto twenty_seven = classify_value(27);
    CHECK(twenty_seven.base == 3);
    CHECK(twenty_seven.exponent == 3);

    CHECK(classify_value(53).is_prime_power());
    CHECK_FALSE(classify_value(1).is_prime_power());
    CHECK_FALSE(classify_value(36).is_prime_power());

    CHECK(classify_u64(169).tag == ValueTag::ProperPrimePower);
    CHECK(classify_u64(169).base == 13);
}

TEST_CASE("pi and Pi") {
    const auto [pi4, Pi4] = count_pi_and_Pi(10000);
    CHECK(pi4 == 1229);
    CHECK(Pi4 == 1280);

    const auto [pi2, Pi2] = count_pi_and_Pi(100);
    CHECK(pi2 == 25);
    CHECK(Pi2 == 35);

    // Pi(x) - pi(x) telescopes over higher powers
    const auto [pi6, Pi6] = count_pi_and_Pi(1000000);
    CHECK(pi6 == 78498);
    CHECK(Pi6 == 78734);
}

TEST_CASE("prime cache file round trip") {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path();
    const auto path = (dir / "bhl_test_cache.bin").string();

    const auto orig = sieve_upto(10000);
    cache_save(orig, path);
    const auto back = cache_load(path);
    CHECK(back.bound == orig.bound);
    CHECK(back.primes == orig.primes);

    SUBCASE("corrupt magic") {
        std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(0);
        f.put('X');
        f.close();
        CHECK_THROWS_AS(cache_load(path), std::runtime_error);
    }
    SUBCASE("flipped payload byte fails the checksum") {
        cache_save(orig, path);
        std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(40);  // somewhere inside the prime list
        f.put('\x7f');
        f.close();
        CHECK_THROWS_AS(cache_load(path), std::runtime_error);
    }
    SUBCASE("truncated file") {
        cache_save(orig, path);
        fs::resize_file(path, fs::file_size(path) / 2);
        CHECK_THROWS_AS(cache_load(path), std::runtime_error);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(cache_load((dir / "no_such_cache.bin").string()),
                        std::runtime_error);
    }
    std::remove(path.c_str());
}
