#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bhl {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

// All primes <= bound, ascending. Immutable once built; safe to share.
struct PrimeCache {
    u64 bound = 0;
    std::vector<u64> primes;
};

// Segmented sieve of Eratosthenes. Throws std::invalid_argument for P < 2.
PrimeCache sieve_upto(u64 P, u64 segment_len = u64(1) << 20);

// Deterministic for all 64-bit inputs (fixed 12-witness Miller-Rabin).
bool is_prime(u64 v);

struct PowerDecomp {
    u64 base;
    unsigned exponent;  // >= 2, maximal: 16 -> (2,4)
};

// Proper-power decomposition with maximal exponent; nothing if v is not b^e, e >= 2.
// Throws std::invalid_argument for v < 2.
std::optional<PowerDecomp> perfect_power_decompose(u64 v);

// floor(v^(1/e)), exact integer correction around the floating seed
u64 int_nth_root(u64 v, unsigned e);

enum class ValueTag { One, Prime, ProperPrimePower, Composite, NonPositive };

struct ValueClass {
    ValueTag tag;
    std::optional<u64> base;        // set for Prime (e=1) and ProperPrimePower
    std::optional<unsigned> exponent;
    bool is_prime_power() const {
        return tag == ValueTag::Prime || tag == ValueTag::ProperPrimePower;
    }
};

ValueClass classify_value(i64 v);
ValueClass classify_u64(u64 v);

// exact (pi(x), Pi(x)): primes <= x and prime powers p^e <= x, e >= 1
std::pair<u64, u64> count_pi_and_Pi(u64 x);

// Binary cache file; see cache format note in primes.cpp.
void cache_save(const PrimeCache& cache, const std::string& path);
PrimeCache cache_load(const std::string& path);

const char* value_tag_name(ValueTag tag);

}  // namespace bhl
