#include "bhl/primes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace bhl {

// ---- sieve ----

namespace {

// odd-only bitmap sieve of [2, limit], used for the base primes
std::vector<u64> small_sieve(u64 limit) {
    std::vector<u64> out;
    if (limit < 2) return out;
    out.push_back(2);
    const u64 half = (limit - 1) / 2;  // index i <-> odd number 2i+1, i >= 1
    std::vector<bool> composite(half + 1, false);
    for (u64 i = 1; 2 * i * (i + 1) <= half; ++i) {
        if (composite[i]) continue;
        const u64 p = 2 * i + 1;
        for (u64 j = 2 * i * (i + 1); j <= half; j += p) composite[j] = true;
    }
    for (u64 i = 1; i <= half; ++i)
        if (!composite[i]) out.push_back(2 * i + 1);
    return out;
}

}  // namespace

PrimeCache sieve_upto(u64 P, u64 segment_len) {
    if (P < 2) throw std::invalid_argument("sieve_upto: P must be >= 2");
    if (segment_len < 64) segment_len = 64;

    PrimeCache cache;
    cache.bound = P;

    const u64 root = int_nth_root(P, 2);
    std::vector<u64> base = small_sieve(std::max<u64>(root, 2));

    if (P <= std::max<u64>(root, 2)) {
        for (u64 p : base)
            if (p <= P) cache.primes.push_back(p);
        return cache;
    }

    // estimate pi(P) ~ P/ln P to cut reallocations
    cache.primes.reserve(static_cast<size_t>(1.15 * P / std::log((double)P)) + 16);
    for (u64 p : base) cache.primes.push_back(p);

    std::vector<bool> seg(segment_len);
    for (u64 lo = std::max<u64>(root, 2) + 1; lo <= P; lo += segment_len) {
        const u64 hi = std::min(P, lo + segment_len - 1);
        std::fill(seg.begin(), seg.end(), false);
        for (u64 p : base) {
            if (p * p > hi) break;
            u64 start = ((lo + p - 1) / p) * p;
            if (start < p * p) start = p * p;
            for (u64 m = start; m <= hi; m += p) seg[m - lo] = true;
        }
        for (u64 v = lo; v <= hi; ++v)
            if (!seg[v - lo]) cache.primes.push_back(v);
    }
    return cache;
}

// ---- primality ----

namespace {

inline u64 mulmod_u64(u64 a, u64 b, u64 m) { return (u128)a * b % m; }

inline u64 powmod_u64(u64 a, u64 e, u64 m) {
    u64 r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

constexpr u64 kWitnesses[12] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

}  // namespace

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : kWitnesses) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while (!(d & 1)) {
        d >>= 1;
        ++s;
    }
    // deterministic below 2^64 for this witness set
    for (u64 a : kWitnesses) {
        u64 x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

// ---- perfect powers ----

u64 int_nth_root(u64 v, unsigned e) {
    if (e == 0) throw std::invalid_argument("int_nth_root: e = 0");
    if (v < 2 || e == 1) return v;
    if (e >= 64) return 1;
    u64 r = (u64)std::llround(std::pow((double)v, 1.0 / e));
    if (r < 1) r = 1;
    // float seed can be off by a couple; correct exactly
    auto pow_le = [&](u64 b) {  // b^e <= v without overflow
        u128 acc = 1;
        for (unsigned i = 0; i < e; ++i) {
            acc *= b;
            if (acc > v) return false;
        }
        return true;
    };
    while (!pow_le(r)) --r;
    while (pow_le(r + 1)) ++r;
    return r;
}

std::optional<PowerDecomp> perfect_power_decompose(u64 v) {
    if (v < 2) throw std::invalid_argument("perfect_power_decompose: v must be >= 2");
    // smallest prime e with v = b^e, then recurse on b -> maximal total exponent
    constexpr unsigned small_primes[] = {2,  3,  5,  7,  11, 13, 17, 19,
                                         23, 29, 31, 37, 41, 43, 47, 53, 59, 61};
    for (unsigned e : small_primes) {
        if ((u64(1) << e) > v) break;  // b >= 2 needs 2^e <= v
        u64 b = int_nth_root(v, e);
        u128 acc = 1;
        for (unsigned i = 0; i < e; ++i) acc *= b;
        if (acc == v) {
            if (auto inner = (b >= 2 && b < v) ? perfect_power_decompose(b)
                                               : std::nullopt;
                inner) {
                return PowerDecomp{inner->base, inner->exponent * e};
            }
            return PowerDecomp{b, e};
        }
    }
    return std::nullopt;
}

ValueClass classify_u64(u64 v) {
    if (v == 0) return {ValueTag::NonPositive, std::nullopt, std::nullopt};
    if (v == 1) return {ValueTag::One, std::nullopt, std::nullopt};
    if (is_prime(v)) return {ValueTag::Prime, v, 1u};
    if (auto d = perfect_power_decompose(v); d && is_prime(d->base))
        return {ValueTag::ProperPrimePower, d->base, d->exponent};
    return {ValueTag::Composite, std::nullopt, std::nullopt};
}

ValueClass classify_value(i64 v) {
    if (v <= 0) return {ValueTag::NonPositive, std::nullopt, std::nullopt};
    return classify_u64(static_cast<u64>(v));
}

const char* value_tag_name(ValueTag tag) {
    switch (tag) {
        case ValueTag::One: return "One";
        case ValueTag::Prime: return "Prime";
        case ValueTag::ProperPrimePower: return "ProperPrimePower";
        case ValueTag::Composite: return "Composite";
        case ValueTag::NonPositive: return "NonPositive";
    }
    return "?";
}

// ---- pi / Pi ----

std::pair<u64, u64> count_pi_and_Pi(u64 x) {
    if (x < 2) throw std::invalid_argument("count_pi_and_Pi: x must be >= 2");
    // Pi(x) = sum over e >= 1 of pi(floor(x^(1/e)))
    PrimeCache cache = sieve_upto(x);
    const u64 pi = cache.primes.size();
    u64 Pi = pi;
    for (unsigned e = 2; (u64(1) << e) <= x; ++e) {
        const u64 r = int_nth_root(x, e);
        if (r < 2) break;
        Pi += std::upper_bound(cache.primes.begin(), cache.primes.end(), r) -
              cache.primes.begin();
    }
    return {pi, Pi};
}

// ---- cache file io ----
// layout: 8-byte magic "BHLPRIME", u64 LE bound, u64 LE count, count u64 LE
// primes, u64 LE checksum = XOR of all payload words (bound, count, primes)

namespace {

constexpr char kMagic[8] = {'B', 'H', 'L', 'P', 'R', 'I', 'M', 'E'};

void put_u64(std::ofstream& out, u64 v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = (v >> (8 * i)) & 0xff;
    out.write(reinterpret_cast<char*>(b), 8);
}

bool get_u64(std::ifstream& in, u64& v) {
    unsigned char b[8];
    if (!in.read(reinterpret_cast<char*>(b), 8)) return false;
    v = 0;
    for (int i = 0; i < 8; ++i) v |= u64(b[i]) << (8 * i);
    return true;
}

}  // namespace

void cache_save(const PrimeCache& cache, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cache_save: cannot open " + path);
    out.write(kMagic, 8);
    u64 checksum = cache.bound ^ u64(cache.primes.size());
    put_u64(out, cache.bound);
    put_u64(out, cache.primes.size());
    for (u64 p : cache.primes) {
        put_u64(out, p);
        checksum ^= p;
    }
    put_u64(out, checksum);
    if (!out) throw std::runtime_error("cache_save: write failed on " + path);
}

PrimeCache cache_load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cache_load: cannot open " + path);
    char magic[8];
    if (!in.read(magic, 8) || std::memcmp(magic, kMagic, 8) != 0)
        throw std::runtime_error("cache_load: corrupt header in " + path);
    PrimeCache cache;
    u64 count = 0;
    if (!get_u64(in, cache.bound) || !get_u64(in, count))
        throw std::runtime_error("cache_load: corrupt header in " + path);
    u64 checksum = cache.bound ^ count;
    cache.primes.reserve(count);
    for (u64 i = 0; i < count; ++i) {
        u64 p;
        if (!get_u64(in, p))
            throw std::runtime_error("cache_load: checksum mismatch (truncated) in " + path);
        cache.primes.push_back(p);
        checksum ^= p;
    }
    u64 stored = 0;
    if (!get_u64(in, stored) || stored != checksum)
        throw std::runtime_error("cache_load: checksum mismatch in " + path);
    return cache;
}

}  // namespace bhl
