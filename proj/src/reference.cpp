#include "bhl/reference.hpp"

#include <cmath>
#include <stdexcept>

#include <gmpxx.h>

#include "bhl/residues.hpp"

namespace bhl::ref {

u64 count_Q_serial(const IntPolynomial& f, u64 x) {
    u64 count = 0;
    for (u64 t = 1; t <= x; ++t) {
        if (const auto v = eval_checked(f, static_cast<i64>(t))) {
            count += *v >= 2 && is_prime(static_cast<u64>(*v));
        } else {
            const mpz_class big = eval_big(f, mpz_class(static_cast<unsigned long>(t)));
            count += big >= 2 && mpz_probab_prime_p(big.get_mpz_t(), 40) > 0;
        }
    }
    return count;
}

std::vector<PrimePowerHit> scan_prime_powers_serial(const IntPolynomial& f, u64 x) {
    std::vector<PrimePowerHit> hits;
    for (u64 t = 1; t <= x; ++t) {
        const auto v = eval_checked(f, static_cast<i64>(t));
        if (!v || *v < 4) continue;
        if (const auto d = perfect_power_decompose(static_cast<u64>(*v));
            d && is_prime(d->base))
            hits.push_back({t, static_cast<u64>(*v), d->base, d->exponent});
    }
    return hits;
}

double constant_serial(const std::vector<IntPolynomial>& fs, u64 P) {
    if (fs.empty()) throw std::invalid_argument("constant_serial: empty polynomial list");
    const PrimeCache cache = sieve_upto(P);
    const int k = static_cast<int>(fs.size());
    double sum = 0.0, comp = 0.0;  // one Neumaier stream, no chunking
    for (u64 p : cache.primes) {
        const i64 w = omega_product(fs, p, /*check_p=*/false);
        if (w >= static_cast<i64>(p))
            throw std::domain_error("constant_serial: omega = p");
        const double term = -k * std::log1p(-1.0 / static_cast<double>(p)) +
                            std::log1p(-static_cast<double>(w) / static_cast<double>(p));
        const double t = sum + term;
        if (std::abs(sum) >= std::abs(term))
            comp += (sum - t) + term;
        else
            comp += (term - t) + sum;
        sum = t;
    }
    return std::exp(sum + comp);
}

bool trial_division_is_prime(u64 v) {
    if (v < 2) return false;
    for (u64 d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

}  // namespace bhl::ref
