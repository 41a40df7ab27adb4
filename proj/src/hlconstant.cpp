#include "bhl/hlconstant.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "bhl/residues.hpp"

namespace bhl {

namespace {

// Neumaier-compensated summation: the factors are ~1 so the log terms are
// tiny and of mixed sign; a plain sum visibly loses digits over ~5.76M terms.
struct CompensatedSum {
    double sum = 0.0, comp = 0.0;
    void add(double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    double total() const { return sum + comp; }
};

double log_factor(const std::vector<IntPolynomial>& fs, int k, u64 p) {
    const i64 w = omega_product(fs, p, /*check_p=*/false);
    if (w >= static_cast<i64>(p))
        throw std::domain_error(
            "compute_constant: omega = p (polynomial set vanishes identically; "
            "Bunyakovsky condition (c) fails)");
    // log[(1 - 1/p)^{-k} (1 - w/p)]
    return -k * std::log1p(-1.0 / static_cast<double>(p)) +
           std::log1p(-static_cast<double>(w) / static_cast<double>(p));
}

std::string iso8601_now() {
    std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

// number of leading primes in `primes` that are <= bound
size_t index_upto(const std::vector<u64>& primes, u64 bound) {
    return static_cast<size_t>(
        std::upper_bound(primes.begin(), primes.end(), bound) - primes.begin());
}

constexpr size_t kChunkPrimes = 1u << 16;

}  // namespace

std::string joined_poly_keys(const std::vector<IntPolynomial>& fs) {
    std::string out;
    for (size_t i = 0; i < fs.size(); ++i) {
        if (i) out += ';';
        out += poly_key(fs[i]);
    }
    return out;
}

std::vector<std::pair<u64, double>> convergence_trace(
    const std::vector<IntPolynomial>& fs, const std::vector<u64>& checkpoints,
    const PrimeCache* cache) {
    if (fs.empty()) throw std::invalid_argument("convergence_trace: empty polynomial list");
    if (checkpoints.empty())
        throw std::invalid_argument("convergence_trace: no checkpoints");
    if (!std::is_sorted(checkpoints.begin(), checkpoints.end()))
        throw std::invalid_argument("convergence_trace: checkpoints must ascend");
    const u64 P = checkpoints.back();
    if (P < 2) throw std::invalid_argument("convergence_trace: bound must be >= 2");

    PrimeCache local;
    if (cache == nullptr || cache->bound < P) {
        local = sieve_upto(P);
        cache = &local;
    }
    const auto& primes = cache->primes;
    const size_t n = index_upto(primes, P);
    const int k = static_cast<int>(fs.size());

    // chunk boundaries: fixed 2^16-prime grid, plus a cut at each checkpoint.
    // The grid is a function of (P, checkpoints) alone, so partial sums are
    // combined in a thread-count-independent order.
    std::vector<size_t> cuts;
    for (size_t i = 0; i <= n; i += kChunkPrimes) cuts.push_back(i);
    for (u64 cp : checkpoints) cuts.push_back(index_upto(primes, cp));
    cuts.push_back(n);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    const size_t nchunks = cuts.size() - 1;
    std::vector<double> partial(nchunks, 0.0);
    std::exception_ptr failure = nullptr;

#pragma omp parallel for schedule(dynamic)
    for (size_t ci = 0; ci < nchunks; ++ci) {
        try {
            CompensatedSum cs;
            for (size_t i = cuts[ci]; i < cuts[ci + 1]; ++i)
                cs.add(log_factor(fs, k, primes[i]));
            partial[ci] = cs.total();
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    // serial ascending combine; checkpoint indices land exactly on cuts
    std::vector<std::pair<u64, double>> out;
    CompensatedSum total;
    size_t next_checkpoint = 0;
    auto flush_checkpoints = [&](size_t boundary_index) {
        while (next_checkpoint < checkpoints.size() &&
               index_upto(primes, checkpoints[next_checkpoint]) == boundary_index) {
            out.emplace_back(checkpoints[next_checkpoint], std::exp(total.total()));
            ++next_checkpoint;
        }
    };
    flush_checkpoints(0);
    for (size_t ci = 0; ci < nchunks; ++ci) {
        total.add(partial[ci]);
        flush_checkpoints(cuts[ci + 1]);
    }
    return out;
}

HLConstant compute_constant(const std::vector<IntPolynomial>& fs, u64 P,
                            const PrimeCache* cache) {
    if (P < 2) throw std::invalid_argument("compute_constant: P must be >= 2");
    const auto trace = convergence_trace(fs, {P}, cache);
    HLConstant c;
    c.value = trace.back().second;
    c.prime_bound = P;
    c.k = static_cast<int>(fs.size());
    for (const auto& f : fs) c.poly_keys.push_back(poly_key(f));
    c.computed_at = iso8601_now();
    return c;
}

// ---- ledger ----
// one record per line: poly list, P, k, value (12 significant digits),
// ISO-8601 timestamp; tab-separated

HLConstant ledger_get_or_compute(const std::vector<IntPolynomial>& fs, u64 P,
                                 const std::string& ledger_path,
                                 const PrimeCache* cache) {
    const std::string keys = joined_poly_keys(fs);
    {
        std::ifstream in(ledger_path);
        std::string line;
        size_t lineno = 0;
        while (in && std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            std::vector<std::string> fields;
            std::stringstream ss(line);
            std::string item;
            while (std::getline(ss, item, '\t')) fields.push_back(item);
            if (fields.size() != 5) {
                std::cerr << "ledger: skipping malformed line " << lineno << " of "
                          << ledger_path << "\n";
                continue;
            }
            char* endp = nullptr;
            const u64 rec_P = std::strtoull(fields[1].c_str(), &endp, 10);
            if (endp == nullptr || *endp != '\0') {
                std::cerr << "ledger: skipping malformed line " << lineno << " of "
                          << ledger_path << "\n";
                continue;
            }
            if (fields[0] != keys || rec_P != P) continue;
            errno = 0;
            const double value = std::strtod(fields[3].c_str(), &endp);
            const long rec_k = std::strtol(fields[2].c_str(), nullptr, 10);
            if (*endp != '\0' || errno != 0 || !(value > 0) ||
                rec_k != static_cast<long>(fs.size())) {
                std::cerr << "ledger: skipping malformed line " << lineno << " of "
                          << ledger_path << "\n";
                continue;
            }
            HLConstant c;
            c.value = value;
            c.prime_bound = P;
            c.k = static_cast<int>(fs.size());
            for (const auto& f : fs) c.poly_keys.push_back(poly_key(f));
            c.computed_at = fields[4];
            return c;
        }
    }
    HLConstant c = compute_constant(fs, P, cache);
    std::ofstream out(ledger_path, std::ios::app);
    if (!out) throw std::runtime_error("ledger: cannot open " + ledger_path);
    char valbuf[40];
    std::snprintf(valbuf, sizeof valbuf, "%.12g", c.value);
    out << keys << '\t' << P << '\t' << c.k << '\t' << valbuf << '\t'
        << c.computed_at << '\n';
    if (!out) throw std::runtime_error("ledger: write failed on " + ledger_path);
    return c;
}

}  // namespace bhl
