#include "bhl/counter.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <gmpxx.h>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "bhl/estimator.hpp"
#include "bhl/hlconstant.hpp"
#include "bhl/residues.hpp"

namespace bhl {

namespace {

int effective_threads(int requested) {
#ifdef _OPENMP
    return requested > 0 ? requested : omp_get_max_threads();
#else
    (void)requested;
    return 1;
#endif
}

bool prime_i64(i64 v) { return v >= 2 && is_prime(static_cast<u64>(v)); }

// rare fallback when f(t) leaves 64 bits
bool prime_big_at(const IntPolynomial& f, u64 t) {
    const mpz_class v = eval_big(f, mpz_class(static_cast<unsigned long>(t)));
    if (v < 2) return false;
    return mpz_probab_prime_p(v.get_mpz_t(), 40) > 0;
}

// ---- presieve ----
// Roots of f modulo each prime p <= 257. For t beyond the direct-test region
// (where f(t) > 257^2), t hitting a root class means p | f(t) < f(t), i.e.
// composite -- no primality test needed. Survivor density is a small fraction,
// which is where the bulk of the speedup over the serial reference comes from.

constexpr u64 kPresieveBound = 257;
constexpr u64 kPresieveSquare = kPresieveBound * kPresieveBound;

struct Presieve {
    bool active = false;
    u64 direct_below = 0;  // t <= direct_below: test directly
    std::vector<u64> primes;
    std::vector<std::vector<u64>> roots;  // residue classes per prime
};

Presieve build_presieve(const IntPolynomial& f, u64 x) {
    Presieve ps;
    if (f.degree() < 1 || f.degree() > 2 || f.leading() <= 0) return ps;  // direct only

    // first T past the vertex with f(T) > 257^2; everything at or below T is
    // tested directly, everything above obeys the composite-skip rule
    double vertex = 0.0;
    if (f.degree() == 2)
        vertex = -static_cast<double>(f.coeffs[1]) / (2.0 * static_cast<double>(f.coeffs[2]));
    u64 lo = vertex > 1.0 ? static_cast<u64>(vertex) + 1 : 1;
    auto below_cut = [&](u64 t) {
        const auto v = eval_checked(f, static_cast<i64>(t));
        return v && *v <= static_cast<i64>(kPresieveSquare);
    };
    u64 hi = lo;
    while (hi < x && below_cut(hi)) hi = std::min(x, hi * 2 + 1);
    while (lo < hi) {  // first t in [lo, hi] with f(t) > cut
        const u64 mid = lo + (hi - lo) / 2;
        if (below_cut(mid)) lo = mid + 1; else hi = mid;
    }
    ps.direct_below = below_cut(lo) ? lo : (lo > 0 ? lo - 1 : 0);
    if (ps.direct_below >= x) return ps;  // nothing left to presieve

    for (u64 p = 2; p <= kPresieveBound; ++p) {
        if (!is_prime(p)) continue;
        std::vector<u64> rs = poly_roots_mod_p(f, p);
        if (!rs.empty()) {
            ps.primes.push_back(p);
            ps.roots.push_back(std::move(rs));
        }
    }
    ps.active = true;
    return ps;
}

// mark[i] set <=> some presieve prime divides f(lo + i)
void mark_chunk(const Presieve& ps, u64 lo, u64 len, std::vector<unsigned char>& mark) {
    mark.assign(len, 0);
    for (size_t pi = 0; pi < ps.primes.size(); ++pi) {
        const u64 p = ps.primes[pi];
        for (u64 r : ps.roots[pi]) {
            // first index >= 0 with (lo + idx) = r (mod p)
            u64 idx = (r + p - lo % p) % p;
            for (; idx < len; idx += p) mark[idx] = 1;
        }
    }
}

// ---- journal ----
// line format: key \t t_lo \t t_hi \t count \t hits_csv (csv of t values,
// blank when none). Counts of completed chunks are trusted on resume.

struct Journal {
    std::string path;
    std::string key;
    std::map<std::pair<u64, u64>, std::pair<u64, std::string>> done;

    bool enabled() const { return !path.empty(); }

    void load() {
        if (!enabled()) return;
        std::ifstream in(path);
        std::string line;
        while (in && std::getline(in, line)) {
            if (line.empty()) continue;
            std::vector<std::string> f;
            size_t start = 0;
            while (true) {
                const size_t tab = line.find('\t', start);
                f.push_back(line.substr(start, tab == std::string::npos
                                                   ? std::string::npos
                                                   : tab - start));
                if (tab == std::string::npos) break;
                start = tab + 1;
            }
            if (f.size() < 4 || f.size() > 5 || f[0] != key) continue;
            try {
                const u64 lo = std::stoull(f[1]), hi = std::stoull(f[2]);
                const u64 count = std::stoull(f[3]);
                done[{lo, hi}] = {count, f.size() == 5 ? f[4] : std::string()};
            } catch (...) {
                std::cerr << "journal: skipping malformed line in " << path << "\n";
            }
        }
    }

    void append(u64 lo, u64 hi, u64 count, const std::string& hits_csv) {
        if (!enabled()) return;
        std::ofstream out(path, std::ios::app);
        out << key << '\t' << lo << '\t' << hi << '\t' << count << '\t'
            << hits_csv << '\n';
    }
};

struct ChunkGrid {
    u64 x;
    u64 chunk;
    u64 count() const { return x == 0 ? 0 : (x - 1) / chunk + 1; }
    std::pair<u64, u64> bounds(u64 i) const {  // inclusive [lo, hi]
        return {1 + i * chunk, std::min(x, (i + 1) * chunk)};
    }
};

u64 count_chunk(const IntPolynomial& f, const Presieve& ps, u64 lo, u64 hi,
                std::vector<unsigned char>& mark) {
    u64 count = 0;
    if (!ps.active || hi <= ps.direct_below) {
        for (u64 t = lo; t <= hi; ++t) {
            if (const auto v = eval_checked(f, static_cast<i64>(t)))
                count += prime_i64(*v);
            else
                count += prime_big_at(f, t);
        }
        return count;
    }
    if (lo <= ps.direct_below) {
        for (u64 t = lo; t <= ps.direct_below; ++t) {
            if (const auto v = eval_checked(f, static_cast<i64>(t)))
                count += prime_i64(*v);
            else
                count += prime_big_at(f, t);
        }
        lo = ps.direct_below + 1;
    }
    const u64 len = hi - lo + 1;
    mark_chunk(ps, lo, len, mark);
    for (u64 i = 0; i < len; ++i) {
        if (mark[i]) continue;  // divisible by a small prime, f(t) > that prime
        if (const auto v = eval_checked(f, static_cast<i64>(lo + i)))
            count += prime_i64(*v);
        else
            count += prime_big_at(f, lo + i);
    }
    return count;
}

std::vector<PrimePowerHit> scan_chunk(const IntPolynomial& f, const Presieve& ps,
                                      u64 lo, u64 hi,
                                      std::vector<unsigned char>& mark) {
    std::vector<PrimePowerHit> hits;
    auto consider_full = [&](u64 t, u64 v) {
        if (v < 4) return;
        if (const auto d = perfect_power_decompose(v); d && is_prime(d->base))
            hits.push_back({t, v, d->base, d->exponent});
    };
    if (!ps.active) {
        for (u64 t = lo; t <= hi; ++t) {
            const auto v = eval_checked(f, static_cast<i64>(t));
            if (v && *v >= 4) consider_full(t, static_cast<u64>(*v));
            // 64-bit overflow can't occur for the supported families; a value
            // that large is out of scan scope anyway
        }
        return hits;
    }
    const u64 len = hi - lo + 1;
    mark_chunk(ps, lo, len, mark);
    for (u64 i = 0; i < len; ++i) {
        const u64 t = lo + i;
        const auto ev = eval_checked(f, static_cast<i64>(t));
        if (!ev || *ev < 4) continue;
        const u64 v = static_cast<u64>(*ev);
        if (!mark[i]) {
            consider_full(t, v);
            continue;
        }
        // some presieve prime divides v: v is a prime power only if it is a
        // pure power of that prime
        for (size_t pi = 0; pi < ps.primes.size(); ++pi) {
            const u64 p = ps.primes[pi];
            if (v % p != 0) continue;
            u64 rest = v;
            unsigned e = 0;
            while (rest % p == 0) { rest /= p; ++e; }
            if (rest == 1 && e >= 2) hits.push_back({t, v, p, e});
            break;
        }
    }
    return hits;
}

std::string hits_to_csv(const std::vector<PrimePowerHit>& hits) {
    std::string out;
    for (size_t i = 0; i < hits.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(hits[i].t);
    }
    return out;
}

std::vector<PrimePowerHit> hits_from_csv(const IntPolynomial& f, const std::string& csv) {
    std::vector<PrimePowerHit> hits;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const u64 t = std::stoull(item);
        const i64 v = eval(f, static_cast<i64>(t));
        const auto d = perfect_power_decompose(static_cast<u64>(v));
        if (!d || !is_prime(d->base))
            throw std::runtime_error("journal: recorded hit fails re-verification");
        hits.push_back({t, static_cast<u64>(v), d->base, d->exponent});
    }
    return hits;
}

}  // namespace

u64 count_Q(const IntPolynomial& f, u64 x, const CounterOptions& opt) {
    if (f.degree() < 1) throw std::invalid_argument("count_Q: constant polynomial");
    if (x == 0) return 0;
    const Presieve ps = build_presieve(f, x);
    const ChunkGrid grid{x, std::max<u64>(opt.chunk, 64)};
    Journal journal{opt.journal_path, "Q:" + poly_key(f), {}};
    journal.load();

    const u64 nchunks = grid.count();
    u64 total = 0;
    const int nthreads = effective_threads(opt.threads);
    std::exception_ptr failure;

#pragma omp parallel num_threads(nthreads) reduction(+ : total)
    {
        std::vector<unsigned char> mark;
#pragma omp for schedule(dynamic)
        for (u64 ci = 0; ci < nchunks; ++ci) {
            try {
                const auto [lo, hi] = grid.bounds(ci);
                u64 c = 0;
                bool from_journal = false;
                if (journal.enabled()) {
#pragma omp critical(bhl_journal)
                    {
                        const auto it = journal.done.find({lo, hi});
                        if (it != journal.done.end()) {
                            c = it->second.first;
                            from_journal = true;
                        }
                    }
                }
                if (!from_journal) {
                    c = count_chunk(f, ps, lo, hi, mark);
#pragma omp critical(bhl_journal)
                    journal.append(lo, hi, c, "");
                }
                total += c;
            } catch (...) {
#pragma omp critical(bhl_failure)
                if (!failure) failure = std::current_exception();
            }
        }
    }
    if (failure) std::rethrow_exception(failure);
    return total;
}

u64 count_Q_tuple(const std::vector<IntPolynomial>& fs, u64 x, const CounterOptions& opt) {
    if (fs.empty()) throw std::invalid_argument("count_Q_tuple: empty polynomial list");
    for (const auto& f : fs)
        if (f.degree() < 1) throw std::invalid_argument("count_Q_tuple: constant polynomial");
    if (fs.size() == 1) return count_Q(fs[0], x, opt);
    if (x == 0) return 0;
    const ChunkGrid grid{x, std::max<u64>(opt.chunk, 64)};
    const u64 nchunks = grid.count();
    u64 total = 0;
    const int nthreads = effective_threads(opt.threads);

#pragma omp parallel for schedule(dynamic) num_threads(nthreads) reduction(+ : total)
    for (u64 ci = 0; ci < nchunks; ++ci) {
        const auto [lo, hi] = grid.bounds(ci);
        u64 c = 0;
        for (u64 t = lo; t <= hi; ++t) {
            bool all = true;
            for (const auto& f : fs) {
                const auto v = eval_checked(f, static_cast<i64>(t));
                if (!(v ? prime_i64(*v) : prime_big_at(f, t))) {
                    all = false;
                    break;
                }
            }
            c += all;
        }
        total += c;
    }
    return total;
}

std::vector<PrimePowerHit> scan_prime_powers(const IntPolynomial& f, u64 x,
                                             const CounterOptions& opt) {
    if (f.degree() < 1)
        throw std::invalid_argument("scan_prime_powers: constant polynomial");
    std::vector<PrimePowerHit> all;
    if (x == 0) return all;
    const Presieve ps = build_presieve(f, x);
    const ChunkGrid grid{x, std::max<u64>(opt.chunk, 64)};
    Journal journal{opt.journal_path, "PP:" + poly_key(f), {}};
    journal.load();

    const u64 nchunks = grid.count();
    const int nthreads = effective_threads(opt.threads);
    std::exception_ptr failure;

#pragma omp parallel num_threads(nthreads)
    {
        std::vector<unsigned char> mark;
        std::vector<PrimePowerHit> mine;
#pragma omp for schedule(dynamic) nowait
        for (u64 ci = 0; ci < nchunks; ++ci) {
            try {
                const auto [lo, hi] = grid.bounds(ci);
                bool from_journal = false;
                std::string recorded;
                if (journal.enabled()) {
#pragma omp critical(bhl_journal)
                    {
                        const auto it = journal.done.find({lo, hi});
                        if (it != journal.done.end()) {
                            recorded = it->second.second;
                            from_journal = true;
                        }
                    }
                }
                std::vector<PrimePowerHit> hits;
                if (from_journal) {
                    hits = hits_from_csv(f, recorded);
                } else {
                    hits = scan_chunk(f, ps, lo, hi, mark);
#pragma omp critical(bhl_journal)
                    journal.append(lo, hi, hits.size(), hits_to_csv(hits));
                }
                mine.insert(mine.end(), hits.begin(), hits.end());
            } catch (...) {
#pragma omp critical(bhl_failure)
                if (!failure) failure = std::current_exception();
            }
        }
#pragma omp critical(bhl_merge)
        all.insert(all.end(), mine.begin(), mine.end());
    }
    if (failure) std::rethrow_exception(failure);
    std::sort(all.begin(), all.end(),
              [](const PrimePowerHit& a, const PrimePowerHit& b) { return a.t < b.t; });
    return all;
}

EstimateReport compare(const IntPolynomial& f, u64 x, u64 P,
                       const std::string& ledger_path, const CounterOptions& opt) {
    const std::vector<IntPolynomial> fs{f};
    const HLConstant c = ledger_path.empty() ? compute_constant(fs, P)
                                             : ledger_get_or_compute(fs, P, ledger_path);
    EstimateRequest req;
    req.fs = fs;
    req.constant = c;
    req.a = 2;
    req.x = static_cast<i64>(x);
    EstimateReport rep;
    rep.poly_key = poly_key(f);
    rep.x = x;
    rep.Q = count_Q(f, x, opt);
    rep.E = estimate_E(req);
    rep.relative_error = (rep.E - static_cast<double>(rep.Q)) / static_cast<double>(rep.Q);
    rep.constant_bound = P;
    return rep;
}

std::vector<std::tuple<i64, i64, ValueClass>> first_hits(const IntPolynomial& f,
                                                         int limit) {
    if (limit < 1) throw std::invalid_argument("first_hits: limit must be >= 1");
    std::vector<std::tuple<i64, i64, ValueClass>> out;
    out.reserve(limit);
    for (i64 t = 0; t < limit; ++t) {
        const i64 v = eval(f, t);
        out.emplace_back(t, v, classify_value(v));
    }
    return out;
}

// ---- report emitters ----

std::string report_csv(const std::vector<EstimateReport>& rows) {
    std::ostringstream os;
    os << "poly,x,Q,E,relative_error,P\n";
    char buf[64];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.10g", r.E);
        os << r.poly_key << ',' << r.x << ',' << r.Q << ',' << buf << ',';
        std::snprintf(buf, sizeof buf, "%.6g", r.relative_error);
        os << buf << ',' << r.constant_bound << '\n';
    }
    return os.str();
}

std::string report_table(const std::vector<EstimateReport>& rows) {
    std::ostringstream os;
    char line[160];
    std::snprintf(line, sizeof line, "%-14s %12s %12s %16s %10s\n", "poly", "x", "Q(x)",
                  "E(x)", "rel.err");
    os << line;
    for (const auto& r : rows) {
        std::snprintf(line, sizeof line, "%-14s %12llu %12llu %16.2f %9.2f%%\n",
                      r.poly_key.c_str(), (unsigned long long)r.x,
                      (unsigned long long)r.Q, r.E, 100.0 * r.relative_error);
        os << line;
    }
    return os.str();
}

}  // namespace bhl
