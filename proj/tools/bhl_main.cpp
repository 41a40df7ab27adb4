#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include "bhl/counter.hpp"
#include "bhl/designs.hpp"
#include "bhl/estimator.hpp"
#include "bhl/hlconstant.hpp"
#include "bhl/polynomial.hpp"
#include "bhl/primes.hpp"
#include "bhl/residues.hpp"
#include "bhl/verify.hpp"

using nlohmann::json;

namespace {

struct GlobalOpts {
    int threads = 0;
    std::string prime_cache;
    std::string ledger;
    double tolerance = 1e-9;
    std::string format = "table";
    std::string config;
};

// numeric arguments accept scientific shorthand: 1e8, 2.5e3
bhl::u64 parse_amount(const std::string& s) {
    errno = 0;
    char* end = nullptr;
    const long double v = strtold(s.c_str(), &end);
    if (errno != 0 || end == s.c_str() || *end != '\0' || v < 0 || v > 1.8e19L)
        throw CLI::ValidationError("amount", "cannot parse numeric amount: " + s);
    const long double rounded = roundl(v);
    if (fabsl(v - rounded) > 1e-6L)
        throw CLI::ValidationError("amount", "amount must be an integer: " + s);
    return static_cast<bhl::u64>(rounded);
}

std::vector<bhl::u64> parse_amount_list(const std::string& s) {
    std::vector<bhl::u64> out;
    size_t start = 0;
    while (start <= s.size()) {
        const size_t comma = s.find(',', start);
        const std::string item =
            s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!item.empty()) out.push_back(parse_amount(item));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (out.empty()) throw CLI::ValidationError("amount", "empty list");
    return out;
}

std::pair<bhl::i64, bhl::i64> parse_pair(const std::string& s) {
    const size_t comma = s.find(',');
    if (comma == std::string::npos)
        throw CLI::ValidationError("pair", "expected n,r: " + s);
    try {
        return {std::stoll(s.substr(0, comma)), std::stoll(s.substr(comma + 1))};
    } catch (...) {
        throw CLI::ValidationError("pair", "expected n,r: " + s);
    }
}

std::string poly_human(const bhl::IntPolynomial& f) {
    // "32t^2+20t+1" style, descending
    std::string out;
    for (int d = f.degree(); d >= 0; --d) {
        const bhl::i64 c = f.coeffs[d];
        if (c == 0 && f.degree() > 0) continue;
        if (!out.empty()) out += c < 0 ? "-" : "+";
        else if (c < 0) out += "-";
        const bhl::i64 a = c < 0 ? -c : c;
        if (a != 1 || d == 0) out += std::to_string(a);
        if (d >= 1) out += "t";
        if (d >= 2) out += "^" + std::to_string(d);
    }
    return out.empty() ? "0" : out;
}

// config file supplies the same keys as the global flags; flags win
void apply_config(GlobalOpts& g, const CLI::App& app) {
    if (g.config.empty()) return;
    std::ifstream in(g.config);
    if (!in) throw std::runtime_error("config: cannot open " + g.config);
    json j;
    in >> j;
    const auto given = [&](const std::string& flag) {
        return app.get_option(flag)->count() > 0;
    };
    if (j.contains("threads") && !given("--threads")) g.threads = j["threads"].get<int>();
    if (j.contains("prime_cache") && !given("--prime-cache"))
        g.prime_cache = j["prime_cache"].get<std::string>();
    if (j.contains("ledger") && !given("--ledger")) g.ledger = j["ledger"].get<std::string>();
    if (j.contains("tolerance") && !given("--tolerance"))
        g.tolerance = j["tolerance"].get<double>();
    if (j.contains("format") && !given("--format")) g.format = j["format"].get<std::string>();
}

// cache file reuse for the constant-heavy commands
bhl::PrimeCache obtain_cache(const GlobalOpts& g, bhl::u64 P) {
    if (!g.prime_cache.empty()) {
        std::ifstream probe(g.prime_cache);
        if (probe.good()) {
            probe.close();
            bhl::PrimeCache cache = bhl::cache_load(g.prime_cache);
            if (cache.bound >= P) return cache;
        }
        bhl::PrimeCache cache = bhl::sieve_upto(P);
        bhl::cache_save(cache, g.prime_cache);
        return cache;
    }
    return bhl::sieve_upto(P);
}

bhl::IntPolynomial resolve_poly(const std::string& pair_arg, const std::string& poly_arg) {
    if (!pair_arg.empty()) {
        const auto [n, r] = parse_pair(pair_arg);
        return bhl::family(n, r).first;
    }
    if (const auto f = bhl::parse_poly(poly_arg)) return *f;
    throw CLI::ValidationError("--poly", "cannot parse polynomial: " + poly_arg);
}

// ---- subcommand bodies ----

int cmd_enumerate(const GlobalOpts& g, bhl::i64 n_max, bool include_triangular) {
    const auto pairs = bhl::enumerate_pairs(n_max);
    json rows = json::array();
    for (const auto& p : pairs) {
        if (p.triangular_a && !include_triangular) continue;
        const auto f = bhl::family(p.n, p.r).first;
        rows.push_back({{"n", p.n},
                        {"r", p.r},
                        {"poly", bhl::poly_key(f)},
                        {"polynomial", poly_human(f)},
                        {"reducible", p.triangular_a.has_value()}});
    }
    if (g.format == "json") {
        std::cout << rows.dump(2) << "\n";
    } else if (g.format == "csv") {
        std::cout << "n,r,poly,polynomial,reducible\n";
        for (const auto& row : rows)
            std::cout << row["n"] << ',' << row["r"] << ',' << row["poly"].get<std::string>()
                      << ',' << row["polynomial"].get<std::string>() << ','
                      << (row["reducible"].get<bool>() ? "yes" : "no") << "\n";
    } else {
        std::printf("%4s %4s  %-22s %s\n", "n", "r", "polynomial", "reducible");
        for (const auto& row : rows)
            std::printf("%4lld %4lld  %-22s %s\n", row["n"].get<long long>(),
                        row["r"].get<long long>(), row["polynomial"].get<std::string>().c_str(),
                        row["reducible"].get<bool>() ? "yes" : "no");
    }
    return 0;
}

int cmd_constant(const GlobalOpts& g, const std::string& pair_arg,
                 const std::string& poly_arg, const std::string& P_arg) {
    const bhl::u64 P = parse_amount(P_arg);
    const bhl::IntPolynomial f = resolve_poly(pair_arg, poly_arg);
    const bhl::PrimeCache cache = obtain_cache(g, P);
    const bhl::HLConstant c =
        g.ledger.empty() ? bhl::compute_constant({f}, P, &cache)
                         : bhl::ledger_get_or_compute({f}, P, g.ledger, &cache);
    if (g.format == "json") {
        std::cout << json{{"poly", bhl::poly_key(f)},
                          {"P", c.prime_bound},
                          {"k", c.k},
                          {"value", c.value},
                          {"computed_at", c.computed_at}}
                         .dump(2)
                  << "\n";
    } else if (g.format == "csv") {
        std::printf("poly,P,k,value\n%s,%llu,%d,%.12g\n", bhl::poly_key(f).c_str(),
                    (unsigned long long)c.prime_bound, c.k, c.value);
    } else {
        std::printf("C(%s) over primes <= %llu: %.9f\n", poly_human(f).c_str(),
                    (unsigned long long)c.prime_bound, c.value);
    }
    return 0;
}

int cmd_table1(const GlobalOpts& g, const std::string& pair_arg, const std::string& x_arg,
               const std::string& P_arg) {
    const auto xs = parse_amount_list(x_arg);
    const bhl::u64 P = parse_amount(P_arg);
    const auto [n, r] = parse_pair(pair_arg);
    const bhl::IntPolynomial f = bhl::family(n, r).first;
    bhl::CounterOptions opt;
    opt.threads = g.threads;
    std::vector<bhl::EstimateReport> rows;
    for (const bhl::u64 x : xs) rows.push_back(bhl::compare(f, x, P, g.ledger, opt));
    if (g.format == "json") {
        json out = json::array();
        for (const auto& row : rows)
            out.push_back({{"poly", row.poly_key},
                           {"x", row.x},
                           {"Q", row.Q},
                           {"E", row.E},
                           {"relative_error", row.relative_error},
                           {"P", row.constant_bound}});
        std::cout << out.dump(2) << "\n";
    } else if (g.format == "csv") {
        std::cout << bhl::report_csv(rows);
    } else {
        std::cout << bhl::report_table(rows);
    }
    return 0;
}

int cmd_scan_powers(const GlobalOpts& g, const std::string& pair_arg,
                    const std::string& x_arg) {
    const auto [n, r] = parse_pair(pair_arg);
    const bhl::u64 x = parse_amount(x_arg);
    bhl::CounterOptions opt;
    opt.threads = g.threads;
    const auto hits = bhl::scan_prime_powers(bhl::family(n, r).first, x, opt);
    if (g.format == "json") {
        json out = json::array();
        for (const auto& h : hits)
            out.push_back(
                {{"t", h.t}, {"value", h.value}, {"base", h.base}, {"exponent", h.exponent}});
        std::cout << out.dump(2) << "\n";
    } else if (g.format == "csv") {
        std::cout << "t,value,base,exponent\n";
        for (const auto& h : hits)
            std::printf("%llu,%llu,%llu,%u\n", (unsigned long long)h.t,
                        (unsigned long long)h.value, (unsigned long long)h.base, h.exponent);
    } else {
        if (hits.empty()) {
            std::printf("no proper prime powers for t <= %llu\n", (unsigned long long)x);
        } else {
            std::printf("%10s %20s %12s %3s\n", "t", "value", "base", "e");
            for (const auto& h : hits)
                std::printf("%10llu %20llu %12llu %3u\n", (unsigned long long)h.t,
                            (unsigned long long)h.value, (unsigned long long)h.base,
                            h.exponent);
        }
    }
    return 0;
}

int cmd_design(const GlobalOpts& g, const std::string& pair_arg, bhl::i64 t) {
    const auto [n, r] = parse_pair(pair_arg);
    const auto dp = bhl::design_params(n, r, t);
    if (!dp) {
        if (g.format == "json")
            std::cout << json{{"prime_power", false}}.dump(2) << "\n";
        else
            std::printf("f_(%lld,%lld)(%lld) is not a prime power: no design\n", (long long)n,
                        (long long)r, (long long)t);
        return 0;
    }
    const json out{{"n", dp->n},     {"m", dp->m}, {"c", dp->c},
                   {"d", dp->d},     {"k_block", dp->k_block},
                   {"v", dp->v},     {"t", dp->t}};
    if (g.format == "json") {
        std::cout << out.dump(2) << "\n";
    } else {
        std::printf("2-design: v=%lld points, block size k=%lld (c=%lld, d=%lld, n=%lld, m=1)\n",
                    (long long)dp->v, (long long)dp->k_block, (long long)dp->c,
                    (long long)dp->d, (long long)dp->n);
    }
    return 0;
}

int cmd_realize(const GlobalOpts& g, bhl::u64 p, unsigned i) {
    const auto real = bhl::realize_even_power(p, i);
    const auto f = bhl::family(real.n, real.r).first;
    const json out{{"p", p},         {"i", i},         {"n", real.n},
                   {"r", real.r},    {"a", real.a},    {"f0", f.coeffs[0]}};
    if (g.format == "json")
        std::cout << out.dump(2) << "\n";
    else
        std::printf("n=%lld r=%lld a=%lld: f(0) = %lld = %llu^%u\n", (long long)real.n,
                    (long long)real.r, (long long)real.a, (long long)f.coeffs[0],
                    (unsigned long long)p, 2 * i);
    return 0;
}

int cmd_verify(const std::string& profile, bool full_table) {
    const auto prof =
        profile == "paper" ? bhl::verify::Profile::Paper : bhl::verify::Profile::Quick;
    const auto results = bhl::verify::run_all(prof, std::cout);
    bool all = true;
    for (const auto& r : results) all = all && r.pass;
    if (prof == bhl::verify::Profile::Paper && full_table)
        all = bhl::verify::run_paper_table(std::cout) && all;
    std::cout << (all ? "verify: all criteria passed\n" : "verify: FAILURES present\n");
    return all ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"block-design prime polynomial toolkit"};
    app.require_subcommand(1);
    GlobalOpts g;
    app.add_option("--threads", g.threads, "worker threads (0 = hardware default)");
    app.add_option("--prime-cache", g.prime_cache, "prime cache file to reuse");
    app.add_option("--ledger", g.ledger, "constant ledger file");
    app.add_option("--tolerance", g.tolerance, "relative quadrature tolerance");
    app.add_option("--format", g.format, "output format")
        ->check(CLI::IsMember({"table", "csv", "json"}));
    app.add_option("--config", g.config, "JSON config file (same keys as flags)");

    // enumerate
    auto* s_enum = app.add_subcommand("enumerate", "list admissible (n, r) pairs");
    s_enum->fallthrough();
    bhl::i64 n_max = 9;
    bool include_triangular = false;
    s_enum->add_option("--n-max", n_max, "largest n")->required();
    s_enum->add_flag("--include-triangular", include_triangular,
                     "also list reducible (triangular n) pairs");

    // constant
    auto* s_const = app.add_subcommand("constant", "truncated Hardy-Littlewood constant");
    s_const->fallthrough();
    std::string c_pair, c_poly, c_P = "1e7";
    s_const->add_option("--pair", c_pair, "family pair n,r");
    s_const->add_option("--poly", c_poly, "explicit polynomial, e.g. [41,1,1]");
    s_const->add_option("--P", c_P, "prime bound (scientific shorthand ok)");

    // table1
    auto* s_t1 = app.add_subcommand("table1", "Q(x) vs E(x) report");
    s_t1->fallthrough();
    std::string t1_pair, t1_x, t1_P = "1e7";
    s_t1->add_option("--pair", t1_pair, "family pair n,r")->required();
    s_t1->add_option("--x", t1_x, "comma-separated x values")->required();
    s_t1->add_option("--P", t1_P, "constant prime bound");

    // scan-powers
    auto* s_scan = app.add_subcommand("scan-powers", "proper prime power values");
    s_scan->fallthrough();
    std::string sc_pair, sc_x;
    s_scan->add_option("--pair", sc_pair, "family pair n,r")->required();
    s_scan->add_option("--x", sc_x, "scan bound for t")->required();

    // design
    auto* s_design = app.add_subcommand("design", "design parameters at one t");
    s_design->fallthrough();
    std::string d_pair;
    bhl::i64 d_t = 0;
    s_design->add_option("--pair", d_pair, "family pair n,r")->required();
    s_design->add_option("--t", d_t, "family index t >= 0")->required();

    // realize
    auto* s_real = app.add_subcommand("realize", "even prime power realization at t=0");
    s_real->fallthrough();
    bhl::u64 r_p = 0;
    unsigned r_i = 1;
    s_real->add_option("--p", r_p, "odd prime")->required();
    s_real->add_option("--i", r_i, "half-exponent i >= 1")->required();

    // verify
    auto* s_verify = app.add_subcommand("verify", "run the acceptance checks");
    s_verify->fallthrough();
    std::string v_profile = "quick";
    bool v_full = false;
    s_verify->add_option("--profile", v_profile, "quick|paper")
        ->check(CLI::IsMember({"quick", "paper"}));
    s_verify->add_flag("--full-table", v_full,
                       "paper profile: recount the 20-pair table at x=1e8");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        apply_config(g, app);
#ifdef _OPENMP
        if (g.threads > 0) omp_set_num_threads(g.threads);
#endif
        if (s_enum->parsed()) return cmd_enumerate(g, n_max, include_triangular);
        if (s_const->parsed()) {
            if (c_pair.empty() == c_poly.empty()) {
                std::cerr << "constant: exactly one of --pair/--poly required\n";
                return 1;
            }
            return cmd_constant(g, c_pair, c_poly, c_P);
        }
        if (s_t1->parsed()) return cmd_table1(g, t1_pair, t1_x, t1_P);
        if (s_scan->parsed()) return cmd_scan_powers(g, sc_pair, sc_x);
        if (s_design->parsed()) return cmd_design(g, d_pair, d_t);
        if (s_real->parsed()) return cmd_realize(g, r_p, r_i);
        if (s_verify->parsed()) return cmd_verify(v_profile, v_full);
        std::cerr << "no subcommand\n";
        return 1;
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
