#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include "bhl/counter.hpp"
#include "bhl/polynomial.hpp"
#include "bhl/primes.hpp"
#include "bhl/reference.hpp"

using namespace bhl;

namespace {

std::string temp_file(const char* stem) {
    namespace fs = std::filesystem;
    return (fs::temp_directory_path() / stem).string();
}

std::vector<u64> hit_ts(const std::vector<PrimePowerHit>& hits) {
    std::vector<u64> ts;
    for (const auto& h : hits) ts.push_back(h.t);
    return ts;
}

}  // namespace

TEST_CASE("prime value counts for 32t^2+20t+1") {
    const auto f = family(2, 3).first;
    CHECK(count_Q(f, 1000) == 325);
    CHECK(count_Q(f, 10000) == 2420);
    CHECK(count_Q(f, 100000) == 19393);
    CHECK(count_Q(f, 1000000) == 162875);
}

TEST_CASE("parallel counter equals the serial reference") {
    const struct {
        IntPolynomial f;
        u64 x;
    } cases[] = {
        {family(5, 4).first, 20000},
        {family(9, 5).first, 10000},
        {IntPolynomial::from_coeffs({41, 1, 1}), 5000},
        {family(2, 6).first, 30000},
        {IntPolynomial::from_coeffs({1, 2}), 10000},  // linear: 2t+1
    };
    for (const auto& c : cases) CHECK(count_Q(c.f, c.x) == ref::count_Q_serial(c.f, c.x));
}

TEST_CASE("linear polynomial cross-checked against pi") {
    // values 2t+1, 1 <= t <= 10^4, hit every odd prime up to 20001
    const auto f = IntPolynomial::from_coeffs({1, 2});
    CHECK(count_Q(f, 10000) == count_pi_and_Pi(20001).first - 1);
}

TEST_CASE("thread and chunk parameters do not change the count") {
    const auto f = family(2, 3).first;
    CounterOptions opt;
    opt.threads = 1;
    const u64 base = count_Q(f, 100000, opt);
    opt.threads = 4;
    CHECK(count_Q(f, 100000, opt) == base);
    opt.chunk = 1000;
    CHECK(count_Q(f, 100000, opt) == base);
    opt.chunk = 1 << 18;
    CHECK(count_Q(f, 100000, opt) == base);
}

TEST_CASE("tuple counter: simultaneous primality") {
    const auto fac = factor_family(3, 5);
    const std::vector<IntPolynomial> pair = {fac.g, fac.h};
    u64 brute = 0;
    for (i64 t = 1; t <= 2000; ++t)
        if (is_prime(u64(eval(fac.g, t))) && is_prime(u64(eval(fac.h, t)))) ++brute;
    CHECK(count_Q_tuple(pair, 2000) == brute);
    CHECK(count_Q_tuple({family(2, 3).first}, 5000) == count_Q(family(2, 3).first, 5000));
}

TEST_CASE("first values, classified from t = 0") {
    const auto rows = first_hits(family(2, 3).first, 8);
    REQUIRE(rows.size() == 8);

    CHECK(std::get<1>(rows[0]) == 1);
    CHECK(std::get<2>(rows[0]).tag == ValueTag::One);

    CHECK(std::get<1>(rows[1]) == 53);
    CHECK(std::get<2>(rows[1]).tag == ValueTag::Prime);

    CHECK(std::get<1>(rows[2]) == 169);
    CHECK(std::get<2>(rows[2]).tag == ValueTag::ProperPrimePower);
    CHECK(std::get<2>(rows[2]).base == 13);
    CHECK(std::get<2>(rows[2]).exponent == 2);

    CHECK(std::get<2>(rows[3]).tag == ValueTag::Prime);   // 349
    CHECK(std::get<2>(rows[4]).tag == ValueTag::Prime);   // 593
    CHECK(std::get<2>(rows[5]).tag == ValueTag::Composite);  // 901 = 17*53
    CHECK(std::get<2>(rows[6]).tag == ValueTag::Composite);  // 1273 = 19*67
    CHECK(std::get<2>(rows[7]).tag == ValueTag::Prime);   // 1709

    const auto outside = first_hits(IntPolynomial::from_coeffs({-1, 2, 8}), 3);
    CHECK(std::get<2>(outside[0]).tag == ValueTag::NonPositive);
    CHECK(std::get<2>(outside[1]).tag == ValueTag::ProperPrimePower);  // 9
    CHECK(std::get<2>(outside[2]).tag == ValueTag::Composite);         // 35

    const auto f26 = first_hits(family(2, 6).first, 3);
    for (const auto& row : f26) CHECK(std::get<2>(row).tag == ValueTag::Prime);
}

TEST_CASE("prime power scan: known hit lists") {
    const auto scan_ts = [](i64 n, i64 r, u64 x) {
        return hit_ts(scan_prime_powers(family(n, r).first, x));
    };
    CHECK(scan_ts(2, 3, 10000) == std::vector<u64>{2, 8, 78, 282, 9590});
    CHECK(scan_ts(5, 4, 10000) == std::vector<u64>{4, 2044, 4816});
    CHECK(scan_ts(9, 5, 10000) == std::vector<u64>{3220});
    CHECK(scan_ts(9, 17, 10000) == std::vector<u64>{1, 49});
    CHECK(scan_ts(9, 29, 10000) == std::vector<u64>{2});

    // each reported hit decomposes exactly
    for (const auto& h : scan_prime_powers(family(2, 3).first, 10000)) {
        CHECK(h.exponent >= 2);
        CHECK(is_prime(h.base));
        u64 v = 1;
        for (unsigned e = 0; e < h.exponent; ++e) v *= h.base;
        CHECK(v == h.value);
        CHECK(i64(h.value) == eval(family(2, 3).first, i64(h.t)));
    }

    // the t = 0 square of a reducible pair is outside the scanned range
    CHECK(scan_prime_powers(family(3, 8).first, 1000).empty());
}

TEST_CASE("prime power scan equals the serial reference") {
    for (const auto& [n, r, x] : {std::tuple<i64, i64, u64>{2, 3, 20000},
                                  {9, 17, 10000},
                                  {5, 4, 5000}}) {
        const auto par = scan_prime_powers(family(n, r).first, x);
        const auto ser = ref::scan_prime_powers_serial(family(n, r).first, x);
        REQUIRE(par.size() == ser.size());
        for (size_t i = 0; i < par.size(); ++i) {
            CHECK(par[i].t == ser[i].t);
            CHECK(par[i].value == ser[i].value);
            CHECK(par[i].base == ser[i].base);
            CHECK(par[i].exponent == ser[i].exponent);
        }
    }
}

TEST_CASE("count journal: checkpoint and resume") {
    const auto path = temp_file("bhl_test_count_journal.tsv");
    std::remove(path.c_str());
    const auto f = family(2, 3).first;
    CounterOptions opt;
    opt.chunk = 1024;
    opt.journal_path = path;

    const u64 cold = count_Q(f, 20000, opt);
    CHECK(cold == ref::count_Q_serial(f, 20000));

    std::ifstream in(path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    in.close();
    CHECK(lines.size() >= 20);  // ceil(20000/1024) chunks

    // warm rerun trusts the journal: same answer, no new lines
    CHECK(count_Q(f, 20000, opt) == cold);
    std::ifstream in2(path);
    size_t warm_lines = 0;
    while (std::getline(in2, line)) ++warm_lines;
    in2.close();
    CHECK(warm_lines == lines.size());

    // doctor one completed chunk; the resumed total must reflect it, which
    // proves the journal is what gets read back
    std::ofstream out(path, std::ios::trunc);
    bool doctored = false;
    for (const auto& l : lines) {
        if (!doctored) {
            // bump the count field (second-to-last) of the first line
            const auto a = l.rfind('\t');
            const auto b = l.rfind('\t', a - 1);
            const u64 c = std::stoull(l.substr(b + 1, a - b - 1));
            out << l.substr(0, b + 1) << (c + 1000000) << l.substr(a) << "\n";
            doctored = true;
        } else {
            out << l << "\n";
        }
    }
    out.close();
    REQUIRE(doctored);
    CHECK(count_Q(f, 20000, opt) == cold + 1000000);
    std::remove(path.c_str());
}

TEST_CASE("scan journal: hits are re-verified on resume") {
    const auto path = temp_file("bhl_test_scan_journal.tsv");
    std::remove(path.c_str());
    const auto f = family(2, 3).first;
    CounterOptions opt;
    opt.chunk = 1024;
    opt.journal_path = path;

    const auto cold = scan_prime_powers(f, 10000, opt);
    CHECK(hit_ts(cold) == std::vector<u64>{2, 8, 78, 282, 9590});
    const auto warm = scan_prime_powers(f, 10000, opt);
    CHECK(hit_ts(warm) == hit_ts(cold));

    // inject a bogus hit at t = 5 (f(5) = 901 = 17*53, not a prime power);
    // resume re-verifies stored hits and refuses the corrupt journal
    std::ifstream in(path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    in.close();
    std::ofstream out(path, std::ios::trunc);
    bool injected = false;
    for (auto l : lines) {
        if (!injected) {
            if (l.back() == '\t')
                l += "5";
            else
                l += ",5";
            injected = true;
        }
        out << l << "\n";
    }
    out.close();
    REQUIRE(injected);
    CHECK_THROWS_AS(scan_prime_powers(f, 10000, opt), std::runtime_error);
    std::remove(path.c_str());
}

TEST_CASE("combined report") {
    const auto path = temp_file("bhl_test_compare_ledger.tsv");
    std::remove(path.c_str());
    const auto f = family(2, 3).first;
    const auto rep = compare(f, 10000, 10000, path);
    CHECK(rep.poly_key == "[1,20,32]");
    CHECK(rep.x == 10000);
    CHECK(rep.Q == 2420);
    CHECK(rep.E > 2300);
    CHECK(rep.E < 2500);
    CHECK(rep.relative_error ==
          doctest::Approx((rep.E - rep.Q) / rep.Q).epsilon(1e-12));
    CHECK(rep.constant_bound == 10000);

    // warm ledger second run reproduces the estimate
    const auto rep2 = compare(f, 10000, 10000, path);
    CHECK(rep2.E == doctest::Approx(rep.E).epsilon(1e-10));

    const std::vector<EstimateReport> rows = {rep};
    const auto csv = report_csv(rows);
    CHECK(csv.find("poly,x,Q,E,relative_error,P") != std::string::npos);
    CHECK(csv.find("[1,20,32],10000,2420,") != std::string::npos);
    const auto table = report_table(rows);
    CHECK(table.find("[1,20,32]") != std::string::npos);
    CHECK(table.find("2420") != std::string::npos);
    std::remove(path.c_str());
}
