// Compares the OpenMP kernels against the serial reference implementations.
#include <chrono>
#include <cstdio>
#include <string>

#include "CLI11.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include "bhl/counter.hpp"
#include "bhl/hlconstant.hpp"
#include "bhl/polynomial.hpp"
#include "bhl/reference.hpp"

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <typename F>
double best_of(int repeat, F&& body) {
    double best = 1e300;
    for (int i = 0; i < repeat; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        body();
        const double dt = seconds_since(t0);
        if (dt < best) best = dt;
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"benchmark: parallel kernels vs serial reference"};
    unsigned long long x = 1000000ULL;
    unsigned long long P = 1000000ULL;
    int threads = 0;
    int repeat = 3;
    long long n = 2, r = 3;
    app.add_option("--x", x, "counting bound");
    app.add_option("--P", P, "constant prime bound");
    app.add_option("--threads", threads, "thread count for the parallel side");
    app.add_option("--repeat", repeat, "repetitions, best time wins");
    app.add_option("--n", n, "family n");
    app.add_option("--r", r, "family r");
    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
    std::printf("OpenMP max threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both sides run serial\n");
#endif

    const bhl::IntPolynomial f = bhl::family(n, r).first;
    bhl::CounterOptions opt;
    opt.threads = threads;

    bhl::u64 q_par = 0, q_ser = 0;
    const double t_count_par = best_of(repeat, [&] { q_par = bhl::count_Q(f, x, opt); });
    const double t_count_ser = best_of(repeat, [&] { q_ser = bhl::ref::count_Q_serial(f, x); });
    std::printf("count_Q      x=%llu: parallel %.3fs, serial %.3fs, speedup %.2fx (Q=%llu%s)\n",
                x, t_count_par, t_count_ser, t_count_ser / t_count_par,
                (unsigned long long)q_par, q_par == q_ser ? "" : " MISMATCH");

    const bhl::PrimeCache cache = bhl::sieve_upto(P);
    double c_par = 0, c_ser = 0;
    const double t_const_par =
        best_of(repeat, [&] { c_par = bhl::compute_constant({f}, P, &cache).value; });
    const double t_const_ser =
        best_of(repeat, [&] { c_ser = bhl::ref::constant_serial({f}, P); });
    std::printf("constant     P=%llu: parallel %.3fs, serial %.3fs, speedup %.2fx (C=%.9f%s)\n",
                P, t_const_par, t_const_ser, t_const_ser / t_const_par, c_par,
                std::abs(c_par - c_ser) < 1e-12 ? "" : " MISMATCH");

    std::vector<bhl::PrimePowerHit> h_par, h_ser;
    const double t_scan_par =
        best_of(repeat, [&] { h_par = bhl::scan_prime_powers(f, x, opt); });
    const double t_scan_ser =
        best_of(repeat, [&] { h_ser = bhl::ref::scan_prime_powers_serial(f, x); });
    std::printf("scan_powers  x=%llu: parallel %.3fs, serial %.3fs, speedup %.2fx (%zu hits%s)\n",
                x, t_scan_par, t_scan_ser, t_scan_ser / t_scan_par, h_par.size(),
                h_par.size() == h_ser.size() ? "" : " MISMATCH");
    return 0;
}
