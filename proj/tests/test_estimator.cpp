#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "bhl/estimator.hpp"
#include "bhl/polynomial.hpp"

using namespace bhl;

namespace {

EstimateRequest request(const IntPolynomial& f, double C, i64 x) {
    EstimateRequest req;
    req.fs = {f};
    req.constant.value = C;
    req.constant.k = 1;
    req.x = x;
    return req;
}

}  // namespace

TEST_CASE("quadrature on textbook integrals") {
    CHECK(detail::integrate([](double t) { return t * t; }, 0, 1, 1e-12) ==
          doctest::Approx(1.0 / 3).epsilon(1e-10));
    CHECK(detail::integrate([](double t) { return std::sin(t); }, 0, M_PI, 1e-12) ==
          doctest::Approx(2.0).epsilon(1e-10));
    CHECK(detail::integrate([](double t) { return std::exp(-t); }, 0, 30, 1e-12) ==
          doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("logarithmic integral") {
    CHECK(li_offset(2) == 0.0);
    // high-precision reference values for int_2^x dt/ln t
    CHECK(li_offset(1e4) == doctest::Approx(1245.09205211927).epsilon(1e-9));
    CHECK(li_offset(1e6) == doctest::Approx(78626.5039956821).epsilon(1e-9));
    CHECK_THROWS_AS(li_offset(1.5), std::invalid_argument);
}

TEST_CASE("estimate matches high-precision reference values") {
    // C fixed at its converged value so the quadrature alone is under test
    const auto f23 = family(2, 3).first;
    const double C = 4.721240276;
    CHECK(estimate_E(request(f23, C, 1000)) ==
          doctest::Approx(314.487953199).epsilon(1e-6));
    CHECK(estimate_E(request(f23, C, 10000)) ==
          doctest::Approx(2404.85957182).epsilon(1e-6));
    CHECK(estimate_E(request(f23, C, 100000)) ==
          doctest::Approx(19438.2635802).epsilon(1e-6));
    CHECK(estimate_E(request(f23, C, 1000000)) ==
          doctest::Approx(163182.746943).epsilon(1e-6));

    CHECK(estimate_E_classic(request(f23, C, 1000)) ==
          doctest::Approx(416.801700688).epsilon(1e-6));

    const auto f95 = family(9, 5).first;
    CHECK(estimate_E(request(f95, 5.41032, 1000000)) ==
          doctest::Approx(169288.490733).epsilon(1e-6));
    CHECK(estimate_E_classic(request(f95, 5.41032, 1000000)) ==
          doctest::Approx(212697.273549).epsilon(1e-6));
}

TEST_CASE("estimate is additive over the range") {
    const auto f = family(2, 3).first;
    auto req = request(f, 4.72124, 100000);
    const double whole = estimate_E(req);
    req.x = 5000;
    const double head = estimate_E(req);
    req.a = 5000;
    req.x = 100000;
    const double tail = estimate_E(req);
    CHECK(whole == doctest::Approx(head + tail).epsilon(1e-7));
}

TEST_CASE("estimate is monotone in x") {
    const auto f = family(5, 4).first;
    double prev = 0;
    for (i64 x : {100, 1000, 10000, 100000}) {
        const double e = estimate_E(request(f, 5.62398, x));
        CHECK(e > prev);
        prev = e;
    }
}

TEST_CASE("tightening the tolerance does not move the answer") {
    const auto f = family(2, 3).first;
    auto req = request(f, 4.72124, 100000);
    req.tolerance = 1e-6;
    const double coarse = estimate_E(req);
    req.tolerance = 1e-11;
    const double fine = estimate_E(req);
    CHECK(coarse == doctest::Approx(fine).epsilon(1e-5));
}

TEST_CASE("estimates for sibling polynomials stay within a unit") {
    // same constant, same n: only the lower-order terms differ
    const double C = 4.721240276;
    const double e23 = estimate_E(request(family(2, 3).first, C, 100000000));
    const double e26 = estimate_E(request(family(2, 6).first, C, 100000000));
    CHECK(std::abs(e23 - e26) < 1.0);
    CHECK(e23 > e26);  // larger constant term -> larger log -> smaller integrand
}

TEST_CASE("classic form converges toward the Li form from above") {
    const auto f = family(2, 3).first;
    const double C = 4.721240276;
    double prev_ratio = 10.0;
    for (i64 x : {10000LL, 1000000LL, 100000000LL, 10000000000LL}) {
        const auto req = request(f, C, x);
        const double ratio = estimate_E_classic(req) / estimate_E(req);
        CHECK(ratio > 1.0);
        CHECK(ratio < prev_ratio);
        prev_ratio = ratio;
    }
}

TEST_CASE("two-polynomial estimates against a direct Riemann sum") {
    const auto fac = factor_family(3, 5);
    EstimateRequest req;
    req.fs = {fac.g, fac.h};
    req.constant.value = 2.0;  // arbitrary positive constant
    req.constant.k = 2;
    req.x = 10000;
    const double e = estimate_E(req);

    double riemann = 0;
    const int steps = 400000;
    const double h = (10000.0 - 2.0) / steps;
    for (int i = 0; i < steps; ++i) {
        const double t = 2.0 + (i + 0.5) * h;
        riemann += h / (std::log(eval_double(fac.g, t)) *
                        std::log(eval_double(fac.h, t)));
    }
    CHECK(e == doctest::Approx(2.0 * riemann).epsilon(1e-5));

    // classic form: product of degrees is 1 for two linear factors
    const double ec = estimate_E_classic(req);
    double riemann_cl = 0;
    for (int i = 0; i < steps; ++i) {
        const double t = 2.0 + (i + 0.5) * h;
        riemann_cl += h / std::pow(std::log(t), 2);
    }
    CHECK(ec == doctest::Approx(2.0 * riemann_cl).epsilon(1e-5));
}

TEST_CASE("domain guards") {
    const auto f = family(2, 3).first;
    auto req = request(f, 4.72, 1000);

    req.x = 2;  // empty range
    CHECK_THROWS_AS(estimate_E(req), std::invalid_argument);
    req.x = 1000;
    req.a = 1;  // below the supported lower limit
    CHECK_THROWS_AS(estimate_E(req), std::invalid_argument);

    // f crosses 1 inside [a, x]: the log integrand blows up
    auto bad = request(IntPolynomial::from_coeffs({-10, 1}), 1.0, 100);
    CHECK_THROWS_AS(estimate_E(bad), std::domain_error);

    // constant polynomial has no admissible degree
    auto flat = request(IntPolynomial::from_coeffs({7}), 1.0, 100);
    CHECK_THROWS_AS(estimate_E(flat), std::invalid_argument);
}
