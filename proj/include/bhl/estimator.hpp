#pragma once

#include <functional>
#include <vector>

#include "bhl/hlconstant.hpp"
#include "bhl/polynomial.hpp"

namespace bhl {

struct EstimateRequest {
    std::vector<IntPolynomial> fs;
    HLConstant constant;
    i64 a = 2;               // integration lower limit
    i64 x = 0;
    double tolerance = 1e-9; // relative quadrature tolerance
};

// E(x) = C * integral_a^x dt / prod ln f_i(t)   (Li form)
// Throws std::domain_error if some f_i(t) <= 1 anywhere on [a, x].
double estimate_E(const EstimateRequest& req);

// classic form: C / prod deg(f_i) * integral_a^x dt / (ln t)^k
double estimate_E_classic(const EstimateRequest& req);

// Li(x) = integral_2^x dt / ln t
double li_offset(double x);

namespace detail {
// adaptive Simpson; rel_tol relative to the coarse whole-interval estimate,
// throws std::runtime_error when the subdivision budget (10^6 intervals) is
// exhausted before convergence
double integrate(const std::function<double(double)>& g, double a, double b,
                 double rel_tol);
}  // namespace detail

}  // namespace bhl
