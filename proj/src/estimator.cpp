#include "bhl/estimator.hpp"

#include <cmath>
#include <stdexcept>

namespace bhl {

namespace detail {

namespace {

struct Budget {
    size_t used = 0;
    static constexpr size_t cap = 1000000;
};

double recurse(const std::function<double(double)>& g, double a, double b,
               double fa, double fm, double fb, double whole, double eps,
               Budget& budget, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = g(lm), frm = g(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (++budget.used > Budget::cap)
        throw std::runtime_error("integrate: subdivision budget exhausted");
    // 15x: standard Richardson factor for Simpson halving
    if (depth >= 52 || std::abs(delta) <= 15.0 * eps)
        return left + right + delta / 15.0;
    return recurse(g, a, m, fa, flm, fm, left, 0.5 * eps, budget, depth + 1) +
           recurse(g, m, b, fm, frm, fb, right, 0.5 * eps, budget, depth + 1);
}

}  // namespace

double integrate(const std::function<double(double)>& g, double a, double b,
                 double rel_tol) {
    if (!(b > a)) return 0.0;
    if (!(rel_tol > 0)) throw std::invalid_argument("integrate: tolerance must be > 0");
    const double fa = g(a), fb = g(b);
    const double m = 0.5 * (a + b);
    const double fm = g(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double eps = std::max(std::abs(whole), 1e-300) * rel_tol;
    Budget budget;
    return recurse(g, a, b, fa, fm, fb, whole, eps, budget, 0);
}

}  // namespace detail

namespace {

// least value of f on [a, x]; exact for degree <= 2, sampled above that
double min_on_range(const IntPolynomial& f, double a, double x) {
    double lo = std::min(eval_double(f, a), eval_double(f, x));
    if (f.degree() == 2 && f.coeffs[2] > 0) {
        const double vertex = -static_cast<double>(f.coeffs[1]) /
                              (2.0 * static_cast<double>(f.coeffs[2]));
        if (vertex > a && vertex < x) lo = std::min(lo, eval_double(f, vertex));
    } else if (f.degree() > 2) {
        const int samples = 1024;
        for (int i = 1; i < samples; ++i) {
            const double t = a + (x - a) * i / samples;
            lo = std::min(lo, eval_double(f, t));
        }
    }
    return lo;
}

void validate_range(const EstimateRequest& req) {
    if (req.fs.empty()) throw std::invalid_argument("estimate: empty polynomial list");
    if (req.a < 2) throw std::invalid_argument("estimate: lower limit must be >= 2");
    if (req.x <= req.a) throw std::invalid_argument("estimate: x must exceed the lower limit");
    for (const auto& f : req.fs) {
        if (f.degree() < 1) throw std::invalid_argument("estimate: constant polynomial");
        if (min_on_range(f, static_cast<double>(req.a), static_cast<double>(req.x)) <= 1.0)
            throw std::domain_error(
                "estimate: f(t) <= 1 inside the integration range (singular integrand)");
    }
}

}  // namespace

double estimate_E(const EstimateRequest& req) {
    validate_range(req);
    const auto& fs = req.fs;
    auto integrand = [&fs](double t) {
        double denom = 1.0;
        for (const auto& f : fs) denom *= std::log(eval_double(f, t));
        return 1.0 / denom;
    };
    const double integral =
        detail::integrate(integrand, static_cast<double>(req.a),
                          static_cast<double>(req.x), req.tolerance);
    return req.constant.value * integral;
}

double estimate_E_classic(const EstimateRequest& req) {
    validate_range(req);
    double deg_product = 1.0;
    for (const auto& f : req.fs) deg_product *= f.degree();
    const int k = static_cast<int>(req.fs.size());
    auto integrand = [k](double t) { return std::pow(std::log(t), -k); };
    const double integral =
        detail::integrate(integrand, static_cast<double>(req.a),
                          static_cast<double>(req.x), req.tolerance);
    return req.constant.value / deg_product * integral;
}

double li_offset(double x) {
    if (!(x >= 2.0)) throw std::invalid_argument("li_offset: x must be >= 2");
    if (x == 2.0) return 0.0;
    return detail::integrate([](double t) { return 1.0 / std::log(t); }, 2.0, x, 1e-12);
}

}  // namespace bhl
