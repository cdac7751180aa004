#include "osched/numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace osched {

double lambert_w0(double x) {
    if (!std::isfinite(x) || x < 0.0) {
        throw std::domain_error("lambert_w0 is only defined for x >= 0 here");
    }
    if (x == 0.0) return 0.0;

    // Initial guess: ln(1+x) tracks W well on [0, e); the asymptotic
    // ln x - ln ln x takes over beyond.
    double w = (x < 2.718281828459045) ? std::log1p(x)
                                       : std::log(x) - std::log(std::log(x));
    // The residual tolerance is relative to x: downstream users divide by W,
    // so for small x an absolute tolerance would poison 1/W.
    const double tol = 1e-13 * x;
    double prev = -1.0;
    for (int iter = 0; iter < 50; ++iter) {
        const double ew = std::exp(w);
        const double resid = w * ew - x;
        if (std::fabs(resid) <= tol || w == prev) return w;
        prev = w;
        // Halley step for f(w) = w e^w - x.
        const double fprime = ew * (w + 1.0);
        const double denom = fprime - resid * (w + 2.0) / (2.0 * (w + 1.0));
        w -= resid / denom;
        if (w < 0.0) w = 0.0;
    }
    const double resid = std::fabs(w * std::exp(w) - x);
    if (resid <= 1e-10 * std::max(1.0, x)) return w;
    throw NumericError("lambert_w0 failed to converge", w);
}

double binomial_pmf(int n, int m, double p) {
    if (n < 0 || m < 0 || m > n) {
        throw std::invalid_argument("binomial_pmf requires 0 <= m <= n");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("binomial_pmf requires p in [0, 1]");
    }
    if (p == 0.0) return m == 0 ? 1.0 : 0.0;
    if (p == 1.0) return m == n ? 1.0 : 0.0;

    const long double lp = std::log(static_cast<long double>(p));
    const long double lq = std::log1p(static_cast<long double>(-p));
    const long double log_coeff = std::lgamma(n + 1.0L) - std::lgamma(m + 1.0L) -
                                  std::lgamma(n - m + 1.0L);
    const long double value = std::exp(log_coeff + m * lp + (n - m) * lq);
    return static_cast<double>(value);
}

}  // namespace osched
