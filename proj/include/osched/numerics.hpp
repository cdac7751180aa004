#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "osched/errors.hpp"

namespace osched {

/// Principal-branch Lambert W on x >= 0: the root w >= 0 of w e^w = x.
/// Halley iteration from a log-based initial guess; the residual
/// |w e^w - x| stays below 1e-12 * max(1, x).
double lambert_w0(double x);

/// C(n, m) p^m (1-p)^(n-m), evaluated in extended precision through
/// lgammal so it stays accurate for n up to 1e4.
double binomial_pmf(int n, int m, double p);

struct QuadratureSpec {
    double abs_tol = 1e-9;
    double rel_tol = 1e-9;
    int max_subdivisions = 4000;
};

namespace detail {

// Gauss-Kronrod 7-15 nodes/weights on [-1, 1]; node 0 first, then the pairs.
struct Gk15Sample {
    double estimate;  // Kronrod 15-point value
    double error;     // conservative error from the embedded Gauss 7
};

template <typename F>
Gk15Sample gk15(F&& f, double a, double b) {
    static constexpr double nodes[8] = {
        0.0,
        0.405845151377397166906606412076961,
        0.741531185599394439863864773280788,
        0.949107912342758524526189684047851,
        0.207784955007898467600689403773245,
        0.586087235467691130294144838258730,
        0.864864423359769072789712788640926,
        0.991455371120812639206854697526329,
    };
    static constexpr double gauss_w[4] = {
        0.417959183673469387755102040816327,
        0.381830050505118944950369775488975,
        0.279705391489276667901467771423780,
        0.129484966168869693270611432679082,
    };
    static constexpr double kronrod_w[8] = {
        0.209482141084727828012999174891714,
        0.190350578064785409913256402421014,
        0.140653259715525918745189590510238,
        0.063092092629978553290700663189204,
        0.204432940075298892414161999234649,
        0.169004726639267902826583426598550,
        0.104790010322250183839876322541518,
        0.022935322010529224963732008058970,
    };

    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double f0 = f(mid);
    double gauss = gauss_w[0] * f0;
    double kronrod = kronrod_w[0] * f0;
    for (int i = 1; i < 8; ++i) {
        const double offset = half * nodes[i];
        const double fi = f(mid + offset) + f(mid - offset);
        kronrod += kronrod_w[i] * fi;
        if (i < 4) gauss += gauss_w[i] * fi;
    }
    gauss *= half;
    kronrod *= half;

    const double diff = std::fabs(gauss - kronrod);
    return {kronrod, std::pow(200.0 * diff, 1.5)};
}

}  // namespace detail

/// Adaptive Gauss-Kronrod integration of f over the finite interval [a, b].
/// Bisects until every subinterval meets its share of the tolerance; throws
/// NumericError carrying the partial estimate when the subdivision budget
/// runs out.
template <typename F>
double integrate(F&& f, double a, double b, const QuadratureSpec& spec = {}) {
    if (!(spec.abs_tol > 0.0) || !(spec.rel_tol > 0.0) || spec.max_subdivisions < 1) {
        throw std::invalid_argument("invalid quadrature spec");
    }
    if (a == b) return 0.0;

    struct Interval {
        double a, b, estimate, error;
    };

    const auto first = detail::gk15(f, a, b);
    std::vector<Interval> work{{a, b, first.estimate, first.error}};
    const double total_len = std::fabs(b - a);

    double sum = 0.0;
    int used = 0;
    while (!work.empty()) {
        const Interval iv = work.back();
        work.pop_back();

        if (!std::isfinite(iv.estimate)) {
            throw NumericError("integrand produced a non-finite value", sum);
        }
        const double share = std::fabs(iv.b - iv.a) / total_len;
        const double allowed =
            std::max(spec.abs_tol, spec.rel_tol * std::fabs(sum + iv.estimate)) * share;
        if (iv.error <= allowed) {
            sum += iv.estimate;
            continue;
        }
        if (++used > spec.max_subdivisions) {
            double rest = iv.estimate;
            for (const Interval& w : work) rest += w.estimate;
            throw NumericError("quadrature failed to converge within subdivision budget",
                               sum + rest);
        }
        const double mid = 0.5 * (iv.a + iv.b);
        const auto left = detail::gk15(f, iv.a, mid);
        const auto right = detail::gk15(f, mid, iv.b);
        // Settle the smoother left side first so a later failure still carries
        // a meaningful partial estimate.
        work.push_back({mid, iv.b, right.estimate, right.error});
        work.push_back({iv.a, mid, left.estimate, left.error});
    }
    return sum;
}

/// Integral of f over [a, inf) for integrands that eventually decay.
/// Maps x = a + t/(1-t) onto t in [0, 1) and runs the adaptive rule there.
template <typename F>
double integrate_semi_infinite(F&& f, double a, const QuadratureSpec& spec = {}) {
    auto transformed = [&f, a](double t) {
        const double inv = 1.0 / (1.0 - t);
        return f(a + t * inv) * inv * inv;
    };
    return integrate(transformed, 0.0, 1.0, spec);
}

/// Exhaustive argmax of f over the grid {lo, lo+step, ...} within [lo, hi].
/// Ties resolve toward the smaller abscissa. Used as the verification oracle
/// against closed-form optimizers, so it favours predictability over speed.
template <typename F>
std::pair<double, double> grid_argmax(F&& f, double lo, double hi, double step) {
    if (!(lo < hi) || !(step > 0.0)) {
        throw std::invalid_argument("grid_argmax requires lo < hi and step > 0");
    }
    const auto count = static_cast<std::uint64_t>((hi - lo) / step + 1e-9);
    double best_x = lo;
    double best_val = -std::numeric_limits<double>::infinity();
    for (std::uint64_t k = 0; k <= count; ++k) {
        const double x = lo + static_cast<double>(k) * step;
        const double value = f(x);
        if (!std::isfinite(value)) {
            throw NumericError("objective not finite at x = " + std::to_string(x),
                               best_val);
        }
        if (value > best_val) {
            best_val = value;
            best_x = x;
        }
    }
    return {best_x, best_val};
}

}  // namespace osched
