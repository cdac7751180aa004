// Independent reference implementations used to verify the library. These
// deliberately take different routes than the production code: closed forms
// through the exponential integral E1 instead of rate-domain quadrature,
// composite Simpson instead of adaptive Gauss-Kronrod, std::mt19937_64 and
// sorting instead of the fixed xoshiro stream and single-pass selection.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace oracle {

inline constexpr double kLn2 = 0.6931471805599453;

/// Bisection root of an increasing function: solves f(x) = target on [lo, hi].
template <typename F>
double bisect_increasing(F&& f, double lo, double hi, double target,
                         int iterations = 200) {
    for (int i = 0; i < iterations; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) < target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// e^x * E1(x) for x > 0; series below 1, Lentz continued fraction above.
inline long double e1_scaled(long double x) {
    if (!(x > 0.0L)) throw std::invalid_argument("e1_scaled needs x > 0");
    if (x <= 1.0L) {
        long double sum = -0.57721566490153286060651209L - std::log(x);
        long double term = 1.0L;
        for (int k = 1; k < 64; ++k) {
            term *= -x / k;
            sum -= term / k;
        }
        return std::exp(x) * sum;
    }
    long double b = x + 1.0L;
    long double c = 1e308L;
    long double d = 1.0L / b;
    long double h = d;
    for (int i = 1; i < 300; ++i) {
        const long double a = -static_cast<long double>(i) * i;
        b += 2.0L;
        d = 1.0L / (a * d + b);
        c = b + a / c;
        const long double delta = c * d;
        h *= delta;
        if (std::fabs(delta - 1.0L) < 1e-18L) break;
    }
    return h;
}

inline double exponential_integral_e1(double x) {
    return static_cast<double>(e1_scaled(static_cast<long double>(x)) *
                               std::exp(-static_cast<long double>(x)));
}

/// E[log2(1 + X)] for X exponential with the given mean.
inline double expected_log2_1p_exp(double mean) {
    return static_cast<double>(e1_scaled(1.0L / static_cast<long double>(mean))) / kLn2;
}

/// E[log2(c + X)] - log2(c) for X exponential with the given mean, c >= 1.
inline double expected_log2_shift_exp(double c, double mean) {
    const long double z = static_cast<long double>(c) / static_cast<long double>(mean);
    return static_cast<double>(e1_scaled(z)) / kLn2;
}

/// Composite Simpson rule with a fixed (even) panel count.
template <typename F>
double simpson(F&& f, double a, double b, int panels = 4000) {
    if (panels % 2 != 0) ++panels;
    const double h = (b - a) / panels;
    double sum = f(a) + f(b);
    for (int i = 1; i < panels; ++i) {
        sum += f(a + h * i) * (i % 2 == 0 ? 2.0 : 4.0);
    }
    return sum * h / 3.0;
}

/// Exact binomial coefficient via Pascal's triangle in long double.
inline long double binomial_coefficient(int n, int m) {
    if (m < 0 || m > n) return 0.0L;
    std::vector<long double> row(static_cast<std::size_t>(n) + 1, 0.0L);
    row[0] = 1.0L;
    for (int i = 1; i <= n; ++i) {
        for (int j = i; j >= 1; --j) row[j] += row[j - 1];
    }
    return row[m];
}

inline double exact_binomial_pmf(int n, int m, double p) {
    const long double lp = static_cast<long double>(p);
    return static_cast<double>(binomial_coefficient(n, m) * std::pow(lp, m) *
                               std::pow(1.0L - lp, n - m));
}

inline int median_served(int n) { return std::max(1, n / 2); }

// ---- closed forms (stable for n up to ~25) --------------------------------

/// E[log2(1 + max of n iid Exp(gbar))], by inclusion-exclusion over E1.
inline double unicast_rate_closed_form(int n, double gbar) {
    long double sum = 0.0L;
    for (int k = 1; k <= n; ++k) {
        const long double term = binomial_coefficient(n, k) *
                                 e1_scaled(static_cast<long double>(k) / gbar);
        sum += (k % 2 == 1) ? term : -term;
    }
    return static_cast<double>(sum) / kLn2;
}

/// n * E[log2(1 + min of n iid Exp(gbar))]; the minimum is Exp(gbar/n).
inline double multicast_goodput_closed_form(int n, double gbar) {
    return n * expected_log2_1p_exp(gbar / n);
}

/// E[log2(1 + j-th smallest of n iid Exp(gbar))]: expand the order-statistic
/// survivor into powers of e^(-x/gbar) and integrate each term through E1.
inline double order_stat_rate_closed_form(int n, int j, double gbar) {
    // survivor = sum_{i=0}^{j-1} C(n,i) (1-S)^i S^(n-i) = sum_k a_k S^k
    std::vector<long double> coeff(static_cast<std::size_t>(n) + 1, 0.0L);
    for (int i = 0; i <= j - 1; ++i) {
        const long double cni = binomial_coefficient(n, i);
        for (int l = 0; l <= i; ++l) {
            const long double cil = binomial_coefficient(i, l);
            const int k = n - i + l;
            coeff[k] += cni * cil * ((l % 2 == 0) ? 1.0L : -1.0L);
        }
    }
    long double sum = 0.0L;
    for (int k = 1; k <= n; ++k) {
        if (coeff[k] == 0.0L) continue;
        sum += coeff[k] * e1_scaled(static_cast<long double>(k) / gbar);
    }
    return static_cast<double>(sum) / kLn2;
}

inline double median_user_goodput_closed_form(int n, double gbar) {
    const int k = median_served(n);
    return k * order_stat_rate_closed_form(n, n - k + 1, gbar);
}

struct ThresholdClosedForm {
    double tx_rate;
    double goodput;
};

/// Threshold(p) moments via memorylessness: conditioned on passing, the SNR
/// is gamma_th + Exp(gbar), so the minimum of m passers is gamma_th +
/// Exp(gbar/m) and its mean rate falls out of E1. The no-passer fallback term
/// integrates the truncated maximum by Simpson.
inline ThresholdClosedForm threshold_closed_form(int n, double p, double gbar) {
    const double q = 1.0 - p;
    const double gamma_th = -gbar * std::log1p(-p);
    const double r_th = std::log1p(gamma_th) / kLn2;
    const double p_none = std::pow(p, n);

    double tx = (1.0 - p_none) * r_th;
    double goodput = n * q * r_th;
    for (int m = 1; m <= n; ++m) {
        const double weight = exact_binomial_pmf(n, m, q);
        const double excess = expected_log2_shift_exp(1.0 + gamma_th, gbar / m);
        tx += weight * excess;
        goodput += weight * m * excess;
    }

    if (p_none > 0.0) {
        const auto integrand = [n, p, gbar](double y) {
            const double x = std::exp2(y) - 1.0;
            const double f = -std::expm1(-x / gbar);
            return 1.0 - std::pow(f / p, n);
        };
        const double fallback = simpson(integrand, 0.0, r_th, 2000);
        tx += p_none * fallback;
        goodput += p_none * fallback;
    }
    return {tx, goodput};
}

// ---- independent Monte Carlo ----------------------------------------------

struct McStats {
    double mean_tx = 0.0, se_tx = 0.0;
    double mean_goodput = 0.0, se_goodput = 0.0;
    double mean_served = 0.0;
    double fallback_fraction = 0.0;
};

enum class McPolicy { unicast, multicast, median_user, threshold };

/// Plain-vanilla simulator: std::mt19937_64, std::exponential_distribution,
/// full sort per slot. Slow but obviously correct.
inline McStats mc_policy_stats(McPolicy policy, int n, double p, double gbar,
                               std::uint64_t slots, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::exponential_distribution<double> exp_dist(1.0 / gbar);
    const double gamma_th = -gbar * std::log1p(-p);

    std::vector<double> snrs(static_cast<std::size_t>(n));
    double sum_tx = 0.0, sumsq_tx = 0.0, sum_gp = 0.0, sumsq_gp = 0.0;
    double sum_served = 0.0;
    std::uint64_t fallbacks = 0;

    for (std::uint64_t t = 0; t < slots; ++t) {
        for (double& v : snrs) v = exp_dist(gen);
        std::vector<double> sorted = snrs;
        std::sort(sorted.begin(), sorted.end());

        double rate = 0.0;
        int served = 0;
        switch (policy) {
            case McPolicy::unicast:
                rate = std::log2(1.0 + sorted.back());
                served = 1;
                break;
            case McPolicy::multicast:
                rate = std::log2(1.0 + sorted.front());
                served = n;
                break;
            case McPolicy::median_user: {
                const int k = median_served(n);
                rate = std::log2(1.0 + sorted[static_cast<std::size_t>(n - k)]);
                served = k;
                break;
            }
            case McPolicy::threshold: {
                const auto first =
                    std::lower_bound(sorted.begin(), sorted.end(), gamma_th);
                served = static_cast<int>(sorted.end() - first);
                if (served > 0) {
                    rate = std::log2(1.0 + *first);
                } else {
                    rate = std::log2(1.0 + sorted.back());
                    served = 1;
                    ++fallbacks;
                }
                break;
            }
        }
        const double goodput = served * rate;
        sum_tx += rate;
        sumsq_tx += rate * rate;
        sum_gp += goodput;
        sumsq_gp += goodput * goodput;
        sum_served += served;
    }

    const double inv = 1.0 / static_cast<double>(slots);
    McStats stats;
    stats.mean_tx = sum_tx * inv;
    stats.mean_goodput = sum_gp * inv;
    stats.mean_served = sum_served * inv;
    stats.fallback_fraction = static_cast<double>(fallbacks) * inv;
    const double var_tx = std::max(0.0, sumsq_tx * inv - stats.mean_tx * stats.mean_tx);
    const double var_gp =
        std::max(0.0, sumsq_gp * inv - stats.mean_goodput * stats.mean_goodput);
    stats.se_tx = std::sqrt(var_tx * inv);
    stats.se_goodput = std::sqrt(var_gp * inv);
    return stats;
}

}  // namespace oracle
