#include "osched/analytics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace osched {

namespace {

constexpr double kInvLn2 = 1.4426950408889634;

void check_users(int n_users) {
    if (n_users < 1) throw std::invalid_argument("need at least one user");
}

void check_probability(double p) {
    if (!(p >= 0.0 && p < 1.0)) {
        throw std::invalid_argument("threshold probability must lie in [0, 1)");
    }
}

/// Survivor of the per-user SNR in the rate domain: P(log2(1+gamma) > y).
double rate_survivor(double y, double gbar) {
    return std::exp(-std::expm1(y * 0.6931471805599453) / gbar);
}

struct ThresholdMoments {
    double tx_rate;
    double goodput;
};

/// Shared evaluation of the threshold scheduler's mean transmit rate and
/// mean goodput.
///
/// With q = 1 - p the per-user passing probability and m the passing count,
///   E[rate | m >= 1 users pass] = R_th + I_m,
///   I_m = integral over y > R_th of [survivor(y) / q]^m,
/// and when nobody passes (probability p^n) the best user is served alone at
/// the mean of the truncated-at-gamma_th maximum.
ThresholdMoments threshold_moments(int n, double p, AvgSnr gbar,
                                   const QuadratureSpec& spec) {
    check_users(n);
    check_probability(p);
    const double g = gbar.linear();
    const double q = 1.0 - p;
    const double gamma_th = snr_quantile(p, gbar);
    const double r_th = std::log1p(gamma_th) * kInvLn2;
    const double log_q = std::log1p(-p);

    const double p_none = binomial_pmf(n, 0, q);  // = p^n

    double tx = (1.0 - p_none) * r_th;
    double goodput = static_cast<double>(n) * q * r_th;

    for (int m = 1; m <= n; ++m) {
        const double weight = binomial_pmf(n, m, q);
        if (weight < 1e-15) continue;
        const auto integrand = [m, g, log_q](double y) {
            const double log_surv = -std::expm1(y * 0.6931471805599453) / g;
            return std::exp(static_cast<double>(m) * (log_surv - log_q));
        };
        const double excess = integrate_semi_infinite(integrand, r_th, spec);
        tx += weight * excess;
        goodput += weight * static_cast<double>(m) * excess;
    }

    if (p_none > 0.0) {
        // Best-user fallback: max of n SNRs conditioned below gamma_th.
        const double log_p = std::log(p);
        const auto fallback_integrand = [n, g, log_p](double y) {
            const double f = -std::expm1(-std::expm1(y * 0.6931471805599453) / g);
            if (f <= 0.0) return 1.0;
            return -std::expm1(static_cast<double>(n) * (std::log(f) - log_p));
        };
        const double fallback_rate = integrate(fallback_integrand, 0.0, r_th, spec);
        tx += p_none * fallback_rate;
        goodput += p_none * fallback_rate;
    }

    return {tx, goodput};
}

/// E[log2(1 + j-th smallest of n)] through the order-statistic survivor
/// P(X_(j) > x) = P(Binomial(n, F(x)) <= j - 1).
double order_statistic_rate(int n, int j, AvgSnr gbar, const QuadratureSpec& spec) {
    const double g = gbar.linear();
    const auto integrand = [n, j, g](double y) {
        const double f = -std::expm1(-std::expm1(y * 0.6931471805599453) / g);
        long double survivor = 0.0L;
        for (int i = 0; i < j; ++i) {
            survivor += binomial_pmf(n, i, f);
        }
        return static_cast<double>(survivor);
    };
    return integrate_semi_infinite(integrand, 0.0, spec);
}

}  // namespace

double lower_bound_rate(double p, AvgSnr gbar) {
    check_probability(p);
    return (1.0 - p) * std::log1p(-gbar.linear() * std::log1p(-p)) * kInvLn2;
}

double optimal_p(AvgSnr gbar) {
    const double g = gbar.linear();
    const double w = lambert_w0(g);
    return -std::expm1(1.0 / g - 1.0 / w);
}

double threshold_avg_tx_rate(int n_users, double p, AvgSnr gbar,
                             const QuadratureSpec& spec) {
    return threshold_moments(n_users, p, gbar, spec).tx_rate;
}

double threshold_avg_goodput(int n_users, double p, AvgSnr gbar,
                             const QuadratureSpec& spec) {
    return threshold_moments(n_users, p, gbar, spec).goodput;
}

double unicast_avg_rate(int n_users, AvgSnr gbar, const QuadratureSpec& spec) {
    check_users(n_users);
    const double g = gbar.linear();
    const auto integrand = [n_users, g](double y) {
        const double survivor = rate_survivor(y, g);
        if (survivor >= 1.0) return 1.0;
        return -std::expm1(static_cast<double>(n_users) * std::log1p(-survivor));
    };
    return integrate_semi_infinite(integrand, 0.0, spec);
}

double multicast_avg_goodput(int n_users, AvgSnr gbar, const QuadratureSpec& spec) {
    check_users(n_users);
    const double g = gbar.linear();
    const auto integrand = [n_users, g](double y) {
        return std::pow(rate_survivor(y, g), static_cast<double>(n_users));
    };
    return static_cast<double>(n_users) * integrate_semi_infinite(integrand, 0.0, spec);
}

double median_user_avg_goodput(int n_users, AvgSnr gbar, const QuadratureSpec& spec) {
    check_users(n_users);
    const int served = static_cast<int>(median_user_served_count(n_users));
    const int j = n_users - served + 1;  // weakest selected, as j-th smallest
    return static_cast<double>(served) * order_statistic_rate(n_users, j, gbar, spec);
}

Policy resolve_policy(const Policy& policy, AvgSnr gbar) {
    if (policy.kind() == PolicyKind::optimal_threshold) {
        return Policy::threshold(optimal_p(gbar));
    }
    return policy;
}

RatePrediction predict(const Policy& policy, int n_users, AvgSnr gbar,
                       const QuadratureSpec& spec) {
    check_users(n_users);
    const Policy resolved = resolve_policy(policy, gbar);

    RatePrediction out{resolved, n_users, 0.0, 0.0, {}, {}, {}};
    switch (resolved.kind()) {
        case PolicyKind::unicast: {
            out.expected_tx_rate = unicast_avg_rate(n_users, gbar, spec);
            out.expected_goodput = out.expected_tx_rate;
            break;
        }
        case PolicyKind::multicast: {
            out.expected_goodput = multicast_avg_goodput(n_users, gbar, spec);
            out.expected_tx_rate = out.expected_goodput / n_users;
            break;
        }
        case PolicyKind::median_user: {
            out.expected_goodput = median_user_avg_goodput(n_users, gbar, spec);
            out.expected_tx_rate =
                out.expected_goodput / static_cast<double>(median_user_served_count(n_users));
            break;
        }
        case PolicyKind::threshold: {
            const double p = resolved.threshold_probability();
            out.resolved_p = p;
            if (p == 1.0) {
                // Degenerate infinite threshold: the fallback serves the best
                // user in every slot, i.e. unicast.
                out.expected_tx_rate = unicast_avg_rate(n_users, gbar, spec);
                out.expected_goodput = out.expected_tx_rate;
                out.r_th = std::numeric_limits<double>::infinity();
                out.lower_bound = 0.0;
            } else {
                const auto moments = threshold_moments(n_users, p, gbar, spec);
                out.expected_tx_rate = moments.tx_rate;
                out.expected_goodput = moments.goodput;
                out.r_th = shannon_rate(snr_quantile(p, gbar));
                out.lower_bound = lower_bound_rate(p, gbar);
            }
            break;
        }
        case PolicyKind::optimal_threshold:
            throw std::logic_error("optimal_threshold should have been resolved");
    }
    return out;
}

}  // namespace osched
