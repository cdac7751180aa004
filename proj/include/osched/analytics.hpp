#pragma once

#include <optional>

#include "osched/channel.hpp"
#include "osched/numerics.hpp"
#include "osched/scheduler.hpp"

namespace osched {

/// Closed-form / quadrature prediction of a policy's long-run behaviour.
struct RatePrediction {
    Policy policy;                       // resolved (no optimal_threshold)
    int n_users = 1;
    double expected_tx_rate = 0.0;       // E[log2(1 + limiting SNR)]
    double expected_goodput = 0.0;       // E[|served| * tx_rate]
    std::optional<double> r_th;          // log2(1 + gamma_th), threshold only
    std::optional<double> lower_bound;   // guaranteed-rate bound, threshold only
    std::optional<double> resolved_p;    // threshold probability in force
};

/// Guaranteed-rate lower bound of a threshold scheduler:
/// (1-p) * log2(1 - ln(1-p) * gbar). Concave in p on [0, 1).
double lower_bound_rate(double p, AvgSnr gbar);

/// Quantile probability maximizing lower_bound_rate, in closed form through
/// the principal Lambert W branch: p* = 1 - exp(1/gbar - 1/W(gbar)).
double optimal_p(AvgSnr gbar);

/// Mean transmit rate of threshold(p) over n users. Mixes, per passing count
/// m ~ Binomial(n, 1-p), the minimum-order-statistic rate of the users above
/// gamma_th, plus the best-user fallback when nobody passes.
double threshold_avg_tx_rate(int n_users, double p, AvgSnr gbar,
                             const QuadratureSpec& spec = {});

/// Mean aggregate goodput (served users x transmit rate) of threshold(p).
double threshold_avg_goodput(int n_users, double p, AvgSnr gbar,
                             const QuadratureSpec& spec = {});

/// Mean rate of the best of n users: E[log2(1 + max)].
double unicast_avg_rate(int n_users, AvgSnr gbar, const QuadratureSpec& spec = {});

/// Mean goodput of serving all n users at the weakest user's rate.
double multicast_avg_goodput(int n_users, AvgSnr gbar,
                             const QuadratureSpec& spec = {});

/// Mean goodput of serving the floor(n/2) strongest users (at least one) at
/// the weakest selected user's rate, via the order-statistic survivor.
double median_user_avg_goodput(int n_users, AvgSnr gbar,
                               const QuadratureSpec& spec = {});

/// Replace optimal_threshold by threshold(optimal_p(gbar)); anything else
/// passes through unchanged.
Policy resolve_policy(const Policy& policy, AvgSnr gbar);

/// Full prediction for any policy (optimal_threshold is resolved here).
RatePrediction predict(const Policy& policy, int n_users, AvgSnr gbar,
                       const QuadratureSpec& spec = {});

}  // namespace osched
