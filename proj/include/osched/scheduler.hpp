#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "osched/channel.hpp"

namespace osched {

enum class PolicyKind : std::uint8_t {
    unicast,
    multicast,
    median_user,
    threshold,
    optimal_threshold,  // threshold whose p is resolved from the average SNR
};

/// A scheduling rule. Threshold policies carry the quantile probability p of
/// the SNR distribution; gamma_th = quantile(p). optimal_threshold carries no
/// p of its own: it resolves to threshold(optimal_p(gbar)) at experiment
/// setup (analytics::resolve_policy).
class Policy {
public:
    static Policy unicast() noexcept { return Policy(PolicyKind::unicast, nan()); }
    static Policy multicast() noexcept { return Policy(PolicyKind::multicast, nan()); }
    static Policy median_user() noexcept { return Policy(PolicyKind::median_user, nan()); }
    static Policy threshold(double p);
    static Policy median_threshold() { return threshold(0.5); }
    static Policy optimal_threshold() noexcept {
        return Policy(PolicyKind::optimal_threshold, nan());
    }

    PolicyKind kind() const noexcept { return kind_; }
    bool is_threshold() const noexcept { return kind_ == PolicyKind::threshold; }

    /// Quantile probability; only meaningful for kind() == threshold.
    double threshold_probability() const;

    const char* name() const noexcept;

private:
    Policy(PolicyKind kind, double p) noexcept : kind_(kind), p_(p) {}
    static double nan() noexcept;

    PolicyKind kind_;
    double p_;
};

/// Scheduling outcome of a single slot.
struct SlotOutcome {
    std::vector<std::uint32_t> served;  // user indices, ascending
    double tx_rate = 0.0;               // bits/s/Hz
    double goodput = 0.0;               // |served| * tx_rate
    bool fallback_used = false;
};

/// Shannon spectral efficiency log2(1 + gamma) with unit bandwidth.
double shannon_rate(double gamma);

/// Threshold SNR gamma_th for a threshold policy: quantile(p). p = 0 maps to
/// 0 (everyone passes), p = 1 maps to +infinity (the fallback always fires).
double resolve_threshold(const Policy& policy, AvgSnr gbar);

/// Number of users the median-user rule serves: floor(n/2), at least one.
std::size_t median_user_served_count(std::size_t n_users) noexcept;

/// Apply a policy to one slot realization.
///
///   unicast      - serve the strongest user at its own rate
///   multicast    - serve everyone at the weakest user's rate
///   median_user  - serve the floor(N/2) strongest at the weakest selected rate
///   threshold(p) - serve every user with gamma >= gamma_th at the weakest
///                  selected rate; if nobody passes, fall back to the
///                  strongest user alone and flag fallback_used
///
/// Argmax and selection ties break toward the lowest user index.
SlotOutcome schedule_slot(const Policy& policy, const SlotRealization& slot,
                          AvgSnr gbar);

namespace detail {

/// Allocation-free core of schedule_slot used by the Monte Carlo loop.
struct SlotDecision {
    std::uint32_t served_count = 0;
    std::uint32_t best_user = 0;   // argmax index (threshold fallback / unicast)
    double tx_rate = 0.0;
    double limiting_snr = 0.0;     // SNR that set the rate
    bool fallback_used = false;
};

SlotDecision decide_slot(PolicyKind kind, double gamma_th,
                         std::span<const double> snrs,
                         std::vector<double>& scratch);

}  // namespace detail

}  // namespace osched
