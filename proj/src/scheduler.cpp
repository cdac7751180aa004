#include "osched/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace osched {

namespace {
constexpr double kInvLn2 = 1.4426950408889634;  // 1 / ln 2
}

double Policy::nan() noexcept { return std::numeric_limits<double>::quiet_NaN(); }

Policy Policy::threshold(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("threshold probability must lie in [0, 1]");
    }
    return Policy(PolicyKind::threshold, p);
}

double Policy::threshold_probability() const {
    if (kind_ != PolicyKind::threshold) {
        throw std::invalid_argument("policy has no threshold probability");
    }
    return p_;
}

const char* Policy::name() const noexcept {
    switch (kind_) {
        case PolicyKind::unicast: return "unicast";
        case PolicyKind::multicast: return "multicast";
        case PolicyKind::median_user: return "median-user";
        case PolicyKind::threshold: return p_ == 0.5 ? "median-threshold" : "threshold";
        case PolicyKind::optimal_threshold: return "optimal-threshold";
    }
    return "unknown";
}

double shannon_rate(double gamma) {
    if (std::isnan(gamma) || gamma < 0.0) {
        throw std::invalid_argument("SNR must be nonnegative");
    }
    return std::log1p(gamma) * kInvLn2;
}

double resolve_threshold(const Policy& policy, AvgSnr gbar) {
    if (policy.kind() != PolicyKind::threshold) {
        throw std::invalid_argument("resolve_threshold needs a threshold policy");
    }
    const double p = policy.threshold_probability();
    if (p == 1.0) return std::numeric_limits<double>::infinity();
    return snr_quantile(p, gbar);
}

std::size_t median_user_served_count(std::size_t n_users) noexcept {
    return std::max<std::size_t>(1, n_users / 2);
}

namespace detail {

SlotDecision decide_slot(PolicyKind kind, double gamma_th,
                         std::span<const double> snrs,
                         std::vector<double>& scratch) {
    SlotDecision d;
    const std::size_t n = snrs.size();

    switch (kind) {
        case PolicyKind::unicast: {
            std::size_t best = 0;
            for (std::size_t i = 1; i < n; ++i) {
                if (snrs[i] > snrs[best]) best = i;
            }
            d.served_count = 1;
            d.best_user = static_cast<std::uint32_t>(best);
            d.limiting_snr = snrs[best];
            break;
        }
        case PolicyKind::multicast: {
            double worst = snrs[0];
            for (std::size_t i = 1; i < n; ++i) worst = std::min(worst, snrs[i]);
            d.served_count = static_cast<std::uint32_t>(n);
            d.limiting_snr = worst;
            break;
        }
        case PolicyKind::median_user: {
            const std::size_t k = median_user_served_count(n);
            scratch.assign(snrs.begin(), snrs.end());
            std::nth_element(scratch.begin(), scratch.begin() + (k - 1), scratch.end(),
                             std::greater<double>());
            d.served_count = static_cast<std::uint32_t>(k);
            d.limiting_snr = scratch[k - 1];  // k-th largest
            break;
        }
        case PolicyKind::threshold: {
            std::size_t passing = 0;
            double min_selected = std::numeric_limits<double>::infinity();
            std::size_t best = 0;
            for (std::size_t i = 0; i < n; ++i) {
                const double snr = snrs[i];
                if (snr > snrs[best]) best = i;
                if (snr >= gamma_th) {
                    ++passing;
                    min_selected = std::min(min_selected, snr);
                }
            }
            if (passing > 0) {
                d.served_count = static_cast<std::uint32_t>(passing);
                d.limiting_snr = min_selected;
            } else {
                d.served_count = 1;
                d.limiting_snr = snrs[best];
                d.fallback_used = true;
            }
            d.best_user = static_cast<std::uint32_t>(best);
            break;
        }
        case PolicyKind::optimal_threshold:
            throw std::invalid_argument(
                "optimal_threshold must be resolved against an average SNR first");
    }

    d.tx_rate = std::log1p(d.limiting_snr) * kInvLn2;
    return d;
}

}  // namespace detail

SlotOutcome schedule_slot(const Policy& policy, const SlotRealization& slot,
                          AvgSnr gbar) {
    const std::size_t n = slot.n_users();
    if (n == 0) {
        throw std::invalid_argument("slot realization is empty");
    }
    for (double snr : slot.snrs) {
        if (std::isnan(snr) || snr < 0.0) {
            throw std::invalid_argument("slot SNRs must be nonnegative");
        }
    }

    const double gamma_th = policy.kind() == PolicyKind::threshold
                                ? resolve_threshold(policy, gbar)
                                : 0.0;
    std::vector<double> scratch;
    const auto d = detail::decide_slot(policy.kind(), gamma_th, slot.snrs, scratch);

    SlotOutcome out;
    out.tx_rate = d.tx_rate;
    out.goodput = static_cast<double>(d.served_count) * d.tx_rate;
    out.fallback_used = d.fallback_used;
    out.served.reserve(d.served_count);

    switch (policy.kind()) {
        case PolicyKind::unicast:
            out.served.push_back(d.best_user);
            break;
        case PolicyKind::multicast:
            for (std::uint32_t i = 0; i < n; ++i) out.served.push_back(i);
            break;
        case PolicyKind::median_user: {
            // Everyone strictly above the cut, then ties at the cut value by
            // ascending index until the quota is filled.
            const std::size_t k = d.served_count;
            std::size_t taken = 0;
            for (std::uint32_t i = 0; i < n && taken < k; ++i) {
                if (slot.snrs[i] > d.limiting_snr) {
                    out.served.push_back(i);
                    ++taken;
                }
            }
            for (std::uint32_t i = 0; i < n && taken < k; ++i) {
                if (slot.snrs[i] == d.limiting_snr) {
                    out.served.push_back(i);
                    ++taken;
                }
            }
            std::sort(out.served.begin(), out.served.end());
            break;
        }
        case PolicyKind::threshold: {
            if (d.fallback_used) {
                out.served.push_back(d.best_user);
            } else {
                for (std::uint32_t i = 0; i < n; ++i) {
                    if (slot.snrs[i] >= gamma_th) out.served.push_back(i);
                }
            }
            break;
        }
        case PolicyKind::optimal_threshold:
            throw std::invalid_argument(
                "optimal_threshold must be resolved against an average SNR first");
    }
    return out;
}

}  // namespace osched
