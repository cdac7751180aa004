#include "osched/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace osched {

AvgSnr AvgSnr::from_linear(double linear) {
    if (!std::isfinite(linear) || linear <= 0.0) {
        throw std::invalid_argument("average SNR must be finite and positive");
    }
    return AvgSnr(linear);
}

AvgSnr AvgSnr::from_db(double db) {
    if (!std::isfinite(db)) {
        throw std::invalid_argument("average SNR (dB) must be finite");
    }
    return AvgSnr(std::pow(10.0, db / 10.0));
}

double AvgSnr::db() const noexcept { return 10.0 * std::log10(linear_); }

double snr_pdf(double x, AvgSnr gbar) noexcept {
    if (x < 0.0) return 0.0;
    const double g = gbar.linear();
    return std::exp(-x / g) / g;
}

double snr_cdf(double x, AvgSnr gbar) noexcept {
    if (x < 0.0) return 0.0;
    return -std::expm1(-x / gbar.linear());
}

double snr_quantile(double p, AvgSnr gbar) {
    if (!(p >= 0.0 && p < 1.0)) {
        throw std::invalid_argument("quantile probability must lie in [0, 1)");
    }
    return -gbar.linear() * std::log1p(-p);
}

void sample_slot(std::size_t n_users, AvgSnr gbar, Xoshiro256pp& rng,
                 SlotRealization& out) {
    if (n_users == 0) {
        throw std::invalid_argument("a slot needs at least one user");
    }
    const double g = gbar.linear();
    out.snrs.resize(n_users);
    for (double& snr : out.snrs) {
        snr = -g * std::log1p(-rng.next_double());
    }
}

SlotRealization sample_slot(std::size_t n_users, AvgSnr gbar, Xoshiro256pp& rng) {
    SlotRealization slot;
    sample_slot(n_users, gbar, rng, slot);
    return slot;
}

}  // namespace osched
