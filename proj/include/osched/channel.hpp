#pragma once

#include <cstddef>
#include <vector>

#include "osched/rng.hpp"

namespace osched {

/// Average SNR of the flat Rayleigh channel, the single parameter of the
/// exponential per-user SNR distribution. All internal math runs on the
/// linear scale; dB exists only for conversion at the boundary.
class AvgSnr {
public:
    static AvgSnr from_linear(double linear);
    static AvgSnr from_db(double db);

    double linear() const noexcept { return linear_; }
    double db() const noexcept;

private:
    explicit AvgSnr(double linear) noexcept : linear_(linear) {}
    double linear_;
};

/// One time slot's instantaneous linear SNR per user.
struct SlotRealization {
    std::vector<double> snrs;

    std::size_t n_users() const noexcept { return snrs.size(); }
};

/// Density of the instantaneous SNR: (1/g) exp(-x/g) for x >= 0, else 0.
double snr_pdf(double x, AvgSnr gbar) noexcept;

/// Distribution function: 1 - exp(-x/g) for x >= 0, else 0.
double snr_cdf(double x, AvgSnr gbar) noexcept;

/// Inverse CDF; the threshold schedulers' gamma_th = quantile(p).
/// Requires 0 <= p < 1 (p = 1 is handled at the policy level as an infinite
/// threshold).
double snr_quantile(double p, AvgSnr gbar);

/// Draw one slot of i.i.d. SNRs by inverse-CDF transform of uniforms,
/// gamma = -gbar * ln(1 - u). Deterministic given the generator state.
void sample_slot(std::size_t n_users, AvgSnr gbar, Xoshiro256pp& rng,
                 SlotRealization& out);

SlotRealization sample_slot(std::size_t n_users, AvgSnr gbar, Xoshiro256pp& rng);

}  // namespace osched
