#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "osched/analytics.hpp"
#include "osched/channel.hpp"
#include "osched/scheduler.hpp"

namespace osched {

struct SimConfig {
    std::size_t n_users = 1;
    AvgSnr gbar = AvgSnr::from_linear(1.0);
    Policy policy = Policy::unicast();
    std::uint64_t n_slots = 100000;
    std::uint64_t seed = 0;
};

struct SimResult {
    double mean_tx_rate = 0.0;
    double se_tx_rate = 0.0;
    double mean_goodput = 0.0;
    double se_goodput = 0.0;
    double mean_served = 0.0;   // users actually transmitted to (>= 1 per slot)
    double se_served = 0.0;
    double mean_passing = 0.0;  // users at/above threshold; 0 in fallback slots
    double se_passing = 0.0;
    double fallback_fraction = 0.0;
    std::uint64_t n_slots = 0;
    std::uint64_t seed = 0;
    std::optional<double> resolved_p;  // threshold policies only
};

/// Run the per-slot loop sample -> schedule -> accumulate. Deterministic in
/// (config, seed); optimal_threshold resolves its p once, up front. Standard
/// errors are sample stdev / sqrt(n_slots) from one-pass accumulation, safe
/// for slot counts up to 1e8.
SimResult run_sim(const SimConfig& config);

enum class SweepField { avg_snr_db, n_users };

/// Cartesian sweep of policies x values over one field of the base config.
struct SweepRequest {
    SimConfig base;
    std::vector<Policy> policies;
    SweepField field = SweepField::avg_snr_db;
    std::vector<double> values;
    unsigned parallelism = 1;
};

struct SweepPoint {
    Policy policy = Policy::unicast();
    double value = 0.0;
    std::uint64_t seed = 0;
    std::optional<SimResult> result;  // empty when the point failed
    std::string error;
};

/// Seed tag separating the random streams of different policies in a sweep.
std::uint64_t policy_stream_tag(const Policy& policy) noexcept;

/// Run every (policy, value) combination, each on an independent substream
/// seeded as derive_stream_seed(base.seed, value_index, policy_stream_tag).
/// Output order and every result are independent of `parallelism`; failed
/// points carry an error message and the sweep continues.
std::vector<SweepPoint> run_sweep(const SweepRequest& request);

}  // namespace osched
