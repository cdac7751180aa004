#include "osched/sim.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace osched {

namespace {

/// One-pass (Welford) mean and variance accumulator.
class RunningStats {
public:
    void add(double x) noexcept {
        ++count_;
        const double delta = x - mean_;
        mean_ += delta / static_cast<double>(count_);
        m2_ += delta * (x - mean_);
    }

    double mean() const noexcept { return mean_; }

    double standard_error() const noexcept {
        if (count_ < 2) return 0.0;
        const double n = static_cast<double>(count_);
        return std::sqrt(m2_ / (n - 1.0) / n);
    }

private:
    std::uint64_t count_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

}  // namespace

SimResult run_sim(const SimConfig& config) {
    if (config.n_users < 1) throw std::invalid_argument("need at least one user");
    if (config.n_slots < 1) throw std::invalid_argument("need at least one slot");

    const Policy policy = resolve_policy(config.policy, config.gbar);
    const double gamma_th = policy.kind() == PolicyKind::threshold
                                ? resolve_threshold(policy, config.gbar)
                                : 0.0;

    Xoshiro256pp rng(config.seed);
    SlotRealization slot;
    slot.snrs.reserve(config.n_users);
    std::vector<double> scratch;

    RunningStats tx_rate, goodput, served, passing;
    std::uint64_t fallbacks = 0;

    for (std::uint64_t t = 0; t < config.n_slots; ++t) {
        sample_slot(config.n_users, config.gbar, rng, slot);
        const auto d = detail::decide_slot(policy.kind(), gamma_th, slot.snrs, scratch);
        tx_rate.add(d.tx_rate);
        goodput.add(static_cast<double>(d.served_count) * d.tx_rate);
        served.add(static_cast<double>(d.served_count));
        passing.add(d.fallback_used ? 0.0 : static_cast<double>(d.served_count));
        fallbacks += d.fallback_used ? 1 : 0;
    }

    SimResult result;
    result.mean_tx_rate = tx_rate.mean();
    result.se_tx_rate = tx_rate.standard_error();
    result.mean_goodput = goodput.mean();
    result.se_goodput = goodput.standard_error();
    result.mean_served = served.mean();
    result.se_served = served.standard_error();
    result.mean_passing = passing.mean();
    result.se_passing = passing.standard_error();
    result.fallback_fraction =
        static_cast<double>(fallbacks) / static_cast<double>(config.n_slots);
    result.n_slots = config.n_slots;
    result.seed = config.seed;
    if (policy.kind() == PolicyKind::threshold) {
        result.resolved_p = policy.threshold_probability();
    }
    return result;
}

std::uint64_t policy_stream_tag(const Policy& policy) noexcept {
    switch (policy.kind()) {
        case PolicyKind::unicast: return 1;
        case PolicyKind::multicast: return 2;
        case PolicyKind::median_user: return 3;
        case PolicyKind::optimal_threshold: return 4;
        case PolicyKind::threshold:
            return 0x100ULL ^ std::bit_cast<std::uint64_t>(policy.threshold_probability());
    }
    return 0;
}

std::vector<SweepPoint> run_sweep(const SweepRequest& request) {
    if (request.policies.empty() || request.values.empty()) {
        throw std::invalid_argument("sweep needs at least one policy and one value");
    }

    std::vector<SweepPoint> points;
    points.reserve(request.policies.size() * request.values.size());
    for (const Policy& policy : request.policies) {
        const std::uint64_t tag = policy_stream_tag(policy);
        for (std::size_t vi = 0; vi < request.values.size(); ++vi) {
            SweepPoint point;
            point.policy = policy;
            point.value = request.values[vi];
            point.seed = derive_stream_seed(request.base.seed, vi, tag);
            points.push_back(std::move(point));
        }
    }

    auto run_point = [&request](SweepPoint& point) {
        try {
            SimConfig config = request.base;
            config.policy = point.policy;
            config.seed = point.seed;
            switch (request.field) {
                case SweepField::avg_snr_db:
                    config.gbar = AvgSnr::from_db(point.value);
                    break;
                case SweepField::n_users: {
                    const auto n = static_cast<long long>(std::llround(point.value));
                    if (n < 1) throw std::invalid_argument("swept user count must be >= 1");
                    config.n_users = static_cast<std::size_t>(n);
                    break;
                }
            }
            point.result = run_sim(config);
        } catch (const std::exception& e) {
            point.error = e.what();
        }
    };

    const unsigned workers =
        std::max(1u, std::min<unsigned>(request.parallelism,
                                        static_cast<unsigned>(points.size())));
    if (workers == 1) {
        for (SweepPoint& point : points) run_point(point);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&points, &next, &run_point] {
                for (;;) {
                    const std::size_t idx = next.fetch_add(1);
                    if (idx >= points.size()) return;
                    run_point(points[idx]);
                }
            });
        }
        for (std::thread& worker : pool) worker.join();
    }
    return points;
}

}  // namespace osched
