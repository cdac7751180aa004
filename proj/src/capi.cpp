#include "osched.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <new>
#include <string>

#include "osched/analytics.hpp"
#include "osched/channel.hpp"
#include "osched/numerics.hpp"
#include "osched/scheduler.hpp"
#include "osched/sim.hpp"

struct osched_policy {
    osched::Policy impl;
};

namespace {

thread_local std::string g_last_error;

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

osched_status fail(osched_status status, const char* message) {
    g_last_error = message;
    return status;
}

/// Run `fn`, translating the library's exception idiom into status codes.
template <typename Fn>
osched_status guarded(Fn&& fn) {
    try {
        fn();
        return OSCHED_OK;
    } catch (const std::invalid_argument& e) {
        return fail(OSCHED_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::domain_error& e) {
        return fail(OSCHED_ERR_INVALID_ARGUMENT, e.what());
    } catch (const osched::NumericError& e) {
        return fail(OSCHED_ERR_NUMERIC, e.what());
    } catch (const std::exception& e) {
        return fail(OSCHED_ERR_NUMERIC, e.what());
    }
}

template <typename Fn>
osched_status scalar_op(double* out, Fn&& fn) {
    if (out == nullptr) return fail(OSCHED_ERR_NULL_POINTER, "null output pointer");
    return guarded([&] { *out = fn(); });
}

void fill_result(const osched::SimResult& in, osched_sim_result* out) {
    out->mean_tx_rate = in.mean_tx_rate;
    out->se_tx_rate = in.se_tx_rate;
    out->mean_goodput = in.mean_goodput;
    out->se_goodput = in.se_goodput;
    out->mean_served = in.mean_served;
    out->se_served = in.se_served;
    out->mean_passing = in.mean_passing;
    out->se_passing = in.se_passing;
    out->fallback_fraction = in.fallback_fraction;
    out->n_slots = in.n_slots;
    out->seed = in.seed;
    out->resolved_p = in.resolved_p.value_or(kNan);
}

osched_policy* make_policy(const osched::Policy& policy) {
    return new (std::nothrow) osched_policy{policy};
}

}  // namespace

extern "C" {

const char* osched_version(void) { return "0.1.0"; }

const char* osched_status_message(osched_status status) {
    switch (status) {
        case OSCHED_OK: return "ok";
        case OSCHED_ERR_INVALID_ARGUMENT: return "invalid argument";
        case OSCHED_ERR_NUMERIC: return "numeric failure";
        case OSCHED_ERR_NULL_POINTER: return "null pointer";
    }
    return "unknown status";
}

const char* osched_last_error(void) { return g_last_error.c_str(); }

double osched_db_to_linear(double snr_db) { return std::pow(10.0, snr_db / 10.0); }

double osched_linear_to_db(double snr_linear) { return 10.0 * std::log10(snr_linear); }

osched_status osched_snr_pdf(double x, double gbar_linear, double* out) {
    return scalar_op(out, [&] {
        return osched::snr_pdf(x, osched::AvgSnr::from_linear(gbar_linear));
    });
}

osched_status osched_snr_cdf(double x, double gbar_linear, double* out) {
    return scalar_op(out, [&] {
        return osched::snr_cdf(x, osched::AvgSnr::from_linear(gbar_linear));
    });
}

osched_status osched_snr_quantile(double p, double gbar_linear, double* out) {
    return scalar_op(out, [&] {
        return osched::snr_quantile(p, osched::AvgSnr::from_linear(gbar_linear));
    });
}

osched_status osched_shannon_rate(double gamma, double* out) {
    return scalar_op(out, [&] { return osched::shannon_rate(gamma); });
}

osched_status osched_lambert_w0(double x, double* out) {
    return scalar_op(out, [&] { return osched::lambert_w0(x); });
}

osched_status osched_binomial_pmf(unsigned n, unsigned m, double p, double* out) {
    return scalar_op(out, [&] {
        return osched::binomial_pmf(static_cast<int>(n), static_cast<int>(m), p);
    });
}

osched_status osched_lower_bound_rate(double p, double gbar_linear, double* out) {
    return scalar_op(out, [&] {
        return osched::lower_bound_rate(p, osched::AvgSnr::from_linear(gbar_linear));
    });
}

osched_status osched_optimal_p(double gbar_linear, double* out) {
    return scalar_op(out, [&] {
        return osched::optimal_p(osched::AvgSnr::from_linear(gbar_linear));
    });
}

osched_policy* osched_policy_unicast(void) {
    return make_policy(osched::Policy::unicast());
}

osched_policy* osched_policy_multicast(void) {
    return make_policy(osched::Policy::multicast());
}

osched_policy* osched_policy_median_user(void) {
    return make_policy(osched::Policy::median_user());
}

osched_policy* osched_policy_median_threshold(void) {
    return make_policy(osched::Policy::median_threshold());
}

osched_policy* osched_policy_optimal_threshold(void) {
    return make_policy(osched::Policy::optimal_threshold());
}

osched_status osched_policy_threshold(double p, osched_policy** out) {
    if (out == nullptr) return fail(OSCHED_ERR_NULL_POINTER, "null output pointer");
    return guarded([&] { *out = make_policy(osched::Policy::threshold(p)); });
}

void osched_policy_free(osched_policy* policy) { delete policy; }

const char* osched_policy_name(const osched_policy* policy) {
    return policy == nullptr ? "null" : policy->impl.name();
}

osched_status osched_predict(const osched_policy* policy, unsigned n_users,
                             double gbar_linear, osched_prediction* out) {
    if (policy == nullptr || out == nullptr) {
        return fail(OSCHED_ERR_NULL_POINTER, "null policy or output pointer");
    }
    return guarded([&] {
        const auto prediction =
            osched::predict(policy->impl, static_cast<int>(n_users),
                            osched::AvgSnr::from_linear(gbar_linear));
        out->expected_tx_rate = prediction.expected_tx_rate;
        out->expected_goodput = prediction.expected_goodput;
        out->r_th = prediction.r_th.value_or(kNan);
        out->lower_bound = prediction.lower_bound.value_or(kNan);
        out->resolved_p = prediction.resolved_p.value_or(kNan);
    });
}

osched_status osched_run_sim(const osched_policy* policy, unsigned n_users,
                             double gbar_linear, uint64_t n_slots, uint64_t seed,
                             osched_sim_result* out) {
    if (policy == nullptr || out == nullptr) {
        return fail(OSCHED_ERR_NULL_POINTER, "null policy or output pointer");
    }
    return guarded([&] {
        osched::SimConfig config;
        config.n_users = n_users;
        config.gbar = osched::AvgSnr::from_linear(gbar_linear);
        config.policy = policy->impl;
        config.n_slots = n_slots;
        config.seed = seed;
        fill_result(osched::run_sim(config), out);
    });
}

osched_status osched_schedule_slot(const osched_policy* policy, const double* snrs,
                                   size_t n_users, double gbar_linear,
                                   uint32_t* served, size_t* n_served,
                                   double* tx_rate, double* goodput,
                                   int* fallback_used) {
    if (policy == nullptr || snrs == nullptr || served == nullptr ||
        n_served == nullptr || tx_rate == nullptr || goodput == nullptr ||
        fallback_used == nullptr) {
        return fail(OSCHED_ERR_NULL_POINTER, "null pointer argument");
    }
    return guarded([&] {
        osched::SlotRealization slot;
        slot.snrs.assign(snrs, snrs + n_users);
        const auto outcome = osched::schedule_slot(
            policy->impl, slot, osched::AvgSnr::from_linear(gbar_linear));
        for (size_t i = 0; i < outcome.served.size(); ++i) {
            served[i] = outcome.served[i];
        }
        *n_served = outcome.served.size();
        *tx_rate = outcome.tx_rate;
        *goodput = outcome.goodput;
        *fallback_used = outcome.fallback_used ? 1 : 0;
    });
}

osched_status osched_run_sweep(const osched_policy* const* policies,
                               size_t n_policies, osched_sweep_field field,
                               const double* values, size_t n_values,
                               unsigned base_users, double base_gbar_linear,
                               uint64_t n_slots, uint64_t seed,
                               unsigned parallelism, osched_sim_result* results) {
    if (policies == nullptr || values == nullptr || results == nullptr) {
        return fail(OSCHED_ERR_NULL_POINTER, "null pointer argument");
    }
    for (size_t i = 0; i < n_policies; ++i) {
        if (policies[i] == nullptr) {
            return fail(OSCHED_ERR_NULL_POINTER, "null policy in sweep");
        }
    }
    osched_status status = OSCHED_OK;
    const osched_status run_status = guarded([&] {
        osched::SweepRequest request;
        request.base.n_users = base_users;
        request.base.gbar = osched::AvgSnr::from_linear(base_gbar_linear);
        request.base.n_slots = n_slots;
        request.base.seed = seed;
        request.field = field == OSCHED_SWEEP_SNR_DB ? osched::SweepField::avg_snr_db
                                                     : osched::SweepField::n_users;
        request.values.assign(values, values + n_values);
        request.parallelism = parallelism;
        request.policies.reserve(n_policies);
        for (size_t i = 0; i < n_policies; ++i) {
            request.policies.push_back(policies[i]->impl);
        }

        const auto points = osched::run_sweep(request);
        for (size_t i = 0; i < points.size(); ++i) {
            if (points[i].result) {
                fill_result(*points[i].result, &results[i]);
            } else {
                std::memset(&results[i], 0, sizeof(results[i]));
                results[i].resolved_p = kNan;
                if (status == OSCHED_OK) {
                    status = fail(OSCHED_ERR_NUMERIC, points[i].error.c_str());
                }
            }
        }
    });
    return run_status != OSCHED_OK ? run_status : status;
}

}  // extern "C"
