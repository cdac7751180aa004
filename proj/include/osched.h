/*
 * C API of the opportunistic downlink scheduler library.
 *
 * Every entry point is thread-safe. Functions that can fail return an
 * osched_status; on failure a human-readable message is available from
 * osched_last_error() (thread-local). Out-parameters are written only on
 * OSCHED_OK. Optional numeric fields that do not apply hold NaN.
 */
#ifndef OSCHED_H
#define OSCHED_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum osched_status {
    OSCHED_OK = 0,
    OSCHED_ERR_INVALID_ARGUMENT = 1,
    OSCHED_ERR_NUMERIC = 2,
    OSCHED_ERR_NULL_POINTER = 3,
} osched_status;

const char* osched_version(void);
const char* osched_status_message(osched_status status);
const char* osched_last_error(void);

double osched_db_to_linear(double snr_db);
double osched_linear_to_db(double snr_linear);

/* ---- channel model and shared numerics ---------------------------------- */

osched_status osched_snr_pdf(double x, double gbar_linear, double* out);
osched_status osched_snr_cdf(double x, double gbar_linear, double* out);
osched_status osched_snr_quantile(double p, double gbar_linear, double* out);
osched_status osched_shannon_rate(double gamma, double* out);
osched_status osched_lambert_w0(double x, double* out);
osched_status osched_binomial_pmf(unsigned n, unsigned m, double p, double* out);

/* (1-p) * log2(1 - ln(1-p) * gbar): guaranteed-rate bound of threshold(p). */
osched_status osched_lower_bound_rate(double p, double gbar_linear, double* out);
/* Quantile probability maximizing the bound (closed form via Lambert W). */
osched_status osched_optimal_p(double gbar_linear, double* out);

/* ---- policies ------------------------------------------------------------ */

typedef struct osched_policy osched_policy;

osched_policy* osched_policy_unicast(void);
osched_policy* osched_policy_multicast(void);
osched_policy* osched_policy_median_user(void);
osched_policy* osched_policy_median_threshold(void);
osched_policy* osched_policy_optimal_threshold(void);
osched_status osched_policy_threshold(double p, osched_policy** out);
void osched_policy_free(osched_policy* policy);
const char* osched_policy_name(const osched_policy* policy);

/* ---- analytics ----------------------------------------------------------- */

typedef struct osched_prediction {
    double expected_tx_rate; /* bits/s/Hz */
    double expected_goodput; /* served users x rate, bits/s/Hz */
    double r_th;             /* log2(1 + gamma_th); NaN unless threshold */
    double lower_bound;      /* NaN unless threshold */
    double resolved_p;       /* threshold probability in force; NaN otherwise */
} osched_prediction;

osched_status osched_predict(const osched_policy* policy, unsigned n_users,
                             double gbar_linear, osched_prediction* out);

/* ---- Monte Carlo simulation ---------------------------------------------- */

typedef struct osched_sim_result {
    double mean_tx_rate;
    double se_tx_rate;
    double mean_goodput;
    double se_goodput;
    double mean_served;  /* users actually transmitted to (>= 1 per slot) */
    double se_served;
    double mean_passing; /* users at/above threshold; 0 in fallback slots */
    double se_passing;
    double fallback_fraction;
    uint64_t n_slots;
    uint64_t seed;
    double resolved_p; /* NaN unless threshold */
} osched_sim_result;

/* Seeded per-slot simulation; bit-reproducible for a given (config, seed). */
osched_status osched_run_sim(const osched_policy* policy, unsigned n_users,
                             double gbar_linear, uint64_t n_slots, uint64_t seed,
                             osched_sim_result* out);

/* Scheduling decision for one externally supplied slot realization. `served`
 * must have room for n_users indices; *n_served receives the count. */
osched_status osched_schedule_slot(const osched_policy* policy, const double* snrs,
                                   size_t n_users, double gbar_linear,
                                   uint32_t* served, size_t* n_served,
                                   double* tx_rate, double* goodput,
                                   int* fallback_used);

typedef enum osched_sweep_field {
    OSCHED_SWEEP_SNR_DB = 0,
    OSCHED_SWEEP_USERS = 1,
} osched_sweep_field;

/* Cartesian sweep of policies x values over one field. `results` receives
 * n_policies * n_values entries, policy-major, in deterministic order; the
 * outcome is independent of `parallelism`. Each point runs on its own
 * substream derived from (seed, value index, policy). A failed point is
 * reported through the overall status (first error wins) but the remaining
 * points still run. */
osched_status osched_run_sweep(const osched_policy* const* policies,
                               size_t n_policies, osched_sweep_field field,
                               const double* values, size_t n_values,
                               unsigned base_users, double base_gbar_linear,
                               uint64_t n_slots, uint64_t seed,
                               unsigned parallelism, osched_sim_result* results);

#ifdef __cplusplus
}
#endif

#endif /* OSCHED_H */
