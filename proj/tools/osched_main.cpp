// Command-line front end for the downlink scheduler toolkit. Talks to the
// core library exclusively through the public C API (osched.h).

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "osched.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitValidation = 4;

struct PolicyHandle {
    std::unique_ptr<osched_policy, decltype(&osched_policy_free)> ptr{
        nullptr, &osched_policy_free};
    std::string label;
};

PolicyHandle make_policy(const std::string& spec) {
    PolicyHandle handle;
    handle.label = spec;
    osched_policy* raw = nullptr;
    if (spec == "unicast") {
        raw = osched_policy_unicast();
    } else if (spec == "multicast") {
        raw = osched_policy_multicast();
    } else if (spec == "median-user") {
        raw = osched_policy_median_user();
    } else if (spec == "median-threshold") {
        raw = osched_policy_median_threshold();
    } else if (spec == "optimal-threshold") {
        raw = osched_policy_optimal_threshold();
    } else if (spec.rfind("threshold:", 0) == 0) {
        double p = 0.0;
        try {
            p = std::stod(spec.substr(10));
        } catch (const std::exception&) {
            throw CLI::ValidationError("--policy", "bad threshold probability in '" + spec + "'");
        }
        if (osched_policy_threshold(p, &raw) != OSCHED_OK) {
            throw CLI::ValidationError("--policy", osched_last_error());
        }
    } else {
        throw CLI::ValidationError(
            "--policy", "unknown policy '" + spec +
                            "' (expected unicast|multicast|median-user|"
                            "median-threshold|optimal-threshold|threshold:<p>)");
    }
    handle.ptr.reset(raw);
    return handle;
}

struct CurveRow {
    std::string sweep;
    double var;
    std::string policy;
    std::string source;
    double mean_goodput;
    double mean_tx_rate;
    double std_err;
    std::uint64_t seed;
};

std::string format_g6(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", value);
    return buf;
}

void write_curve_csv(std::ostream& os, std::vector<CurveRow> rows) {
    std::sort(rows.begin(), rows.end(), [](const CurveRow& a, const CurveRow& b) {
        if (a.policy != b.policy) return a.policy < b.policy;
        return a.var < b.var;
    });
    os << "sweep,var,policy,source,mean_goodput,mean_tx_rate,std_err,seed\n";
    for (const CurveRow& row : rows) {
        os << row.sweep << ',' << format_g6(row.var) << ',' << row.policy << ','
           << row.source << ',' << format_g6(row.mean_goodput) << ','
           << format_g6(row.mean_tx_rate) << ',' << format_g6(row.std_err) << ','
           << row.seed << '\n';
    }
}

int with_output(const std::string& path, const std::function<void(std::ostream&)>& fn) {
    if (path.empty() || path == "-") {
        fn(std::cout);
        return kExitOk;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        std::cerr << "error: cannot open '" << path << "' for writing\n";
        return kExitUsage;
    }
    fn(file);
    return kExitOk;
}

int status_to_exit(osched_status status) {
    switch (status) {
        case OSCHED_OK: return kExitOk;
        case OSCHED_ERR_INVALID_ARGUMENT: return kExitUsage;
        default: return kExitNumeric;
    }
}

int report_failure(osched_status status, const char* where) {
    std::cerr << "error: " << where << ": " << osched_status_message(status) << " ("
              << osched_last_error() << ")\n";
    return status_to_exit(status);
}

/// Five-policy sweep shared by fig2 (SNR axis) and fig3 (user axis).
int run_figure_sweep(osched_sweep_field field, const std::vector<double>& values,
                     const char* sweep_name, unsigned users, double gbar_linear,
                     std::uint64_t slots, std::uint64_t seed, unsigned parallel,
                     const std::string& out_path) {
    const char* kPolicyNames[] = {"unicast", "multicast", "median-user",
                                  "median-threshold", "optimal-threshold"};
    std::vector<PolicyHandle> handles;
    for (const char* name : kPolicyNames) handles.push_back(make_policy(name));

    std::vector<const osched_policy*> raw;
    for (const auto& handle : handles) raw.push_back(handle.ptr.get());

    std::vector<osched_sim_result> results(raw.size() * values.size());
    const osched_status status = osched_run_sweep(
        raw.data(), raw.size(), field, values.data(), values.size(), users,
        gbar_linear, slots, seed, parallel, results.data());
    if (status != OSCHED_OK) return report_failure(status, "sweep");

    std::vector<CurveRow> rows;
    rows.reserve(results.size());
    for (std::size_t pi = 0; pi < raw.size(); ++pi) {
        for (std::size_t vi = 0; vi < values.size(); ++vi) {
            const auto& r = results[pi * values.size() + vi];
            rows.push_back({sweep_name, values[vi], handles[pi].label, "sim",
                            r.mean_goodput, r.mean_tx_rate, r.se_goodput, r.seed});
        }
    }
    return with_output(out_path, [&rows](std::ostream& os) {
        write_curve_csv(os, std::move(rows));
    });
}

void print_sim_report(const osched_sim_result& sim, const osched_prediction& pred,
                      const std::string& label, unsigned users, double snr_db) {
    std::printf("policy:   %s", label.c_str());
    if (!std::isnan(sim.resolved_p)) std::printf(" (p = %.6f)", sim.resolved_p);
    std::printf("\nsetup:    %u users, %.6g dB average SNR, %" PRIu64
                " slots, seed %" PRIu64 "\n",
                users, snr_db, sim.n_slots, sim.seed);
    std::printf("%-12s %14s %12s %14s\n", "metric", "simulated", "std err", "analytic");
    std::printf("%-12s %14.6f %12.6f %14.6f\n", "tx_rate", sim.mean_tx_rate,
                sim.se_tx_rate, pred.expected_tx_rate);
    std::printf("%-12s %14.6f %12.6f %14.6f\n", "goodput", sim.mean_goodput,
                sim.se_goodput, pred.expected_goodput);
    std::printf("%-12s %14.6f %12.6f\n", "served", sim.mean_served, sim.se_served);
    std::printf("%-12s %14.6f\n", "fallback", sim.fallback_fraction);
    if (!std::isnan(pred.r_th)) {
        std::printf("r_th = %.6f, lower_bound = %.6f\n", pred.r_th, pred.lower_bound);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Downlink scheduler comparison: analytics and Monte Carlo"};
    app.require_subcommand(1);
    app.set_version_flag("--version", []() { return std::string(osched_version()); });

    // Shared option state; each subcommand binds the subset it uses.
    unsigned users = 21;
    double snr_db = 20.0;
    std::string policy_spec = "optimal-threshold";
    std::uint64_t slots = 100000;
    std::uint64_t seed = 42;
    unsigned parallel = 1;
    std::string out_path = "-";
    double p = 0.5;
    double from_db = -30.0, to_db = 50.0, step_db = 1.0;

    auto add_common = [&](CLI::App* cmd, bool with_users, bool with_snr) {
        cmd->add_option("--slots", slots, "Monte Carlo slots per point")
            ->envname("OSCHED_SLOTS")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--seed", seed, "base RNG seed")->envname("OSCHED_SEED");
        cmd->add_option("--parallel", parallel, "worker threads for sweeps")
            ->envname("OSCHED_PARALLEL")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--out", out_path, "output path ('-' for stdout)")
            ->envname("OSCHED_OUT");
        if (with_users) {
            cmd->add_option("--users", users, "number of users")
                ->envname("OSCHED_USERS")
                ->check(CLI::PositiveNumber);
        }
        if (with_snr) {
            cmd->add_option("--snr-db", snr_db, "average SNR in dB")
                ->envname("OSCHED_SNR_DB");
        }
    };

    CLI::App* cmd_run = app.add_subcommand("run", "simulate one policy and report");
    add_common(cmd_run, true, true);
    cmd_run->add_option("--policy", policy_spec,
                        "unicast|multicast|median-user|median-threshold|"
                        "optimal-threshold|threshold:<p>")
        ->envname("OSCHED_POLICY");

    CLI::App* cmd_fig2 = app.add_subcommand(
        "fig2", "goodput vs average SNR (-5..50 dB step 5), all policies, CSV");
    add_common(cmd_fig2, true, false);

    CLI::App* cmd_fig3 = app.add_subcommand(
        "fig3", "goodput vs user count (5..50 step 5), all policies, CSV");
    add_common(cmd_fig3, false, true);

    CLI::App* cmd_opt = app.add_subcommand(
        "optimal-p", "optimal threshold probability over an SNR range, CSV");
    cmd_opt->add_option("--from", from_db, "range start, dB")->envname("OSCHED_FROM");
    cmd_opt->add_option("--to", to_db, "range end, dB")->envname("OSCHED_TO");
    cmd_opt->add_option("--step", step_db, "range step, dB")
        ->envname("OSCHED_STEP")
        ->check(CLI::PositiveNumber);
    cmd_opt->add_option("--out", out_path, "output path ('-' for stdout)")
        ->envname("OSCHED_OUT");

    CLI::App* cmd_validate = app.add_subcommand(
        "validate", "check analytics against simulation (exit 4 on |z| > 4)");
    add_common(cmd_validate, true, true);
    cmd_validate->add_option("--p", p, "threshold probability")
        ->envname("OSCHED_P")
        ->check(CLI::Range(0.0, 1.0));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    const double gbar_linear = osched_db_to_linear(snr_db);

    try {
    if (cmd_run->parsed()) {
        PolicyHandle handle = make_policy(policy_spec);
        osched_sim_result sim{};
        osched_status status = osched_run_sim(handle.ptr.get(), users, gbar_linear,
                                              slots, seed, &sim);
        if (status != OSCHED_OK) return report_failure(status, "run");
        osched_prediction pred{};
        status = osched_predict(handle.ptr.get(), users, gbar_linear, &pred);
        if (status != OSCHED_OK) return report_failure(status, "predict");
        print_sim_report(sim, pred, handle.label, users, snr_db);
        return kExitOk;
    }

    if (cmd_fig2->parsed()) {
        std::vector<double> snrs;
        for (int db = -5; db <= 50; db += 5) snrs.push_back(db);
        return run_figure_sweep(OSCHED_SWEEP_SNR_DB, snrs, "snr_db", users, 1.0,
                                slots, seed, parallel, out_path);
    }

    if (cmd_fig3->parsed()) {
        std::vector<double> counts;
        for (int n = 5; n <= 50; n += 5) counts.push_back(n);
        return run_figure_sweep(OSCHED_SWEEP_USERS, counts, "users", 1, gbar_linear,
                                slots, seed, parallel, out_path);
    }

    if (cmd_opt->parsed()) {
        if (to_db < from_db) {
            std::cerr << "error: --to must be >= --from\n";
            return kExitUsage;
        }
        struct OptRow {
            double db, p_star, r_low;
        };
        std::vector<OptRow> rows;
        for (double db = from_db; db <= to_db + 1e-9; db += step_db) {
            const double lin = osched_db_to_linear(db);
            double p_star = 0.0, r_low = 0.0;
            osched_status status = osched_optimal_p(lin, &p_star);
            if (status != OSCHED_OK) return report_failure(status, "optimal-p");
            status = osched_lower_bound_rate(p_star, lin, &r_low);
            if (status != OSCHED_OK) return report_failure(status, "lower-bound");
            rows.push_back({db, p_star, r_low});
        }
        return with_output(out_path, [&rows](std::ostream& os) {
            os << "snr_db,p_star,r_low\n";
            for (const auto& row : rows) {
                os << format_g6(row.db) << ',' << format_g6(row.p_star) << ','
                   << format_g6(row.r_low) << '\n';
            }
        });
    }

    if (cmd_validate->parsed()) {
        osched_policy* raw = nullptr;
        if (osched_policy_threshold(p, &raw) != OSCHED_OK) {
            std::cerr << "error: " << osched_last_error() << "\n";
            return kExitUsage;
        }
        PolicyHandle handle;
        handle.ptr.reset(raw);
        handle.label = "threshold:" + format_g6(p);

        osched_prediction pred{};
        osched_status status = osched_predict(handle.ptr.get(), users, gbar_linear, &pred);
        if (status != OSCHED_OK) return report_failure(status, "predict");
        osched_sim_result sim{};
        status = osched_run_sim(handle.ptr.get(), users, gbar_linear, slots, seed, &sim);
        if (status != OSCHED_OK) return report_failure(status, "run");

        auto zscore = [](double simulated, double expected, double se) {
            if (se == 0.0) return simulated == expected ? 0.0 : 1e9;
            return (simulated - expected) / se;
        };
        const double z_tx = zscore(sim.mean_tx_rate, pred.expected_tx_rate, sim.se_tx_rate);
        const double z_gp = zscore(sim.mean_goodput, pred.expected_goodput, sim.se_goodput);

        print_sim_report(sim, pred, handle.label, users, snr_db);
        std::printf("z(tx_rate) = %+.3f, z(goodput) = %+.3f\n", z_tx, z_gp);
        if (std::fabs(z_tx) > 4.0 || std::fabs(z_gp) > 4.0) {
            std::printf("VALIDATION FAILED: |z| > 4\n");
            return kExitValidation;
        }
        std::printf("validation ok\n");
        return kExitOk;
    }
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }

    return kExitUsage;
}
