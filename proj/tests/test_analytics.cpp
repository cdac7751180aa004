#include <doctest.h>

#include <cmath>
#include <vector>

#include "osched/analytics.hpp"
#include "support/oracles.hpp"

using namespace osched;

namespace {
const AvgSnr kUnitSnr = AvgSnr::from_linear(1.0);
}

TEST_CASE("lower_bound_rate: values and domain") {
    CHECK(lower_bound_rate(0.0, kUnitSnr) == 0.0);
    CHECK(lower_bound_rate(0.0, AvgSnr::from_linear(44.0)) == 0.0);

    // 0.5 * log2(1 + ln 2) and 0.1 * log2(1 + 10 ln 10).
    CHECK(lower_bound_rate(0.5, kUnitSnr) ==
          doctest::Approx(0.5 * std::log2(1.0 + std::log(2.0))).epsilon(1e-14));
    CHECK(lower_bound_rate(0.5, kUnitSnr) ==
          doctest::Approx(0.37985369406945428).epsilon(1e-12));
    CHECK(lower_bound_rate(0.9, AvgSnr::from_linear(10.0)) ==
          doctest::Approx(0.45865156231045073).epsilon(1e-12));

    CHECK_THROWS_AS(lower_bound_rate(1.0, kUnitSnr), std::invalid_argument);
    CHECK_THROWS_AS(lower_bound_rate(-0.01, kUnitSnr), std::invalid_argument);
}

TEST_CASE("lower_bound_rate is concave in p") {
    for (double g : {0.1, 1.0, 10.0, 100.0}) {
        const AvgSnr gbar = AvgSnr::from_linear(g);
        const double h = 1e-3;
        for (double p = h; p <= 0.998; p += h) {
            const double second_diff = lower_bound_rate(p - h, gbar) -
                                       2.0 * lower_bound_rate(p, gbar) +
                                       lower_bound_rate(p + h, gbar);
            CHECK(second_diff <= 1e-9);
        }
    }
}

TEST_CASE("optimal_p: closed form maximizes the bound") {
    // Exhaustive grid search is the oracle.
    for (double g : {1.0, 100.0, 1e-3}) {
        const AvgSnr gbar = AvgSnr::from_linear(g);
        const double closed = optimal_p(gbar);
        const auto grid = grid_argmax(
            [gbar](double p) { return lower_bound_rate(p, gbar); }, 1e-6,
            1.0 - 1e-6, 1e-6);
        CHECK(std::fabs(closed - grid.first) <= 2e-6);
    }
    CHECK(optimal_p(kUnitSnr) == doctest::Approx(0.53383835827695570).epsilon(1e-10));
    CHECK(optimal_p(AvgSnr::from_linear(100.0)) ==
          doctest::Approx(0.24826092542645613).epsilon(1e-10));
}

TEST_CASE("optimal_p: low-SNR limit and monotone decrease") {
    CHECK(optimal_p(AvgSnr::from_linear(1e-6)) ==
          doctest::Approx(1.0 - 1.0 / std::exp(1.0)).epsilon(1e-6));

    double prev = 1.0;
    for (double exponent = -3.0; exponent <= 5.0; exponent += 0.25) {
        const double p_star = optimal_p(AvgSnr::from_linear(std::pow(10.0, exponent)));
        CHECK(p_star > 0.0);
        CHECK(p_star < 1.0);
        CHECK(p_star < prev);
        prev = p_star;
    }
    // Converges toward multicast as the SNR grows without bound.
    CHECK(optimal_p(AvgSnr::from_linear(1e9)) < 0.06);
}

TEST_CASE("threshold_avg_tx_rate: single user and degenerate p") {
    // One user, no threshold: E[log2(1 + Exp(1))] = e * E1(1) / ln 2.
    const double expected = oracle::expected_log2_1p_exp(1.0);
    CHECK(expected == doctest::Approx(0.86034738227088623).epsilon(1e-10));
    CHECK(threshold_avg_tx_rate(1, 0.0, kUnitSnr) ==
          doctest::Approx(expected).epsilon(1e-9));

    // p = 0 is multicast for any user count.
    for (int n : {1, 2, 5}) {
        CHECK(threshold_avg_tx_rate(n, 0.0, kUnitSnr) ==
              doctest::Approx(multicast_avg_goodput(n, kUnitSnr) / n).epsilon(1e-12));
        CHECK(threshold_avg_goodput(n, 0.0, kUnitSnr) ==
              doctest::Approx(multicast_avg_goodput(n, kUnitSnr)).epsilon(1e-12));
    }

    CHECK(threshold_avg_goodput(1, 0.37, kUnitSnr) ==
          doctest::Approx(threshold_avg_tx_rate(1, 0.37, kUnitSnr)).epsilon(1e-12));

    CHECK_THROWS_AS(threshold_avg_tx_rate(0, 0.5, kUnitSnr), std::invalid_argument);
    CHECK_THROWS_AS(threshold_avg_tx_rate(3, 1.0, kUnitSnr), std::invalid_argument);
}

TEST_CASE("threshold moments agree with the E1 closed form") {
    for (int n : {1, 2, 5, 13, 21}) {
        for (double p : {0.0, 0.1, 0.5, 0.9}) {
            for (double g : {0.31622776601683794, 1.0, 100.0}) {
                const AvgSnr gbar = AvgSnr::from_linear(g);
                const auto reference = oracle::threshold_closed_form(n, p, g);
                const double tx = threshold_avg_tx_rate(n, p, gbar);
                const double goodput = threshold_avg_goodput(n, p, gbar);
                CHECK(tx == doctest::Approx(reference.tx_rate)
                                .epsilon(1e-6));
                CHECK(goodput == doctest::Approx(reference.goodput).epsilon(1e-6));
            }
        }
    }
}

TEST_CASE("threshold moments agree with independent Monte Carlo") {
    const double g = 100.0;
    const auto mc = oracle::mc_policy_stats(oracle::McPolicy::threshold, 21, 0.5, g,
                                            300000, 987654321);
    const double tx = threshold_avg_tx_rate(21, 0.5, AvgSnr::from_linear(g));
    const double goodput = threshold_avg_goodput(21, 0.5, AvgSnr::from_linear(g));
    CHECK(std::fabs(tx - mc.mean_tx) <= 4.0 * mc.se_tx);
    CHECK(std::fabs(goodput - mc.mean_goodput) <= 4.0 * mc.se_goodput);
}

TEST_CASE("threshold rate sits above the guaranteed lower bound") {
    for (int n : {1, 5, 21}) {
        for (double g : {1.0, 10.0, 100.0}) {
            const AvgSnr gbar = AvgSnr::from_linear(g);
            for (double p = 0.1; p <= 0.91; p += 0.1) {
                CHECK(lower_bound_rate(p, gbar) <=
                      threshold_avg_tx_rate(n, p, gbar) + 1e-6);
            }
        }
    }
}

TEST_CASE("threshold rate decreases toward R_th as the user count grows") {
    const AvgSnr gbar = AvgSnr::from_linear(100.0);
    const double p = 0.5;
    const double r_th = shannon_rate(snr_quantile(p, gbar));
    double prev = std::numeric_limits<double>::infinity();
    for (int n : {10, 50, 200, 1000}) {
        const double rate = threshold_avg_tx_rate(n, p, gbar);
        CHECK(rate < prev);
        CHECK(rate >= (1.0 - std::pow(p, n)) * r_th);
        prev = rate;
    }
}

TEST_CASE("unicast_avg_rate") {
    CHECK(unicast_avg_rate(1, kUnitSnr) ==
          doctest::Approx(oracle::expected_log2_1p_exp(1.0)).epsilon(1e-9));
    CHECK(unicast_avg_rate(2, kUnitSnr) ==
          doctest::Approx(1.1994077608258658).epsilon(1e-9));
    for (int n : {1, 2, 5, 13, 21}) {
        for (double g : {0.31622776601683794, 1.0, 100.0}) {
            CHECK(unicast_avg_rate(n, AvgSnr::from_linear(g)) ==
                  doctest::Approx(oracle::unicast_rate_closed_form(n, g)).epsilon(1e-8));
        }
    }
    double prev = 0.0;
    for (int n = 1; n <= 8; ++n) {
        const double rate = unicast_avg_rate(n, kUnitSnr);
        CHECK(rate > prev);
        prev = rate;
    }
}

TEST_CASE("multicast_avg_goodput") {
    CHECK(multicast_avg_goodput(1, kUnitSnr) ==
          doctest::Approx(oracle::expected_log2_1p_exp(1.0)).epsilon(1e-9));
    CHECK(multicast_avg_goodput(2, kUnitSnr) ==
          doctest::Approx(1.0425740074318126).epsilon(1e-9));
    for (int n : {1, 2, 5, 13, 21}) {
        for (double g : {0.31622776601683794, 1.0, 100.0}) {
            CHECK(multicast_avg_goodput(n, AvgSnr::from_linear(g)) ==
                  doctest::Approx(oracle::multicast_goodput_closed_form(n, g))
                      .epsilon(1e-9));
        }
    }
}

TEST_CASE("median_user_avg_goodput") {
    CHECK(median_user_avg_goodput(1, kUnitSnr) ==
          doctest::Approx(oracle::expected_log2_1p_exp(1.0)).epsilon(1e-9));
    // Two users: serve the best one.
    CHECK(median_user_avg_goodput(2, kUnitSnr) ==
          doctest::Approx(unicast_avg_rate(2, kUnitSnr)).epsilon(1e-10));
    for (int n : {1, 2, 5, 13, 21}) {
        for (double g : {1.0, 100.0}) {
            CHECK(median_user_avg_goodput(n, AvgSnr::from_linear(g)) ==
                  doctest::Approx(oracle::median_user_goodput_closed_form(n, g))
                      .epsilon(1e-8));
        }
    }

    const auto mc = oracle::mc_policy_stats(oracle::McPolicy::median_user, 21, 0.0,
                                            100.0, 200000, 55555);
    CHECK(std::fabs(median_user_avg_goodput(21, AvgSnr::from_linear(100.0)) -
                    mc.mean_goodput) <= 4.0 * mc.se_goodput);
}

TEST_CASE("degeneracy chain at a single user") {
    for (double g : {0.5, 1.0, 30.0}) {
        const AvgSnr gbar = AvgSnr::from_linear(g);
        const double unicast = unicast_avg_rate(1, gbar);
        CHECK(multicast_avg_goodput(1, gbar) == doctest::Approx(unicast).epsilon(1e-10));
        CHECK(median_user_avg_goodput(1, gbar) ==
              doctest::Approx(unicast).epsilon(1e-10));
    }
}

TEST_CASE("predict: per-policy consistency") {
    const AvgSnr gbar = AvgSnr::from_linear(3.0);
    const int n = 7;
    for (const Policy& policy :
         {Policy::unicast(), Policy::multicast(), Policy::median_user(),
          Policy::median_threshold(), Policy::optimal_threshold(),
          Policy::threshold(0.9)}) {
        const auto pred = predict(policy, n, gbar);
        CHECK(pred.expected_goodput >= pred.expected_tx_rate - 1e-12);
        if (pred.lower_bound) {
            CHECK(*pred.lower_bound <= pred.expected_tx_rate + 1e-6);
        }
    }

    const auto ots = predict(Policy::optimal_threshold(), n, gbar);
    CHECK(ots.policy.kind() == PolicyKind::threshold);
    CHECK(ots.resolved_p.value() == doctest::Approx(optimal_p(gbar)).epsilon(1e-14));
    CHECK(ots.r_th.value() ==
          doctest::Approx(shannon_rate(snr_quantile(*ots.resolved_p, gbar)))
              .epsilon(1e-12));

    // p = 1 never selects anyone: permanent best-user fallback, i.e. unicast.
    const auto degenerate = predict(Policy::threshold(1.0), n, gbar);
    CHECK(degenerate.expected_tx_rate ==
          doctest::Approx(unicast_avg_rate(n, gbar)).epsilon(1e-12));
    CHECK(degenerate.expected_goodput == doctest::Approx(degenerate.expected_tx_rate));
    CHECK(std::isinf(degenerate.r_th.value()));

    CHECK_THROWS_AS(predict(Policy::unicast(), 0, gbar), std::invalid_argument);
}
