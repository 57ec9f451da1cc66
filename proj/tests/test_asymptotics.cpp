#include <doctest.h>

#include <cmath>

#include "repbf/asymptotics.hpp"
#include "repbf/stats.hpp"

using namespace repbf;

namespace {
// Reduced schedule keeps the unit suite fast; the full spec-scale runs live in
// the acceptance suite.
ConsistencyScenario small_scenario(double theta_star) {
    ConsistencyScenario scn;
    scn.theta_star = theta_star;
    scn.n_schedule = {100, 1000, 10000, 100000};
    scn.replications = 200;
    scn.seed = 20240817;
    return scn;
}
}  // namespace

TEST_CASE("scenario validation") {
    ConsistencyScenario bad = small_scenario(0.0);
    bad.n_schedule.clear();
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = small_scenario(0.0);
    bad.replications = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = small_scenario(0.0);
    bad.n_schedule = {100, -5};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("BF_R diverges at sqrt(n) rate under theta_star = 0") {
    const RateReport rep = simulate_bfr_consistency(small_scenario(0.0));
    REQUIRE(rep.mean_log_bf.size() == 4);
    CHECK(rep.fitted_slope > 0.8);
    CHECK(rep.fitted_slope < 1.2);
    for (std::size_t i = 1; i < rep.mean_log_bf.size(); ++i) {
        CHECK(rep.mean_log_bf[i] > rep.mean_log_bf[i - 1]);
    }
}

TEST_CASE("BF_R decays exponentially under theta_star != 0") {
    const RateReport rep = simulate_bfr_consistency(small_scenario(0.3));
    // At small n the replication estimate is still compatible with the
    // original effect, so negativity is asserted in the stabilized tail.
    CHECK(rep.mean_log_bf_over_n[rep.mean_log_bf_over_n.size() - 2] < 0.0);
    CHECK(rep.mean_log_bf_over_n.back() < 0.0);
    // Stabilization: per-n means settle (last two within 10%).
    const double a = rep.mean_log_bf_over_n[rep.mean_log_bf_over_n.size() - 2];
    const double b = rep.mean_log_bf_over_n.back();
    CHECK(std::fabs(a - b) < 0.1 * std::fabs(b));
}

TEST_CASE("BF_SA converges to the density ratio") {
    const StudyPair orig = default_original_study();
    const double g = 1.0;
    for (double theta_star : {0.0, 0.7}) {
        const RateReport rep = simulate_bfsa_limit(small_scenario(theta_star), g);
        const double so2 = orig.sigma_o * orig.sigma_o;
        const double expected = normal_pdf(theta_star, 0.0, g * so2) /
                                normal_pdf(theta_star, orig.theta_o(), so2);
        CHECK(rep.analytic_limit == doctest::Approx(expected).epsilon(1e-12));
        CHECK(std::fabs(rep.empirical_limit - rep.analytic_limit) <=
              3.0 * rep.limit_std_error + 1e-9);
    }
}

TEST_CASE("mixture consistency requires psi > 0") {
    CHECK_THROWS_AS(simulate_mixture_consistency(small_scenario(0.0), {0.0, 1.0}),
                    std::invalid_argument);
}

TEST_CASE("mixture BF diverges under theta_star = 0 and converges otherwise") {
    const RateReport diverge = simulate_mixture_consistency(small_scenario(0.0), {0.5, 1.0});
    CHECK(diverge.fitted_slope > 0.8);
    CHECK(diverge.fitted_slope < 1.2);

    const RateReport converge = simulate_mixture_consistency(small_scenario(0.4), {0.5, 1.0});
    const StudyPair orig = default_original_study();
    const double so2 = orig.sigma_o * orig.sigma_o;
    const double expected =
        0.5 * normal_pdf(0.4, 0.0, so2) / normal_pdf(0.4, orig.theta_o(), so2);
    CHECK(converge.analytic_limit == doctest::Approx(expected).epsilon(1e-12));
    CHECK(std::fabs(converge.empirical_limit - converge.analytic_limit) <=
          3.0 * converge.limit_std_error + 1e-9);
}

TEST_CASE("psi = 1 mixture trace equals the BF_R trace") {
    const ConsistencyScenario scn = small_scenario(0.0);
    const RateReport mixture = simulate_mixture_consistency(scn, {1.0, 1.0});
    const RateReport plain = simulate_bfr_consistency(scn);
    REQUIRE(mixture.mean_log_bf.size() == plain.mean_log_bf.size());
    for (std::size_t i = 0; i < plain.mean_log_bf.size(); ++i) {
        CHECK(mixture.mean_log_bf[i] == doctest::Approx(plain.mean_log_bf[i]).epsilon(1e-12));
    }
}

TEST_CASE("simulations are bit-deterministic in the seed") {
    const RateReport a = simulate_bfr_consistency(small_scenario(0.0));
    const RateReport b = simulate_bfr_consistency(small_scenario(0.0));
    REQUIRE(a.mean_log_bf.size() == b.mean_log_bf.size());
    for (std::size_t i = 0; i < a.mean_log_bf.size(); ++i) {
        CHECK(a.mean_log_bf[i] == b.mean_log_bf[i]);
    }
    ConsistencyScenario other = small_scenario(0.0);
    other.seed = 1;
    const RateReport c = simulate_bfr_consistency(other);
    CHECK(c.mean_log_bf.front() != a.mean_log_bf.front());
}

TEST_CASE("information consistency of BF_R") {
    const StudyPair st = StudyPair::from_z("tmpl", 3.0, 2.0, 1.0);
    const auto trace = check_information_consistency(st, {2.0, 4.0, 8.0, 16.0, 32.0});
    REQUIRE(trace.size() == 5);
    for (std::size_t i = 1; i < trace.size(); ++i) CHECK(trace[i].second < trace[i - 1].second);
    CHECK(trace.back().second < 1e-10);
    // Null-favoring datum at z_r = 0.
    const auto null_trace = check_information_consistency(st, {0.0});
    CHECK(null_trace.front().second > 1.0);
}
