#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "repbf/bayes_factors.hpp"

namespace repbf {

// Monte Carlo scenario: replication estimates are drawn as
// theta_hat_r ~ N(theta_star, sigma_unit^2 / n) for each n in n_schedule.
struct ConsistencyScenario {
    double theta_star = 0.0;
    double sigma_unit = 1.0;
    std::vector<std::int64_t> n_schedule;
    int replications = 500;
    std::uint64_t seed = 0;

    void validate() const;
};

// Empirical rate summary: mean log Bayes factor per schedule entry plus the
// least-squares slope of mean log BF against log sqrt(n). For limit checks the
// empirical mean at the largest n, its Monte Carlo standard error, and the
// analytic limit are recorded as well.
struct RateReport {
    std::vector<double> n_values;
    std::vector<double> mean_log_bf;
    std::vector<double> mean_log_bf_over_n;
    double fitted_slope = 0.0;
    std::string target_description;
    double empirical_limit = 0.0;
    double limit_std_error = 0.0;
    double analytic_limit = 0.0;
};

// Default original study used by the consistency simulations:
// theta_hat_o = 3, sigma_o = 1 (z_o = 3).
StudyPair default_original_study();

// Proposition 1 check: under theta_star = 0, mean log BF_R diverges at rate
// sqrt(n_r) (slope ~ 1 vs log sqrt(n)); under theta_star != 0, mean log BF_R / n_r
// stabilizes below zero.
RateReport simulate_bfr_consistency(const ConsistencyScenario& scn,
                                    const StudyPair& original = default_original_study());

// Proposition 2 check: BF_{S:A} converges in probability to the density ratio
// p_S(theta_star) / p_A(theta_star) regardless of theta_star.
RateReport simulate_bfsa_limit(const ConsistencyScenario& scn, double g,
                               const StudyPair& original = default_original_study());

// Mixture consistency check: with psi > 0 and theta_star = 0, BF_{SM:A}
// diverges like BF_R; with theta_star != 0 it converges to
// (1 - psi) * p_S(theta_star; h) / p_A(theta_star).
RateReport simulate_mixture_consistency(const ConsistencyScenario& scn,
                                        const MixtureHyperparams& hp,
                                        const StudyPair& original = default_original_study());

// Information-consistency check: BF_R along an increasing |z_r| schedule at
// fixed sample sizes; strictly decreasing and -> 0.
std::vector<std::pair<double, double>> check_information_consistency(
    const StudyPair& study_template, const std::vector<double>& z_r_schedule);

}  // namespace repbf
