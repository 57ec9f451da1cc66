#pragma once

// Independent numerical oracles used by the unit and acceptance tests.
// Bayes factors are recomputed as ratios of marginal likelihoods obtained by
// Simpson quadrature of density products; the conflict p-value is recomputed
// by component-conditional Monte Carlo. Nothing here calls the closed forms
// under test.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "repbf/bayes_factors.hpp"
#include "repbf/stats.hpp"

namespace oracle {

// integral of N(x; theta, s2) * N(theta; m, v) dtheta by Simpson's rule over
// +-15 posterior standard deviations around the posterior mean. The integrand
// is a Gaussian in theta, so 4000 panels give ~1e-12 relative accuracy.
inline double gaussian_marginal(double x, double s2, double m, double v) {
    const double post_var = 1.0 / (1.0 / s2 + 1.0 / v);
    const double post_mean = post_var * (x / s2 + m / v);
    const double w = std::sqrt(post_var);
    const double lo = post_mean - 15.0 * w;
    const double hi = post_mean + 15.0 * w;
    const int n = 4000;  // even panel count for Simpson
    const double step = (hi - lo) / n;
    auto f = [&](double theta) {
        return std::exp(repbf::log_normal_pdf(x, theta, s2) +
                        repbf::log_normal_pdf(theta, m, v));
    };
    double acc = f(lo) + f(hi);
    for (int i = 1; i < n; ++i) acc += f(lo + i * step) * (i % 2 == 1 ? 4.0 : 2.0);
    return acc * step / 3.0;
}

// Marginal of the replication estimate under H_0: theta = 0.
inline double null_likelihood(double x, double s2) {
    return repbf::normal_pdf(x, 0.0, s2);
}

// BF_R = p(theta_hat_r | H_0) / p(theta_hat_r | advocate N(theta_hat_o, sigma_o^2)).
inline double bf_r(const repbf::StudyPair& st) {
    const double s2 = st.sigma_r * st.sigma_r;
    const double v = st.sigma_o * st.sigma_o;
    return null_likelihood(st.theta_r(), s2) / gaussian_marginal(st.theta_r(), s2, st.theta_o(), v);
}

// BF_{0:S} on the original data with skeptical prior N(0, g sigma_o^2).
inline double bf_0s(double z_o, double g) {
    return null_likelihood(z_o, 1.0) / gaussian_marginal(z_o, 1.0, 0.0, g);
}

// BF_{S:A} on the replication data.
inline double bf_sa(const repbf::StudyPair& st, double g) {
    const double s2 = st.sigma_r * st.sigma_r;
    const double v = st.sigma_o * st.sigma_o;
    return gaussian_marginal(st.theta_r(), s2, 0.0, g * v) /
           gaussian_marginal(st.theta_r(), s2, st.theta_o(), v);
}

// BF_{0:SM} on the original data with the spike-and-slab mixture prior.
inline double bf_0sm(double z_o, const repbf::MixtureHyperparams& hp) {
    const double m = hp.psi * null_likelihood(z_o, 1.0) +
                     (1.0 - hp.psi) * gaussian_marginal(z_o, 1.0, 0.0, hp.h);
    return null_likelihood(z_o, 1.0) / m;
}

// BF_{SM:A} on the replication data.
inline double bf_sma(const repbf::StudyPair& st, const repbf::MixtureHyperparams& hp) {
    const double s2 = st.sigma_r * st.sigma_r;
    const double v = st.sigma_o * st.sigma_o;
    const double m = hp.psi * null_likelihood(st.theta_r(), s2) +
                     (1.0 - hp.psi) * gaussian_marginal(st.theta_r(), s2, 0.0, hp.h * v);
    return m / gaussian_marginal(st.theta_r(), s2, st.theta_o(), v);
}

struct McConflict {
    double p = 0.0;
    double std_error = 0.0;
};

// Component-conditional Monte Carlo estimate of the conflict p-value: for each
// mixture component draw T from its prior predictive and count |T| >= |z_o|;
// the mixture estimate is the psi-weighted combination, with the standard
// error combining the two independent binomial components.
inline McConflict mc_conflict(double z_o, const repbf::MixtureHyperparams& hp,
                              std::int64_t draws, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> norm(0.0, 1.0);
    const double t_obs = std::fabs(z_o);
    std::int64_t hit0 = 0;
    std::int64_t hit1 = 0;
    const double slab_sd = std::sqrt(1.0 + hp.h);
    for (std::int64_t i = 0; i < draws; ++i) {
        if (std::fabs(norm(rng)) >= t_obs) ++hit0;               // spike: T ~ N(0, 1)
        if (std::fabs(slab_sd * norm(rng)) >= t_obs) ++hit1;     // slab: T ~ N(0, 1 + h)
    }
    const double n = static_cast<double>(draws);
    const double p0 = hit0 / n;
    const double p1 = hit1 / n;
    McConflict out;
    out.p = hp.psi * p0 + (1.0 - hp.psi) * p1;
    const double var = hp.psi * hp.psi * p0 * (1.0 - p0) / n +
                       (1.0 - hp.psi) * (1.0 - hp.psi) * p1 * (1.0 - p1) / n;
    out.std_error = std::sqrt(var);
    return out;
}

}  // namespace oracle
