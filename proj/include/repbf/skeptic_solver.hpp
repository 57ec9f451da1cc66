#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "repbf/bayes_factors.hpp"
#include "repbf/stats.hpp"

namespace repbf {

enum class SkepticalStatus { exists, not_attainable };

// Roots of BF_{0:S}(z_o; g) = gamma. g_small is the skeptical relative
// variance, g_jl the Jeffreys-Lindley (vagueness) root.
struct SkepticalSolution {
    double gamma = 0.0;
    double g_small = 0.0;
    double g_jl = 0.0;
    double bf_value = 0.0;    // BF_{S:A} at g_small (when a study is in scope)
    double p_conflict = 0.0;  // realized conflict p-value at g_small
    SkepticalStatus status = SkepticalStatus::not_attainable;
};

enum class MixtureStatus { achieved, fallback_no_conflict, fallback_irreducible, not_attainable };

const char* to_string(MixtureStatus status);

// Conflict-constrained mixture hyperparameters at a given (gamma, alpha).
struct MixtureSolution {
    double gamma = 0.0;
    double alpha_target = 0.0;
    MixtureHyperparams hyperparams;
    double p_realized = 0.0;
    MixtureStatus status = MixtureStatus::not_attainable;
};

// One sample point of the curve U_gamma = {(psi, h): BF_{0:SM} = gamma}.
struct UGammaPoint {
    double h = 0.0;
    double psi = 0.0;
    double p_conflict = 0.0;
};

// Thrown by psi_on_u_gamma when h lies outside [g_small, g_jl]; carries the
// raw (out-of-range) psi value computed by the algebraic inversion.
class OffCurveError : public std::runtime_error {
  public:
    OffCurveError(const std::string& msg, double raw)
        : std::runtime_error(msg), raw_psi(raw) {}
    double raw_psi;
};

// Minimum of BF_{0:S} over g (searched over log g in (1e-8, 1e8]). If
// argmin_g is non-null it receives the minimizer.
double min_attainable_gamma(double z_o, const SolverConfig& cfg, double* argmin_g = nullptr);

// Both roots of BF_{0:S} = gamma, or status=not_attainable when the minimum of
// BF_{0:S} exceeds gamma. Throws std::domain_error for gamma outside (0,1).
SkepticalSolution solve_relative_variance(double z_o, double gamma, const SolverConfig& cfg);

// The unique psi placing (psi, h) on U_gamma:
// psi = (1/gamma - 1/B) / (1 - 1/B) with B = BF_{0:S}(z_o; h).
// Throws OffCurveError when the result falls outside [0,1] (h off the curve).
double psi_on_u_gamma(double z_o, double gamma, double h);

// Conflict-constrained hyperparameters at fixed gamma: the smallest
// h in [g_small, min(g_jl, h_max)] with P(psi_on_u(h), h) = alpha (status
// achieved); when no such crossing exists, hyperparams (0, g_small) with
// status fallback-no-conflict if P_S >= alpha, else fallback-irreducible.
// Throws std::domain_error("gamma not attainable") when gamma is unattainable.
MixtureSolution solve_mixture_hyperparams(double z_o, double gamma, double alpha, double h_max,
                                          const SolverConfig& cfg);

// Skeptical Bayes factor: BF_S = inf{gamma: BF_{S:A}(g_gamma) <= gamma},
// scanned over a log-spaced gamma grid in (gamma_min, 1) and refined by
// bracketed root finding. Returns nullopt when the condition never holds.
std::optional<SkepticalSolution> solve_skeptical_bf(const StudyPair& study,
                                                    const SolverConfig& cfg,
                                                    int gamma_grid = 400);

// Skeptical mixture Bayes factor BF_SM(alpha) = inf{gamma: BF_{SM:A} <= gamma}
// with (psi, h) produced per gamma by solve_mixture_hyperparams. Only gamma
// levels whose per-gamma status is "achieved" enter the condition; if none
// satisfies it, the result falls back to BF_S with hyperparams (0, g_S) and a
// fallback status determined by P_S vs alpha. Returns nullopt when BF_S also
// does not exist.
std::optional<MixtureSolution> solve_skeptical_mixture_bf(const StudyPair& study, double alpha,
                                                          double h_max, const SolverConfig& cfg,
                                                          int gamma_grid = 400);

// n_points samples of U_gamma ordered by h from g_small to g_jl.
// Throws std::domain_error when gamma is not attainable.
std::vector<UGammaPoint> u_gamma_trace(double z_o, double gamma, int n_points,
                                       const SolverConfig& cfg);

}  // namespace repbf
