#include "repbf/skeptic_solver.hpp"

#include <algorithm>
#include <cmath>

#include "repbf/conflict.hpp"

namespace repbf {

namespace {

std::vector<double> geomspace(double lo, double hi, int n) {
    std::vector<double> out;
    out.reserve(n);
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < n; ++i) {
        const double t = (n == 1) ? 0.0 : static_cast<double>(i) / (n - 1);
        out.push_back(std::exp(llo + t * (lhi - llo)));
    }
    out.front() = lo;
    out.back() = hi;
    return out;
}

double raw_psi_on_u(double z_o, double gamma, double h) {
    const double inv_b = std::exp(-log_bf_zero_vs_skeptical(z_o, h));
    return (1.0 / gamma - inv_b) / (1.0 - inv_b);
}

constexpr int kMixtureHGrid = 240;

}  // namespace

const char* to_string(MixtureStatus status) {
    switch (status) {
        case MixtureStatus::achieved: return "achieved";
        case MixtureStatus::fallback_no_conflict: return "fallback-no-conflict";
        case MixtureStatus::fallback_irreducible: return "fallback-irreducible";
        case MixtureStatus::not_attainable: return "not-attainable";
    }
    return "?";
}

double min_attainable_gamma(double z_o, const SolverConfig& cfg, double* argmin_g) {
    const auto f = [z_o](double log_g) { return log_bf_zero_vs_skeptical(z_o, std::exp(log_g)); };
    const MinResult res = find_min_scalar(f, Bracket{std::log(1e-8), std::log(1e8)}, cfg);
    if (argmin_g != nullptr) *argmin_g = std::exp(res.argmin);
    return std::exp(res.min_value);
}

SkepticalSolution solve_relative_variance(double z_o, double gamma, const SolverConfig& cfg) {
    if (!(gamma > 0.0 && gamma < 1.0))
        throw std::domain_error("solve_relative_variance: gamma must lie in (0,1)");

    double argmin = 0.0;
    const double gmin = min_attainable_gamma(z_o, cfg, &argmin);

    SkepticalSolution sol;
    sol.gamma = gamma;
    if (gmin > gamma) {
        sol.status = SkepticalStatus::not_attainable;
        return sol;
    }
    const double log_gamma = std::log(gamma);
    const auto f = [&](double g) { return log_bf_zero_vs_skeptical(z_o, g) - log_gamma; };

    sol.g_small = find_root(f, Bracket{1e-14, argmin}, cfg);
    double hi = std::max(argmin, 1.0);
    while (f(hi) < 0.0 && hi < 1e60) hi *= 100.0;
    sol.g_jl = find_root(f, Bracket{argmin, hi}, cfg);
    sol.p_conflict = pdc_pvalue_skeptical(z_o, sol.g_small);
    sol.status = SkepticalStatus::exists;
    return sol;
}

double psi_on_u_gamma(double z_o, double gamma, double h) {
    if (!(gamma > 0.0 && gamma < 1.0))
        throw std::domain_error("psi_on_u_gamma: gamma must lie in (0,1)");
    const double raw = raw_psi_on_u(z_o, gamma, h);
    const double slack = 1e-9;
    if (raw < -slack || raw > 1.0 + slack) {
        throw OffCurveError("psi_on_u_gamma: h is off the U_gamma curve (raw psi = " +
                                std::to_string(raw) + ")",
                            raw);
    }
    return std::clamp(raw, 0.0, 1.0);
}

MixtureSolution solve_mixture_hyperparams(double z_o, double gamma, double alpha, double h_max,
                                          const SolverConfig& cfg) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("solve_mixture_hyperparams: alpha must lie in (0,1)");
    if (!(h_max > 0.0))
        throw std::domain_error("solve_mixture_hyperparams: h_max must be positive");

    const SkepticalSolution roots = solve_relative_variance(z_o, gamma, cfg);
    if (roots.status != SkepticalStatus::exists)
        throw std::domain_error("solve_mixture_hyperparams: gamma not attainable");

    MixtureSolution sol;
    sol.gamma = gamma;
    sol.alpha_target = alpha;

    const double p_skeptical = pdc_pvalue_skeptical(z_o, roots.g_small);
    const auto fallback = [&]() {
        sol.hyperparams = MixtureHyperparams{0.0, roots.g_small};
        sol.p_realized = p_skeptical;
        sol.status = (p_skeptical >= alpha) ? MixtureStatus::fallback_no_conflict
                                            : MixtureStatus::fallback_irreducible;
        return sol;
    };

    const double lo = roots.g_small * (1.0 + 1e-9);
    const double hi = std::min(roots.g_jl, h_max);
    if (!(hi > lo)) return fallback();

    const auto f = [&](double h) {
        const double psi = std::clamp(raw_psi_on_u(z_o, gamma, h), 0.0, 1.0);
        return pdc_pvalue(z_o, MixtureHyperparams{psi, h}) - alpha;
    };

    // Smallest-h crossing of P = alpha along U_gamma.
    const std::vector<double> hs = geomspace(lo, hi, kMixtureHGrid);
    double prev = f(hs.front());
    for (int i = 1; i < static_cast<int>(hs.size()); ++i) {
        const double v = f(hs[i]);
        if (prev * v <= 0.0) {
            const double root = (prev == 0.0) ? hs[i - 1]
                                              : find_root(f, Bracket{hs[i - 1], hs[i]}, cfg);
            const double psi = std::clamp(raw_psi_on_u(z_o, gamma, root), 0.0, 1.0);
            sol.hyperparams = MixtureHyperparams{psi, root};
            sol.p_realized = pdc_pvalue(z_o, sol.hyperparams);
            sol.status = MixtureStatus::achieved;
            return sol;
        }
        prev = v;
    }
    return fallback();
}

std::optional<SkepticalSolution> solve_skeptical_bf(const StudyPair& study,
                                                    const SolverConfig& cfg, int gamma_grid) {
    study.validate();
    if (gamma_grid < 2) throw std::domain_error("solve_skeptical_bf: gamma_grid must be >= 2");

    double argmin = 0.0;
    const double gmin = min_attainable_gamma(study.z_o, cfg, &argmin);
    if (!(gmin < 1.0)) return std::nullopt;  // no gamma in (0,1) is attainable

    // Boundary case: the success condition already holds at the smallest
    // attainable gamma, where the two roots coincide at the minimizer.
    if (bf_skeptical_vs_advocate(study, argmin) <= gmin) {
        SkepticalSolution sol;
        sol.gamma = gmin;
        sol.g_small = argmin;
        sol.g_jl = argmin;
        sol.bf_value = bf_skeptical_vs_advocate(study, argmin);
        sol.p_conflict = pdc_pvalue_skeptical(study.z_o, argmin);
        sol.status = SkepticalStatus::exists;
        return sol;
    }

    const auto cond = [&](double gamma) {
        const SkepticalSolution roots = solve_relative_variance(study.z_o, gamma, cfg);
        return bf_skeptical_vs_advocate(study, roots.g_small) - gamma;
    };

    const std::vector<double> gammas = geomspace(gmin * (1.0 + 1e-9), 1.0 - 1e-7, gamma_grid);
    double prev = cond(gammas.front());
    for (int i = 1; i < static_cast<int>(gammas.size()); ++i) {
        const double v = cond(gammas[i]);
        if (prev > 0.0 && v <= 0.0) {
            const double gamma = find_root(cond, Bracket{gammas[i - 1], gammas[i]}, cfg);
            SkepticalSolution sol = solve_relative_variance(study.z_o, gamma, cfg);
            sol.bf_value = bf_skeptical_vs_advocate(study, sol.g_small);
            return sol;
        }
        prev = v;
    }
    return std::nullopt;
}

std::optional<MixtureSolution> solve_skeptical_mixture_bf(const StudyPair& study, double alpha,
                                                          double h_max, const SolverConfig& cfg,
                                                          int gamma_grid) {
    study.validate();
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("solve_skeptical_mixture_bf: alpha must lie in (0,1)");
    if (gamma_grid < 2)
        throw std::domain_error("solve_skeptical_mixture_bf: gamma_grid must be >= 2");

    double argmin = 0.0;
    const double gmin = min_attainable_gamma(study.z_o, cfg, &argmin);
    if (!(gmin < 1.0)) return std::nullopt;

    const auto hyperparams_at = [&](double gamma) {
        return solve_mixture_hyperparams(study.z_o, gamma, alpha, h_max, cfg);
    };
    // Condition value BF_{SM:A} - gamma, defined only at gamma levels where the
    // conflict constraint P = alpha is achieved on the capped U_gamma curve.
    const auto cond = [&](double gamma) -> std::optional<double> {
        const MixtureSolution mix = hyperparams_at(gamma);
        if (mix.status != MixtureStatus::achieved) return std::nullopt;
        return bf_mixture_vs_advocate(study, mix.hyperparams) - gamma;
    };

    const std::vector<double> gammas = geomspace(gmin * (1.0 + 1e-9), 1.0 - 1e-7, gamma_grid);
    double prev_gamma = 0.0;
    std::optional<double> prev_val;
    bool have_prev = false;
    for (const double gamma : gammas) {
        const std::optional<double> v = cond(gamma);
        if (!v.has_value()) {
            prev_gamma = gamma;
            prev_val = std::nullopt;
            have_prev = true;
            continue;
        }
        if (*v <= 0.0) {
            double gamma_star = gamma;
            if (have_prev && prev_val.has_value() && *prev_val > 0.0) {
                // Between two feasible grid points; an infeasible midpoint is
                // treated as not-yet-satisfied so bracketing stays valid.
                const auto cond_value = [&](double g) { return cond(g).value_or(1.0); };
                gamma_star = find_root(cond_value, Bracket{prev_gamma, gamma}, cfg);
            } else if (have_prev && !prev_val.has_value()) {
                // The condition already holds at the edge of the feasible
                // gamma range: locate the feasibility boundary by bisection.
                double lo = prev_gamma, hi = gamma;
                for (int it = 0; it < 80; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    if (cond(mid).has_value()) {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                gamma_star = hi;
            }
            return hyperparams_at(gamma_star);
        }
        prev_gamma = gamma;
        prev_val = v;
        have_prev = true;
    }

    // No achieved gamma satisfies the condition: fall back to the skeptical BF.
    const std::optional<SkepticalSolution> skeptical = solve_skeptical_bf(study, cfg, gamma_grid);
    if (!skeptical.has_value()) return std::nullopt;
    MixtureSolution sol;
    sol.gamma = skeptical->gamma;
    sol.alpha_target = alpha;
    sol.hyperparams = MixtureHyperparams{0.0, skeptical->g_small};
    sol.p_realized = skeptical->p_conflict;
    sol.status = (skeptical->p_conflict >= alpha) ? MixtureStatus::fallback_no_conflict
                                                  : MixtureStatus::fallback_irreducible;
    return sol;
}

std::vector<UGammaPoint> u_gamma_trace(double z_o, double gamma, int n_points,
                                       const SolverConfig& cfg) {
    if (n_points < 2) throw std::domain_error("u_gamma_trace: n_points must be >= 2");
    const SkepticalSolution roots = solve_relative_variance(z_o, gamma, cfg);
    if (roots.status != SkepticalStatus::exists)
        throw std::domain_error("u_gamma_trace: gamma not attainable");

    std::vector<UGammaPoint> trace;
    trace.reserve(n_points);
    for (const double h : geomspace(roots.g_small, roots.g_jl, n_points)) {
        const double psi = std::clamp(raw_psi_on_u(z_o, gamma, h), 0.0, 1.0);
        trace.push_back(UGammaPoint{h, psi, pdc_pvalue(z_o, MixtureHyperparams{psi, h})});
    }
    return trace;
}

}  // namespace repbf
