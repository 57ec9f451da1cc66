#include "repbf/bayes_factors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace repbf {

StudyPair StudyPair::from_z(std::string label, double z_o, double z_r, double c) {
    if (!(c > 0.0)) throw std::invalid_argument("StudyPair: c must be positive");
    StudyPair s;
    s.label = std::move(label);
    s.z_o = z_o;
    s.z_r = z_r;
    s.c = c;
    s.sigma_r = 1.0;
    s.sigma_o = std::sqrt(c);
    if (z_o == 0.0) throw std::invalid_argument("StudyPair: z_o must be nonzero");
    s.d = z_r / (z_o * std::sqrt(c));
    s.validate();
    return s;
}

StudyPair StudyPair::from_effects(std::string label, double theta_o, double sigma_o,
                                  double theta_r, double sigma_r) {
    if (!(sigma_o > 0.0) || !(sigma_r > 0.0))
        throw std::invalid_argument("StudyPair: standard errors must be positive");
    if (theta_o == 0.0) throw std::invalid_argument("StudyPair: original estimate must be nonzero");
    StudyPair s;
    s.label = std::move(label);
    s.sigma_o = sigma_o;
    s.sigma_r = sigma_r;
    s.z_o = theta_o / sigma_o;
    s.z_r = theta_r / sigma_r;
    s.c = (sigma_o * sigma_o) / (sigma_r * sigma_r);
    s.d = theta_r / theta_o;
    s.validate();
    return s;
}

void StudyPair::validate() const {
    if (!(sigma_o > 0.0) || !(sigma_r > 0.0))
        throw std::invalid_argument("StudyPair: standard errors must be positive");
    if (!(c > 0.0)) throw std::invalid_argument("StudyPair: c must be positive");
    const double c_from_sigmas = (sigma_o * sigma_o) / (sigma_r * sigma_r);
    if (std::abs(c - c_from_sigmas) > 1e-12 * std::max(1.0, std::abs(c)))
        throw std::invalid_argument("StudyPair: c inconsistent with sigma_o/sigma_r");
    if (z_o == 0.0) throw std::invalid_argument("StudyPair: z_o must be nonzero when d is populated");
    if (std::abs(d * z_o * std::sqrt(c) - z_r) > 1e-9 * std::max(1.0, std::abs(z_r)))
        throw std::invalid_argument("StudyPair: d inconsistent with z_r/(z_o*sqrt(c))");
}

void MixtureHyperparams::validate() const {
    if (!(psi >= 0.0 && psi <= 1.0))
        throw std::invalid_argument("MixtureHyperparams: psi must lie in [0,1]");
    if (!(h > 0.0)) throw std::invalid_argument("MixtureHyperparams: h must be positive");
}

const char* to_string(EvidenceLabel label) {
    switch (label) {
        case EvidenceLabel::favors_null: return "favors-null";
        case EvidenceLabel::anecdotal: return "anecdotal";
        case EvidenceLabel::moderate: return "moderate";
        case EvidenceLabel::strong: return "strong";
        case EvidenceLabel::very_strong: return "very-strong";
    }
    return "?";
}

double log_bf_replication(const StudyPair& study) {
    const double z2 = study.z_o * study.z_o;
    const double inv_c = 1.0 / study.c;
    const double one_minus_d = 1.0 - study.d;
    return 0.5 * std::log1p(study.c) -
           0.5 * z2 * (study.d * study.d * study.c - one_minus_d * one_minus_d / (inv_c + 1.0));
}

double bf_replication(const StudyPair& study) { return std::exp(log_bf_replication(study)); }

double log_bf_zero_vs_skeptical(double z_o, double g) {
    if (!(g > 0.0)) throw std::domain_error("bf_zero_vs_skeptical: g must be positive");
    return 0.5 * std::log1p(g) - 0.5 * z_o * z_o * g / (1.0 + g);
}

double bf_zero_vs_skeptical(double z_o, double g) {
    return std::exp(log_bf_zero_vs_skeptical(z_o, g));
}

double log_bf_skeptical_vs_advocate(const StudyPair& study, double g) {
    if (!(g > 0.0)) throw std::domain_error("bf_skeptical_vs_advocate: g must be positive");
    const double inv_c = 1.0 / study.c;
    const double z2 = study.z_o * study.z_o;
    const double dm1 = study.d - 1.0;
    return 0.5 * (std::log(inv_c + 1.0) - std::log(inv_c + g)) -
           0.5 * z2 * (study.d * study.d / (inv_c + g) - dm1 * dm1 / (inv_c + 1.0));
}

double bf_skeptical_vs_advocate(const StudyPair& study, double g) {
    return std::exp(log_bf_skeptical_vs_advocate(study, g));
}

double bf_zero_vs_mixture(double z_o, const MixtureHyperparams& hp) {
    hp.validate();
    // 1 / (psi + (1-psi) * exp(-log BF_{0:S}))
    const double log_b = log_bf_zero_vs_skeptical(z_o, hp.h);
    return 1.0 / (hp.psi + (1.0 - hp.psi) * std::exp(-log_b));
}

double log_bf_mixture_vs_advocate(const StudyPair& study, const MixtureHyperparams& hp) {
    hp.validate();
    if (hp.psi == 0.0) return log_bf_skeptical_vs_advocate(study, hp.h);
    if (hp.psi == 1.0) return log_bf_replication(study);
    // log(psi*exp(lr) + (1-psi)*exp(ls)) via log-sum-exp.
    const double lr = std::log(hp.psi) + log_bf_replication(study);
    const double ls = std::log1p(-hp.psi) + log_bf_skeptical_vs_advocate(study, hp.h);
    const double m = std::max(lr, ls);
    return m + std::log(std::exp(lr - m) + std::exp(ls - m));
}

double bf_mixture_vs_advocate(const StudyPair& study, const MixtureHyperparams& hp) {
    hp.validate();
    if (hp.psi == 0.0) return bf_skeptical_vs_advocate(study, hp.h);
    if (hp.psi == 1.0) return bf_replication(study);
    return std::exp(log_bf_mixture_vs_advocate(study, hp));
}

EvidenceClass classify_evidence(double bf) {
    if (!(bf > 0.0)) throw std::domain_error("classify_evidence: bf must be positive");
    constexpr double kInf = 1e308;
    if (bf >= 1.0) return {EvidenceLabel::favors_null, 1.0, kInf};
    if (bf > 1.0 / 3.0) return {EvidenceLabel::anecdotal, 1.0 / 3.0, 1.0};
    if (bf > 1.0 / 10.0) return {EvidenceLabel::moderate, 1.0 / 10.0, 1.0 / 3.0};
    if (bf > 1.0 / 30.0) return {EvidenceLabel::strong, 1.0 / 30.0, 1.0 / 10.0};
    return {EvidenceLabel::very_strong, 0.0, 1.0 / 30.0};
}

}  // namespace repbf
