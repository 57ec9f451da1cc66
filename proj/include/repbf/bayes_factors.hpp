#pragma once

#include <string>

namespace repbf {

// Summary statistics of an original/replication study pair. The estimators are
// assumed normal with known standard errors; z = estimate / standard error,
// c = sigma_o^2 / sigma_r^2, d = theta_hat_r / theta_hat_o.
struct StudyPair {
    std::string label;
    double z_o = 0.0;
    double z_r = 0.0;
    double sigma_o = 1.0;
    double sigma_r = 1.0;
    double c = 1.0;
    double d = 0.0;

    // Build from z-statistics and the variance ratio (sigma_r = 1 by
    // convention, sigma_o = sqrt(c)).
    static StudyPair from_z(std::string label, double z_o, double z_r, double c);

    // Build from effect estimates and their standard errors.
    static StudyPair from_effects(std::string label, double theta_o, double sigma_o,
                                  double theta_r, double sigma_r);

    double theta_o() const { return z_o * sigma_o; }
    double theta_r() const { return z_r * sigma_r; }

    // Enforces the redundancy invariants (c consistent with the sigmas,
    // d*z_o*sqrt(c) = z_r, z_o != 0). Throws std::invalid_argument.
    void validate() const;
};

// A point (psi, h) of the skeptical mixture prior family
// psi * delta_0 + (1 - psi) * N(0, h * sigma_o^2).
struct MixtureHyperparams {
    double psi = 0.0;
    double h = 1.0;

    void validate() const;
};

enum class EvidenceLabel { favors_null, anecdotal, moderate, strong, very_strong };

const char* to_string(EvidenceLabel label);

// Discrete evidence-strength bracket containing a Bayes factor value. The
// brackets partition (0, inf): [1, inf) favors-null, (1/3, 1) anecdotal,
// (1/10, 1/3] moderate, (1/30, 1/10] strong, (0, 1/30] very-strong (boundary
// values belong to the stronger class).
struct EvidenceClass {
    EvidenceLabel label = EvidenceLabel::favors_null;
    double lower = 0.0;
    double upper = 0.0;
};

// Replication Bayes factor (H_0 vs advocate prior N(theta_o, sigma_o^2) on the
// replication data): BF_R = sqrt(1+c) * exp{-(z_o^2/2)(d^2 c - (1-d)^2/(1/c+1))}.
double log_bf_replication(const StudyPair& study);
double bf_replication(const StudyPair& study);

// BF of H_0 vs the skeptical prior N(0, g*sigma_o^2) on the original data:
// BF_{0:S}(z_o; g) = sqrt(1+g) * exp{-z_o^2 g / (2(1+g))}.
double log_bf_zero_vs_skeptical(double z_o, double g);
double bf_zero_vs_skeptical(double z_o, double g);

// Skeptic-vs-advocate BF on the replication data:
// BF_{S:A}(g) = sqrt((1/c+1)/(1/c+g)) * exp{-(z_o^2/2)(d^2/(1/c+g) - (d-1)^2/(1/c+1))}.
double log_bf_skeptical_vs_advocate(const StudyPair& study, double g);
double bf_skeptical_vs_advocate(const StudyPair& study, double g);

// BF of H_0 vs the skeptical mixture prior on the original data:
// BF_{0:SM} = 1 / (psi + (1-psi)/BF_{0:S}(z_o; h)).
double bf_zero_vs_mixture(double z_o, const MixtureHyperparams& hp);

// Mixture-vs-advocate BF on the replication data (convex combination):
// BF_{SM:A} = psi * BF_R + (1-psi) * BF_{S:A}(h).
double log_bf_mixture_vs_advocate(const StudyPair& study, const MixtureHyperparams& hp);
double bf_mixture_vs_advocate(const StudyPair& study, const MixtureHyperparams& hp);

// Bracket classification of a Bayes factor. Throws std::domain_error if bf <= 0.
EvidenceClass classify_evidence(double bf);

}  // namespace repbf
