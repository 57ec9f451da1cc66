#pragma once

#include <optional>
#include <string>
#include <vector>

#include "repbf/bayes_factors.hpp"
#include "repbf/skeptic_solver.hpp"

namespace repbf {

struct MixtureAlphaResult {
    double alpha = 0.0;
    bool exists = false;
    MixtureSolution solution;    // meaningful when exists
    EvidenceClass evidence;      // class of BF_SM when exists
};

// Full per-study analysis: replication BF, skeptical BF (with g_S and P_S) and
// the skeptical mixture BF for each requested conflict level alpha.
struct AnalysisReport {
    std::string label;
    double z_o = 0.0, z_r = 0.0, c = 0.0, d = 0.0;
    double bf_r = 0.0;
    EvidenceClass bf_r_evidence;
    bool bf_s_exists = false;
    SkepticalSolution skeptical;  // meaningful when bf_s_exists
    EvidenceClass bf_s_evidence;
    std::vector<MixtureAlphaResult> mixtures;
};

AnalysisReport analyze_study(const StudyPair& study, const std::vector<double>& alphas,
                             double h_max, const SolverConfig& cfg, int gamma_grid = 400);

// Rounded rendering used by the text and csv emitters: values below 0.001
// print as "<0.001", nonexistence as "-".
std::string format_value(double v, int decimals);

// Table-style text output, one section per alpha, one row per study.
std::string render_text(const std::vector<AnalysisReport>& reports);

// One JSON object per study per line; parse_jsonl inverts it exactly.
std::string render_jsonl(const std::vector<AnalysisReport>& reports);
std::vector<AnalysisReport> parse_jsonl(const std::string& text);

// Flat CSV, one row per (study, alpha).
std::string render_csv(const std::vector<AnalysisReport>& reports);

}  // namespace repbf
