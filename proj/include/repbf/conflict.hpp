#pragma once

#include <vector>

#include "repbf/bayes_factors.hpp"
#include "repbf/stats.hpp"

namespace repbf {

// Dense evaluation of the prior-data-conflict p-value over an (h, psi) grid,
// for contour extraction by downstream plotting tools.
struct ConflictGrid {
    std::vector<double> h_values;
    std::vector<double> psi_values;
    // p_values[i][j] = P(z_o; psi_values[i], h_values[j]).
    std::vector<std::vector<double>> p_values;
    double z_o = 0.0;
};

// Prior-data-conflict p-value of the skeptical mixture prior (conditional on
// the ancillary mixture indicator):
// P = psi * (1 - G1(z_o^2)) + (1 - psi) * (1 - G1(z_o^2 / (1 + h))).
double pdc_pvalue(double z_o, const MixtureHyperparams& hp);

// Skeptical-prior special case (psi = 0): 1 - G1(z_o^2 / (1 + g)).
double pdc_pvalue_skeptical(double z_o, double g);

// Evaluate pdc_pvalue on a resolution x resolution grid over the given ranges.
ConflictGrid conflict_grid(double z_o, Bracket h_range, Bracket psi_range, int resolution);

}  // namespace repbf
