#include "repbf/conflict.hpp"

#include <stdexcept>

namespace repbf {

double pdc_pvalue(double z_o, const MixtureHyperparams& hp) {
    hp.validate();
    const double z2 = z_o * z_o;
    return hp.psi * chi2_1_sf(z2) + (1.0 - hp.psi) * chi2_1_sf(z2 / (1.0 + hp.h));
}

double pdc_pvalue_skeptical(double z_o, double g) {
    if (!(g > 0.0)) throw std::domain_error("pdc_pvalue_skeptical: g must be positive");
    return chi2_1_sf(z_o * z_o / (1.0 + g));
}

ConflictGrid conflict_grid(double z_o, Bracket h_range, Bracket psi_range, int resolution) {
    h_range.validate();
    psi_range.validate();
    if (!(h_range.lo > 0.0)) throw std::domain_error("conflict_grid: h range must be positive");
    if (psi_range.lo < 0.0 || psi_range.hi > 1.0)
        throw std::domain_error("conflict_grid: psi range must lie within [0,1]");
    if (resolution < 2) throw std::domain_error("conflict_grid: resolution must be >= 2");

    ConflictGrid grid;
    grid.z_o = z_o;
    grid.h_values.reserve(resolution);
    grid.psi_values.reserve(resolution);
    for (int j = 0; j < resolution; ++j) {
        const double t = static_cast<double>(j) / (resolution - 1);
        grid.h_values.push_back(h_range.lo + t * (h_range.hi - h_range.lo));
        grid.psi_values.push_back(psi_range.lo + t * (psi_range.hi - psi_range.lo));
    }
    grid.p_values.assign(resolution, std::vector<double>(resolution, 0.0));
    for (int i = 0; i < resolution; ++i) {
        for (int j = 0; j < resolution; ++j) {
            grid.p_values[i][j] =
                pdc_pvalue(z_o, MixtureHyperparams{grid.psi_values[i], grid.h_values[j]});
        }
    }
    return grid;
}

}  // namespace repbf
