#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "repbf/bayes_factors.hpp"

namespace repbf {

enum class StudyMode { correlation, zstat };

// One row of a study table: either correlation-scale summaries (r_o, r_r with
// sample sizes) or z-statistics plus the variance ratio.
struct RawStudyRecord {
    std::string label;
    StudyMode mode = StudyMode::zstat;
    // correlation mode
    double r_o = 0.0;
    double r_r = 0.0;
    long n_o = 0;
    long n_r = 0;
    // zstat mode
    double z_o = 0.0;
    double z_r = 0.0;
    double c = 0.0;
};

class IngestError : public std::runtime_error {
  public:
    explicit IngestError(const std::string& msg) : std::runtime_error(msg) {}
};

struct FisherResult {
    double theta_hat = 0.0;
    double sigma = 0.0;
};

// Fisher z-transformation of a correlation: theta_hat = atanh(r),
// sigma = 1/sqrt(n - 3). Throws std::domain_error for |r| >= 1 or n < 4.
FisherResult fisher_transform(double r, long n);

// Construct a StudyPair from a record. Correlation mode transforms both
// studies via fisher_transform; zstat mode synthesizes sigma_r = 1,
// sigma_o = sqrt(c). Throws IngestError listing the offending fields.
StudyPair build_study(const RawStudyRecord& record);

// Parse a CSV study table (UTF-8, comma-delimited, mandatory header).
// Accepted headers: "label,r_o,r_r,n_o,n_r" (correlation mode) or
// "label,z_o,z_r,c" (zstat mode). Errors carry row/column locations.
std::vector<RawStudyRecord> load_studies(const std::string& path);

}  // namespace repbf
