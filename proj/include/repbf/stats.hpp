#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace repbf {

// Configuration for the 1-D solvers. abs_tol applies to the argument (root or
// minimizer location), rel_tol scales with the magnitude of the argument.
struct SolverConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-12;
    int max_iter = 200;

    void validate() const;
};

struct Bracket {
    double lo = 0.0;
    double hi = 0.0;

    void validate() const;
};

// Thrown when find_root is given a bracket without a sign change.
class NoRootInBracket : public std::runtime_error {
  public:
    explicit NoRootInBracket(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when a solver exhausts max_iter; carries the best bracket found.
class ConvergenceError : public std::runtime_error {
  public:
    ConvergenceError(const std::string& msg, Bracket best)
        : std::runtime_error(msg), best_bracket(best) {}
    Bracket best_bracket;
};

// Gaussian density of N(mean, var) at x. Throws std::domain_error if var <= 0.
double normal_pdf(double x, double mean, double var);

// log of normal_pdf; safe for extreme arguments.
double log_normal_pdf(double x, double mean, double var);

// Standard normal CDF, accurate to <= 1e-12 absolute (erfc based).
double normal_cdf(double x);

// Survival function of the chi-squared distribution with 1 degree of freedom:
// 1 - G1(x) = 2*(1 - Phi(sqrt(x))). Throws std::domain_error for x < 0.
double chi2_1_sf(double x);

// Bracketed root finding (Brent's method: bisection with inverse-quadratic /
// secant acceleration). Requires a sign change over the bracket.
double find_root(const std::function<double(double)>& f, Bracket bracket,
                 const SolverConfig& cfg);

struct MinResult {
    double argmin = 0.0;
    double min_value = 0.0;
};

// Scalar minimization on a bracket (Brent's parabolic/golden-section method).
// Caller guarantees unimodality; otherwise the result is best-effort (a local
// minimum inside the bracket).
MinResult find_min_scalar(const std::function<double(double)>& f, Bracket bracket,
                          const SolverConfig& cfg);

}  // namespace repbf
