#include "repbf/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace repbf {

namespace {
constexpr double kHalfLog2Pi = 0.9189385332046727417803297;  // 0.5*log(2*pi)
}

void SolverConfig::validate() const {
    if (!(abs_tol > 0.0)) throw std::invalid_argument("SolverConfig: abs_tol must be > 0");
    if (!(rel_tol >= 0.0)) throw std::invalid_argument("SolverConfig: rel_tol must be >= 0");
    if (max_iter < 1) throw std::invalid_argument("SolverConfig: max_iter must be >= 1");
}

void Bracket::validate() const {
    if (!(lo < hi)) throw std::invalid_argument("Bracket: lo must be < hi");
}

double log_normal_pdf(double x, double mean, double var) {
    if (!(var > 0.0)) throw std::domain_error("normal_pdf: variance must be positive");
    const double z = x - mean;
    return -kHalfLog2Pi - 0.5 * std::log(var) - 0.5 * z * z / var;
}

double normal_pdf(double x, double mean, double var) {
    return std::exp(log_normal_pdf(x, mean, var));
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double chi2_1_sf(double x) {
    if (x < 0.0) throw std::domain_error("chi2_1_sf: argument must be nonnegative");
    return 2.0 * (1.0 - normal_cdf(std::sqrt(x)));
}

double find_root(const std::function<double(double)>& f, Bracket bracket,
                 const SolverConfig& cfg) {
    bracket.validate();
    cfg.validate();

    double a = bracket.lo, b = bracket.hi;
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0)) {
        throw NoRootInBracket("find_root: no root in bracket [" + std::to_string(a) + ", " +
                              std::to_string(b) + "]");
    }

    // Brent's method.
    double c = a, fc = fa;
    double d = b - a, e = d;
    for (int iter = 0; iter < cfg.max_iter; ++iter) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) +
                           0.5 * (cfg.abs_tol + cfg.rel_tol * std::abs(b));
        const double m = 0.5 * (c - b);
        if (std::abs(m) <= tol || fb == 0.0) return b;

        if (std::abs(e) < tol || std::abs(fa) <= std::abs(fb)) {
            d = m;
            e = m;
        } else {
            double p, q;
            const double s = fb / fa;
            if (a == c) {
                // secant
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                // inverse quadratic interpolation
                const double qq = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) {
                q = -q;
            } else {
                p = -p;
            }
            if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol) ? d : (m > 0.0 ? tol : -tol);
        fb = f(b);
        if (fb == 0.0) return b;
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
    }
    throw ConvergenceError("find_root: max_iter exceeded",
                           Bracket{std::min(b, c), std::max(b, c)});
}

MinResult find_min_scalar(const std::function<double(double)>& f, Bracket bracket,
                          const SolverConfig& cfg) {
    bracket.validate();
    cfg.validate();

    // Brent's minimization (golden section with parabolic interpolation).
    constexpr double kGolden = 0.3819660112501051;  // (3 - sqrt(5)) / 2
    double a = bracket.lo, b = bracket.hi;
    double x = a + kGolden * (b - a);
    double w = x, v = x;
    double fx = f(x), fw = fx, fv = fx;
    double d = 0.0, e = 0.0;

    for (int iter = 0; iter < cfg.max_iter; ++iter) {
        const double m = 0.5 * (a + b);
        const double tol = cfg.abs_tol + cfg.rel_tol * std::abs(x);
        const double t2 = 2.0 * tol;
        if (std::abs(x - m) <= t2 - 0.5 * (b - a)) {
            return MinResult{x, fx};
        }
        double p = 0.0, q = 0.0, r = 0.0;
        bool parabolic = false;
        if (std::abs(e) > tol) {
            r = (x - w) * (fx - fv);
            q = (x - v) * (fx - fw);
            p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if (q > 0.0) p = -p;
            q = std::abs(q);
            const double e_prev = e;
            e = d;
            if (std::abs(p) < std::abs(0.5 * q * e_prev) && p > q * (a - x) && p < q * (b - x)) {
                d = p / q;
                double u = x + d;
                if (u - a < t2 || b - u < t2) d = (x < m) ? tol : -tol;
                parabolic = true;
            }
        }
        if (!parabolic) {
            e = (x < m) ? (b - x) : (a - x);
            d = kGolden * e;
        }
        const double u = (std::abs(d) >= tol) ? (x + d) : (x + (d > 0.0 ? tol : -tol));
        const double fu = f(u);
        if (fu <= fx) {
            if (u < x) {
                b = x;
            } else {
                a = x;
            }
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            if (u < x) {
                a = u;
            } else {
                b = u;
            }
            if (fu <= fw || w == x) {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if (fu <= fv || v == x || v == w) {
                v = u;
                fv = fu;
            }
        }
    }
    throw ConvergenceError("find_min_scalar: max_iter exceeded", Bracket{a, b});
}

}  // namespace repbf
