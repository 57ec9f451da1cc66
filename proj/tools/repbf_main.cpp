#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "repbf/asymptotics.hpp"
#include "repbf/bayes_factors.hpp"
#include "repbf/conflict.hpp"
#include "repbf/ingest.hpp"
#include "repbf/report.hpp"
#include "repbf/skeptic_solver.hpp"
#include "repbf/stats.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitSolverError = 2;

std::string fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

std::string compact(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw repbf::IngestError("cannot open output file: " + path);
    out << content;
}

struct CommonOpts {
    std::vector<double> alphas{0.1};
    double h_max = 120.0;
    int gamma_grid = 400;
    double tol = 1e-10;
    std::string format = "text";
    std::string output;
    std::uint64_t seed = 0;

    repbf::SolverConfig config() const {
        repbf::SolverConfig cfg;
        cfg.abs_tol = tol;
        return cfg;
    }
};

void add_common_flags(CLI::App* cmd, CommonOpts* opts, bool with_alpha = true) {
    if (with_alpha) {
        cmd->add_option("--alpha", opts->alphas, "Conflict level(s) alpha, repeatable")
            ->check(CLI::Range(1e-12, 1.0 - 1e-12));
    }
    cmd->add_option("--h-max", opts->h_max, "Cap on the mixture relative variance h");
    cmd->add_option("--gamma-grid", opts->gamma_grid, "Points in the log-spaced gamma scan");
    cmd->add_option("--tol", opts->tol, "Absolute solver tolerance");
    cmd->add_option("--seed", opts->seed, "Random seed (simulation runs)");
    cmd->add_option("--format", opts->format, "Output format")
        ->check(CLI::IsMember({"text", "jsonl", "csv"}));
    cmd->add_option("--output", opts->output, "Output file (default stdout)");
}

int run_analyze(const std::string& input, const std::string& label, double z_o, double z_r,
                double c, bool inline_study, const CommonOpts& opts) {
    std::vector<repbf::StudyPair> studies;
    if (inline_study) {
        studies.push_back(repbf::StudyPair::from_z(label.empty() ? "study" : label, z_o, z_r, c));
    } else {
        for (const auto& rec : repbf::load_studies(input)) {
            studies.push_back(repbf::build_study(rec));
        }
    }
    std::vector<repbf::AnalysisReport> reports;
    for (const auto& s : studies) {
        reports.push_back(
            repbf::analyze_study(s, opts.alphas, opts.h_max, opts.config(), opts.gamma_grid));
    }
    std::string rendered;
    if (opts.format == "text") {
        rendered = repbf::render_text(reports);
    } else if (opts.format == "jsonl") {
        rendered = repbf::render_jsonl(reports);
    } else {
        rendered = repbf::render_csv(reports);
    }
    write_output(opts.output, rendered);
    return kExitOk;
}

int run_curves(double z_o, double z_r, double c, double g_lo, double g_hi, int points,
               const CommonOpts& opts) {
    const repbf::StudyPair study = repbf::StudyPair::from_z("study", z_o, z_r, c);
    const double alpha = opts.alphas.front();
    const double bf_r = repbf::bf_replication(study);
    const double sf_z2 = repbf::chi2_1_sf(z_o * z_o);

    std::ostringstream out;
    out << "g,bf_0s,bf_sa,bf_r,psi_alpha,bf_0sm,bf_sm_a\n";
    for (int i = 0; i < points; ++i) {
        const double t = (points == 1) ? 0.0 : static_cast<double>(i) / (points - 1);
        const double g = g_lo * std::pow(g_hi / g_lo, t);
        out << compact(g) << ',' << compact(repbf::bf_zero_vs_skeptical(z_o, g)) << ','
            << compact(repbf::bf_skeptical_vs_advocate(study, g)) << ',' << compact(bf_r) << ',';
        // psi making the mixture prior at this h realize conflict p-value alpha
        const double sf_h = repbf::chi2_1_sf(z_o * z_o / (1.0 + g));
        const double denom = sf_h - sf_z2;
        const double psi = (denom != 0.0) ? (sf_h - alpha) / denom : -1.0;
        if (psi >= 0.0 && psi <= 1.0) {
            const repbf::MixtureHyperparams hp{psi, g};
            out << compact(psi) << ',' << compact(repbf::bf_zero_vs_mixture(z_o, hp)) << ','
                << compact(repbf::bf_mixture_vs_advocate(study, hp));
        } else {
            out << ",,";  // gap: no conflict-consistent mixture at this h
        }
        out << "\n";
    }
    write_output(opts.output, out.str());
    return kExitOk;
}

int run_contours(double z_o, double gamma, double h_lo, double h_hi, double psi_lo, double psi_hi,
                 int resolution, int trace_points, const std::string& out_prefix,
                 const CommonOpts& opts) {
    const repbf::ConflictGrid grid = repbf::conflict_grid(
        z_o, repbf::Bracket{h_lo, h_hi}, repbf::Bracket{psi_lo, psi_hi}, resolution);
    std::ostringstream grid_out;
    grid_out << "psi\\h";
    for (const double h : grid.h_values) grid_out << ',' << compact(h);
    grid_out << "\n";
    for (std::size_t i = 0; i < grid.psi_values.size(); ++i) {
        grid_out << compact(grid.psi_values[i]);
        for (const double p : grid.p_values[i]) grid_out << ',' << compact(p);
        grid_out << "\n";
    }
    write_output(out_prefix + "_grid.csv", grid_out.str());

    std::ostringstream trace_out;
    trace_out << "h,psi,p_conflict\n";
    try {
        for (const auto& pt : repbf::u_gamma_trace(z_o, gamma, trace_points, opts.config())) {
            trace_out << compact(pt.h) << ',' << compact(pt.psi) << ',' << compact(pt.p_conflict)
                      << "\n";
        }
    } catch (const std::domain_error&) {
        trace_out << "# status: gamma not attainable\n";
    }
    write_output(out_prefix + "_ugamma.csv", trace_out.str());
    return kExitOk;
}

int run_bf_vs_alpha(double z_o, double z_r, double c, double alpha_lo, double alpha_hi, int points,
                    const CommonOpts& opts) {
    const repbf::StudyPair study = repbf::StudyPair::from_z("study", z_o, z_r, c);
    const std::optional<repbf::SkepticalSolution> sk =
        repbf::solve_skeptical_bf(study, opts.config(), opts.gamma_grid);
    std::ostringstream out;
    out << "alpha,bf_sm,status,psi,h,p_realized,bf_s\n";
    for (int i = 0; i < points; ++i) {
        const double t = (points == 1) ? 0.0 : static_cast<double>(i) / (points - 1);
        const double alpha = alpha_lo + t * (alpha_hi - alpha_lo);
        const std::optional<repbf::MixtureSolution> sm = repbf::solve_skeptical_mixture_bf(
            study, alpha, opts.h_max, opts.config(), opts.gamma_grid);
        out << compact(alpha) << ',';
        if (sm.has_value()) {
            out << compact(sm->gamma) << ',' << repbf::to_string(sm->status) << ','
                << compact(sm->hyperparams.psi) << ',' << compact(sm->hyperparams.h) << ','
                << compact(sm->p_realized) << ',';
        } else {
            out << ",nonexistent,,,,";
        }
        out << (sk.has_value() ? compact(sk->gamma) : "") << "\n";
    }
    write_output(opts.output, out.str());
    return kExitOk;
}

std::string render_rate_report(const repbf::RateReport& rep) {
    std::ostringstream out;
    out << "# " << rep.target_description << "\n";
    out << "n,mean_log_bf,mean_log_bf_over_n\n";
    for (std::size_t i = 0; i < rep.n_values.size(); ++i) {
        out << compact(rep.n_values[i]) << ',' << compact(rep.mean_log_bf[i]) << ','
            << compact(rep.mean_log_bf_over_n[i]) << "\n";
    }
    out << "fitted_slope," << compact(rep.fitted_slope) << "\n";
    out << "empirical_limit," << compact(rep.empirical_limit) << "\n";
    out << "limit_std_error," << compact(rep.limit_std_error) << "\n";
    out << "analytic_limit," << compact(rep.analytic_limit) << "\n";
    return out.str();
}

int run_simulate(const std::string& scenario_path, const CommonOpts& opts) {
    std::ifstream in(scenario_path);
    if (!in) throw repbf::IngestError("cannot open scenario file: " + scenario_path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw repbf::IngestError("invalid scenario JSON: " + std::string(e.what()));
    }
    const std::string kind = j.value("kind", "");

    if (kind == "information-consistency") {
        const double z_o = j.at("z_o").get<double>();
        const double c = j.at("c").get<double>();
        const std::vector<double> schedule = j.at("z_r_schedule").get<std::vector<double>>();
        const repbf::StudyPair tmpl =
            repbf::StudyPair::from_z("template", z_o, schedule.front(), c);
        std::ostringstream out;
        out << "z_r,bf_r\n";
        for (const auto& [z_r, bf] : repbf::check_information_consistency(tmpl, schedule)) {
            out << compact(z_r) << ',' << compact(bf) << "\n";
        }
        write_output(opts.output, out.str());
        return kExitOk;
    }

    repbf::ConsistencyScenario scn;
    scn.theta_star = j.value("theta_star", 0.0);
    scn.sigma_unit = j.value("sigma", 1.0);
    scn.n_schedule = j.at("n_schedule").get<std::vector<std::int64_t>>();
    scn.replications = j.value("replications", 500);
    scn.seed = j.contains("seed") ? j.at("seed").get<std::uint64_t>() : opts.seed;

    repbf::StudyPair original = repbf::default_original_study();
    if (j.contains("original")) {
        const double theta_o = j.at("original").at("theta_o").get<double>();
        const double sigma_o = j.at("original").at("sigma_o").get<double>();
        original = repbf::StudyPair::from_effects("original", theta_o, sigma_o, theta_o, sigma_o);
    }

    repbf::RateReport rep;
    if (kind == "bfr-consistency") {
        rep = repbf::simulate_bfr_consistency(scn, original);
    } else if (kind == "bfsa-limit") {
        rep = repbf::simulate_bfsa_limit(scn, j.at("g").get<double>(), original);
    } else if (kind == "mixture-consistency") {
        const repbf::MixtureHyperparams hp{j.at("psi").get<double>(), j.at("h").get<double>()};
        rep = repbf::simulate_mixture_consistency(scn, hp, original);
    } else {
        throw repbf::IngestError("scenario field 'kind' must be one of bfr-consistency, "
                                 "bfsa-limit, mixture-consistency, information-consistency");
    }
    write_output(opts.output, render_rate_report(rep));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Replication-analysis engine: replication, skeptical and skeptical-mixture "
                 "Bayes factors with prior-data-conflict control"};
    app.require_subcommand(1);

    CommonOpts opts;

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Per-study Bayes factor analysis");
    std::string input, label;
    double z_o = 0.0, z_r = 0.0, c = 1.0;
    auto* input_opt = analyze->add_option("--input", input, "CSV study table");
    auto* zo_opt = analyze->add_option("--zo", z_o, "Original z-value (inline study)");
    analyze->add_option("--zr", z_r, "Replication z-value (inline study)");
    analyze->add_option("--c", c, "Variance ratio sigma_o^2/sigma_r^2 (inline study)");
    analyze->add_option("--label", label, "Label for the inline study");
    add_common_flags(analyze, &opts);

    // curves
    auto* curves = app.add_subcommand("curves", "Bayes factor curves over the relative variance");
    double g_lo = 0.01, g_hi = 20.0;
    int points = 200;
    curves->add_option("--zo", z_o, "Original z-value")->required();
    curves->add_option("--zr", z_r, "Replication z-value")->required();
    curves->add_option("--c", c, "Variance ratio");
    curves->add_option("--g-lo", g_lo, "Lower end of the variance grid");
    curves->add_option("--g-hi", g_hi, "Upper end of the variance grid");
    curves->add_option("--points", points, "Grid points");
    add_common_flags(curves, &opts);

    // contours
    auto* contours = app.add_subcommand("contours", "Conflict p-value grid and U_gamma trace");
    double gamma = 0.1, h_lo = 1e-3, h_hi = 20.0, psi_lo = 0.0, psi_hi = 1.0;
    int resolution = 200, trace_points = 200;
    std::string out_prefix;
    contours->add_option("--zo", z_o, "Original z-value")->required();
    contours->add_option("--gamma", gamma, "Skepticism level gamma")->required();
    contours->add_option("--h-lo", h_lo, "Lower end of the h range");
    contours->add_option("--h-hi", h_hi, "Upper end of the h range");
    contours->add_option("--psi-lo", psi_lo, "Lower end of the psi range");
    contours->add_option("--psi-hi", psi_hi, "Upper end of the psi range");
    contours->add_option("--resolution", resolution, "Grid resolution per axis");
    contours->add_option("--trace-points", trace_points, "Points on the U_gamma trace");
    contours->add_option("--out-prefix", out_prefix, "Prefix for the two output files")
        ->required();
    add_common_flags(contours, &opts);

    // bf-vs-alpha
    auto* bfva = app.add_subcommand("bf-vs-alpha", "BF_SM as a function of alpha");
    double alpha_lo = 0.01, alpha_hi = 0.99;
    int alpha_points = 20;
    bfva->add_option("--zo", z_o, "Original z-value")->required();
    bfva->add_option("--zr", z_r, "Replication z-value")->required();
    bfva->add_option("--c", c, "Variance ratio");
    bfva->add_option("--alpha-lo", alpha_lo, "Lower end of the alpha grid");
    bfva->add_option("--alpha-hi", alpha_hi, "Upper end of the alpha grid");
    bfva->add_option("--points", alpha_points, "Alpha grid points");
    add_common_flags(bfva, &opts, /*with_alpha=*/false);

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo consistency runs");
    std::string scenario;
    simulate->add_option("--scenario", scenario, "Scenario JSON file")->required();
    add_common_flags(simulate, &opts, /*with_alpha=*/false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) {
            const bool inline_study = zo_opt->count() > 0;
            if (!inline_study && input_opt->count() == 0) {
                std::cerr << "analyze: provide --input or an inline study via --zo/--zr/--c\n";
                return kExitInputError;
            }
            return run_analyze(input, label, z_o, z_r, c, inline_study, opts);
        }
        if (curves->parsed()) return run_curves(z_o, z_r, c, g_lo, g_hi, points, opts);
        if (contours->parsed()) {
            return run_contours(z_o, gamma, h_lo, h_hi, psi_lo, psi_hi, resolution, trace_points,
                                out_prefix, opts);
        }
        if (bfva->parsed()) {
            return run_bf_vs_alpha(z_o, z_r, c, alpha_lo, alpha_hi, alpha_points, opts);
        }
        if (simulate->parsed()) return run_simulate(scenario, opts);
    } catch (const repbf::ConvergenceError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitSolverError;
    } catch (const repbf::NoRootInBracket& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitSolverError;
    } catch (const repbf::IngestError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitOk;
}
