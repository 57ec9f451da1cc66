#include "repbf/report.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace repbf {

namespace {

std::string fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

std::string pad(const std::string& s, int width) {
    if (static_cast<int>(s.size()) >= width) return s;
    return std::string(width - s.size(), ' ') + s;
}

MixtureStatus status_from_string(const std::string& s) {
    if (s == "achieved") return MixtureStatus::achieved;
    if (s == "fallback-no-conflict") return MixtureStatus::fallback_no_conflict;
    if (s == "fallback-irreducible") return MixtureStatus::fallback_irreducible;
    return MixtureStatus::not_attainable;
}

}  // namespace

std::string format_value(double v, int decimals) {
    if (v < 0.001 && v >= 0.0) return "<0.001";
    return fixed(v, decimals);
}

AnalysisReport analyze_study(const StudyPair& study, const std::vector<double>& alphas,
                             double h_max, const SolverConfig& cfg, int gamma_grid) {
    AnalysisReport rep;
    rep.label = study.label;
    rep.z_o = study.z_o;
    rep.z_r = study.z_r;
    rep.c = study.c;
    rep.d = study.d;
    rep.bf_r = bf_replication(study);
    rep.bf_r_evidence = classify_evidence(rep.bf_r);

    const std::optional<SkepticalSolution> sk = solve_skeptical_bf(study, cfg, gamma_grid);
    rep.bf_s_exists = sk.has_value();
    if (sk.has_value()) {
        rep.skeptical = *sk;
        rep.bf_s_evidence = classify_evidence(sk->gamma);
    }
    for (const double alpha : alphas) {
        MixtureAlphaResult res;
        res.alpha = alpha;
        const std::optional<MixtureSolution> sm =
            solve_skeptical_mixture_bf(study, alpha, h_max, cfg, gamma_grid);
        res.exists = sm.has_value();
        if (sm.has_value()) {
            res.solution = *sm;
            res.evidence = classify_evidence(sm->gamma);
        }
        rep.mixtures.push_back(res);
    }
    return rep;
}

std::string render_text(const std::vector<AnalysisReport>& reports) {
    std::ostringstream out;
    std::vector<double> alphas;
    if (!reports.empty()) {
        for (const auto& m : reports.front().mixtures) alphas.push_back(m.alpha);
    }
    for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
        out << "== alpha = " << fixed(alphas[ai], 3) << " ==\n";
        out << "study         z_o    z_r      c      d     g_S     P_S  psi_SM    h_SM"
               "    BF_S    BF_R   BF_SM    P_SM  status                evidence(BF_SM)\n";
        for (const auto& r : reports) {
            std::string label = r.label;
            if (label.size() > 12) label = label.substr(0, 12);
            out << label << std::string(13 - label.size(), ' ');
            out << pad(fixed(r.z_o, 2), 5) << pad(fixed(r.z_r, 2), 7) << pad(fixed(r.c, 2), 7)
                << pad(fixed(r.d, 2), 7);
            if (r.bf_s_exists) {
                out << pad(fixed(r.skeptical.g_small, 2), 8)
                    << pad(format_value(r.skeptical.p_conflict, 3), 8);
            } else {
                out << pad("-", 8) << pad("-", 8);
            }
            const MixtureAlphaResult& m = r.mixtures[ai];
            if (m.exists) {
                out << pad(format_value(m.solution.hyperparams.psi, 3), 8)
                    << pad(fixed(m.solution.hyperparams.h, 2), 8);
            } else {
                out << pad("-", 8) << pad("-", 8);
            }
            out << pad(r.bf_s_exists ? format_value(r.skeptical.gamma, 3) : "-", 8);
            out << pad(format_value(r.bf_r, 3), 8);
            if (m.exists) {
                out << pad(format_value(m.solution.gamma, 3), 8)
                    << pad(format_value(m.solution.p_realized, 3), 8);
            } else {
                out << pad("-", 8) << pad("-", 8);
            }
            const std::string status = m.exists ? to_string(m.solution.status) : "nonexistent";
            out << "  " << status
                << std::string(status.size() < 22 ? 22 - status.size() : 1, ' ')
                << (m.exists ? to_string(m.evidence.label) : "-") << "\n";
        }
        out << "\n";
    }
    return out.str();
}

std::string render_jsonl(const std::vector<AnalysisReport>& reports) {
    std::ostringstream out;
    for (const auto& r : reports) {
        nlohmann::json j;
        j["label"] = r.label;
        j["z_o"] = r.z_o;
        j["z_r"] = r.z_r;
        j["c"] = r.c;
        j["d"] = r.d;
        j["bf_r"] = r.bf_r;
        j["bf_r_class"] = to_string(r.bf_r_evidence.label);
        if (r.bf_s_exists) {
            j["bf_s"] = r.skeptical.gamma;
            j["g_s"] = r.skeptical.g_small;
            j["g_jl"] = r.skeptical.g_jl;
            j["p_s"] = r.skeptical.p_conflict;
            j["bf_s_class"] = to_string(r.bf_s_evidence.label);
        } else {
            j["bf_s"] = nullptr;
        }
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& m : r.mixtures) {
            nlohmann::json e;
            e["alpha"] = m.alpha;
            if (m.exists) {
                e["bf_sm"] = m.solution.gamma;
                e["psi"] = m.solution.hyperparams.psi;
                e["h"] = m.solution.hyperparams.h;
                e["p_realized"] = m.solution.p_realized;
                e["status"] = to_string(m.solution.status);
                e["bf_sm_class"] = to_string(m.evidence.label);
            } else {
                e["bf_sm"] = nullptr;
                e["status"] = "nonexistent";
            }
            arr.push_back(e);
        }
        j["mixtures"] = arr;
        out << j.dump() << "\n";
    }
    return out.str();
}

std::vector<AnalysisReport> parse_jsonl(const std::string& text) {
    std::vector<AnalysisReport> reports;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const nlohmann::json j = nlohmann::json::parse(line);
        AnalysisReport r;
        r.label = j.at("label").get<std::string>();
        r.z_o = j.at("z_o").get<double>();
        r.z_r = j.at("z_r").get<double>();
        r.c = j.at("c").get<double>();
        r.d = j.at("d").get<double>();
        r.bf_r = j.at("bf_r").get<double>();
        r.bf_r_evidence = classify_evidence(r.bf_r);
        r.bf_s_exists = !j.at("bf_s").is_null();
        if (r.bf_s_exists) {
            r.skeptical.gamma = j.at("bf_s").get<double>();
            r.skeptical.g_small = j.at("g_s").get<double>();
            r.skeptical.g_jl = j.at("g_jl").get<double>();
            r.skeptical.p_conflict = j.at("p_s").get<double>();
            r.skeptical.status = SkepticalStatus::exists;
            r.bf_s_evidence = classify_evidence(r.skeptical.gamma);
        }
        for (const auto& e : j.at("mixtures")) {
            MixtureAlphaResult m;
            m.alpha = e.at("alpha").get<double>();
            m.exists = !e.at("bf_sm").is_null();
            if (m.exists) {
                m.solution.gamma = e.at("bf_sm").get<double>();
                m.solution.alpha_target = m.alpha;
                m.solution.hyperparams.psi = e.at("psi").get<double>();
                m.solution.hyperparams.h = e.at("h").get<double>();
                m.solution.p_realized = e.at("p_realized").get<double>();
                m.solution.status = status_from_string(e.at("status").get<std::string>());
                m.evidence = classify_evidence(m.solution.gamma);
            }
            r.mixtures.push_back(m);
        }
        reports.push_back(std::move(r));
    }
    return reports;
}

std::string render_csv(const std::vector<AnalysisReport>& reports) {
    std::ostringstream out;
    out << "label,alpha,z_o,z_r,c,d,bf_r,bf_s,g_s,p_s,bf_sm,psi,h,p_realized,status,"
           "bf_r_class,bf_s_class,bf_sm_class\n";
    for (const auto& r : reports) {
        for (const auto& m : r.mixtures) {
            out << r.label << ',' << fixed(m.alpha, 6) << ',' << fixed(r.z_o, 6) << ','
                << fixed(r.z_r, 6) << ',' << fixed(r.c, 6) << ',' << fixed(r.d, 6) << ','
                << fixed(r.bf_r, 6) << ',';
            if (r.bf_s_exists) {
                out << fixed(r.skeptical.gamma, 6) << ',' << fixed(r.skeptical.g_small, 6) << ','
                    << fixed(r.skeptical.p_conflict, 6) << ',';
            } else {
                out << ",,,";
            }
            if (m.exists) {
                out << fixed(m.solution.gamma, 6) << ',' << fixed(m.solution.hyperparams.psi, 6)
                    << ',' << fixed(m.solution.hyperparams.h, 6) << ','
                    << fixed(m.solution.p_realized, 6) << ',' << to_string(m.solution.status)
                    << ',';
            } else {
                out << ",,,,nonexistent,";
            }
            out << to_string(r.bf_r_evidence.label) << ','
                << (r.bf_s_exists ? to_string(r.bf_s_evidence.label) : "") << ','
                << (m.exists ? to_string(m.evidence.label) : "") << "\n";
        }
    }
    return out.str();
}

}  // namespace repbf
