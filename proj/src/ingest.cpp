#include "repbf/ingest.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace repbf {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(trim(field));
    if (!line.empty() && line.back() == ',') fields.emplace_back("");
    return fields;
}

double parse_number(const std::string& text, int row, const std::string& column) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw IngestError("row " + std::to_string(row) + ", column '" + column +
                          "': unparseable numeric value '" + text + "'");
    }
}

long parse_integer(const std::string& text, int row, const std::string& column) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(text, &pos);
        if (pos != text.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw IngestError("row " + std::to_string(row) + ", column '" + column +
                          "': unparseable integer value '" + text + "'");
    }
}

}  // namespace

FisherResult fisher_transform(double r, long n) {
    if (!(std::abs(r) < 1.0))
        throw std::domain_error("fisher_transform: |r| must be < 1");
    if (n < 4) throw std::domain_error("fisher_transform: n must be >= 4");
    return FisherResult{std::atanh(r), 1.0 / std::sqrt(static_cast<double>(n - 3))};
}

StudyPair build_study(const RawStudyRecord& record) {
    if (record.mode == StudyMode::correlation) {
        std::string bad;
        if (!(std::abs(record.r_o) < 1.0)) bad += " r_o";
        if (!(std::abs(record.r_r) < 1.0)) bad += " r_r";
        if (record.n_o < 4) bad += " n_o";
        if (record.n_r < 4) bad += " n_r";
        if (record.r_o == 0.0) bad += " r_o(zero original effect)";
        if (!bad.empty())
            throw IngestError("study '" + record.label + "': invalid fields:" + bad);
        const FisherResult o = fisher_transform(record.r_o, record.n_o);
        const FisherResult r = fisher_transform(record.r_r, record.n_r);
        return StudyPair::from_effects(record.label, o.theta_hat, o.sigma, r.theta_hat, r.sigma);
    }
    std::string bad;
    if (record.z_o == 0.0) bad += " z_o(zero; d undefined)";
    if (!(record.c > 0.0)) bad += " c";
    if (!bad.empty()) throw IngestError("study '" + record.label + "': invalid fields:" + bad);
    return StudyPair::from_z(record.label, record.z_o, record.z_r, record.c);
}

std::vector<RawStudyRecord> load_studies(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IngestError("cannot open file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw IngestError("empty input: " + path);
    const std::vector<std::string> header = split_csv_line(line);

    StudyMode mode;
    if (header == std::vector<std::string>{"label", "r_o", "r_r", "n_o", "n_r"}) {
        mode = StudyMode::correlation;
    } else if (header == std::vector<std::string>{"label", "z_o", "z_r", "c"}) {
        mode = StudyMode::zstat;
    } else {
        throw IngestError(
            "row 1: unrecognized header; expected 'label,r_o,r_r,n_o,n_r' or 'label,z_o,z_r,c'");
    }

    std::vector<RawStudyRecord> records;
    int row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            throw IngestError("row " + std::to_string(row) + ": expected " +
                              std::to_string(header.size()) + " columns, found " +
                              std::to_string(fields.size()));
        }
        RawStudyRecord rec;
        rec.mode = mode;
        rec.label = fields[0];
        if (rec.label.empty())
            throw IngestError("row " + std::to_string(row) + ", column 'label': empty");
        if (mode == StudyMode::correlation) {
            rec.r_o = parse_number(fields[1], row, "r_o");
            rec.r_r = parse_number(fields[2], row, "r_r");
            rec.n_o = parse_integer(fields[3], row, "n_o");
            rec.n_r = parse_integer(fields[4], row, "n_r");
            if (!(std::abs(rec.r_o) < 1.0))
                throw IngestError("row " + std::to_string(row) + ", column 'r_o': |r| must be < 1");
            if (!(std::abs(rec.r_r) < 1.0))
                throw IngestError("row " + std::to_string(row) + ", column 'r_r': |r| must be < 1");
            if (rec.n_o < 4)
                throw IngestError("row " + std::to_string(row) + ", column 'n_o': must be >= 4");
            if (rec.n_r < 4)
                throw IngestError("row " + std::to_string(row) + ", column 'n_r': must be >= 4");
        } else {
            rec.z_o = parse_number(fields[1], row, "z_o");
            rec.z_r = parse_number(fields[2], row, "z_r");
            rec.c = parse_number(fields[3], row, "c");
            if (!(rec.c > 0.0))
                throw IngestError("row " + std::to_string(row) + ", column 'c': must be positive");
        }
        records.push_back(std::move(rec));
    }
    if (records.empty()) throw IngestError("empty input (no data rows): " + path);
    return records;
}

}  // namespace repbf
