#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "repbf/ingest.hpp"

using namespace repbf;

namespace {
const std::string kDataDir = REPBF_DATA_DIR;

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = std::string("./") + name;
    std::ofstream out(path);
    out << content;
    return path;
}
}  // namespace

TEST_CASE("fisher_transform reference values") {
    const FisherResult zero = fisher_transform(0.0, 100);
    CHECK(zero.theta_hat == doctest::Approx(0.0));
    CHECK(zero.sigma == doctest::Approx(1.0 / std::sqrt(97.0)).epsilon(1e-12));

    const FisherResult half = fisher_transform(0.5, 28);
    CHECK(half.theta_hat == doctest::Approx(0.5493).epsilon(1e-3));
    CHECK(half.sigma == doctest::Approx(0.2).epsilon(1e-12));

    CHECK_THROWS_AS(fisher_transform(1.0, 100), std::domain_error);
    CHECK_THROWS_AS(fisher_transform(-1.2, 100), std::domain_error);
    CHECK_THROWS_AS(fisher_transform(0.3, 3), std::domain_error);
}

TEST_CASE("build_study correlation mode matches the reference c and d columns") {
    RawStudyRecord rec;
    rec.label = "Balafoutas";
    rec.mode = StudyMode::correlation;
    rec.r_o = 0.27;
    rec.r_r = 0.145;
    rec.n_o = 72;
    rec.n_r = 243;
    const StudyPair st = build_study(rec);
    // c = (n_r - 3) / (n_o - 3), the (n-3)-based variance ratio.
    CHECK(st.c == doctest::Approx(240.0 / 69.0).epsilon(1e-12));
    CHECK(st.c == doctest::Approx(3.48).epsilon(2e-3));
    CHECK_NOTHROW(st.validate());

    RawStudyRecord aviezer;
    aviezer.label = "Aviezer";
    aviezer.mode = StudyMode::correlation;
    // Correlations chosen so the Fisher-scale z values reproduce the
    // reference row: atanh(r_o)*sqrt(12) = 6.8, atanh(r_r)*sqrt(11) = 3.93.
    aviezer.r_o = 0.9614;
    aviezer.r_r = 0.8294;
    aviezer.n_o = 15;
    aviezer.n_r = 14;
    const StudyPair av = build_study(aviezer);
    CHECK(av.c == doctest::Approx(11.0 / 12.0).epsilon(1e-12));
    CHECK(av.d == doctest::Approx(std::atanh(0.8294) / std::atanh(0.9614)).epsilon(1e-12));
    CHECK(av.d == doctest::Approx(0.60).epsilon(3e-2));
}

TEST_CASE("build_study zstat mode") {
    RawStudyRecord rec;
    rec.label = "worked";
    rec.mode = StudyMode::zstat;
    rec.z_o = 3.0;
    rec.z_r = 2.5;
    rec.c = 1.0;
    const StudyPair st = build_study(rec);
    CHECK(st.d == doctest::Approx(0.8333).epsilon(1e-3));
    CHECK(st.sigma_r == doctest::Approx(1.0));
    CHECK(st.sigma_o == doctest::Approx(1.0));
    CHECK_NOTHROW(st.validate());

    rec.z_o = 0.0;
    CHECK_THROWS_AS(build_study(rec), IngestError);
    try {
        build_study(rec);
    } catch (const IngestError& e) {
        CHECK(std::string(e.what()).find("z_o") != std::string::npos);
    }
}

TEST_CASE("load_studies parses the bundled table") {
    const auto records = load_studies(kDataDir + "/ssrp.csv");
    REQUIRE(records.size() == 12);
    CHECK(records.front().label == "Aviezer et al. (2012)");
    CHECK(records.front().mode == StudyMode::zstat);
    CHECK(records.front().z_o == doctest::Approx(6.8));
    CHECK(records.back().label == "Rand et al. (2012)");
    CHECK(records.back().c == doctest::Approx(6.27));
    for (const auto& rec : records) CHECK_NOTHROW(build_study(rec).validate());
}

TEST_CASE("load_studies error reporting") {
    const std::string bad_row = write_temp(
        "bad_row.csv", "label,r_o,r_r,n_o,n_r\nfine,0.5,0.4,30,40\nbroken,1.0,0.4,30,40\n");
    try {
        load_studies(bad_row);
        FAIL("expected an ingest error");
    } catch (const IngestError& e) {
        CHECK(std::string(e.what()).find("row 3") != std::string::npos);
        CHECK(std::string(e.what()).find("r_o") != std::string::npos);
    }
    std::remove(bad_row.c_str());

    const std::string empty = write_temp("empty.csv", "");
    CHECK_THROWS_AS(load_studies(empty), IngestError);
    try {
        load_studies(empty);
    } catch (const IngestError& e) {
        CHECK(std::string(e.what()).find("empty") != std::string::npos);
    }
    std::remove(empty.c_str());

    const std::string bad_header = write_temp("bad_header.csv", "a,b,c\n1,2,3\n");
    CHECK_THROWS_AS(load_studies(bad_header), IngestError);
    std::remove(bad_header.c_str());

    CHECK_THROWS_AS(load_studies("./does_not_exist.csv"), IngestError);
}

TEST_CASE("load_studies reads correlation tables") {
    const std::string path = write_temp(
        "corr.csv", "label,r_o,r_r,n_o,n_r\nBalafoutas,0.27,0.145,72,243\n");
    const auto records = load_studies(path);
    REQUIRE(records.size() == 1);
    CHECK(records[0].mode == StudyMode::correlation);
    CHECK(build_study(records[0]).c == doctest::Approx(240.0 / 69.0).epsilon(1e-12));
    std::remove(path.c_str());
}
