#include "cyclic_osc/io.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace cyclic_osc;
using io::json;

TEST(Io, NumbersRoundTrip) {
    for (double v : {0.1, 1.0 / 3.0, -2.6018213455, 1e-300, 12345.678901234567}) {
        const auto s = io::format_number(v);
        EXPECT_EQ(std::strtod(s.c_str(), nullptr), v) << s;
    }
    EXPECT_EQ(io::format_number(0.5), "0.5");
}

TEST(Io, ParamsRoundTrip) {
    const auto p = new_params(4, {0.3, 0.2, -0.1});
    const auto j = io::params_to_json(p);
    EXPECT_EQ(j["lambda"], 4);
    EXPECT_EQ(j["alpha"].size(), 4u);
    EXPECT_EQ(io::params_from_json(json::parse(j.dump())), p);

    // The lambda - 1 head form is accepted too.
    EXPECT_EQ(io::params_from_json(json::parse(R"({"lambda":3,"alpha":[1.0,-0.5]})")),
              new_params(3, {1.0, -0.5}));
}

TEST(Io, ParamsRejectMalformed) {
    EXPECT_THROW(io::params_from_json(json::parse(R"({"alpha":[0]})")), DomainError);
    EXPECT_THROW(io::params_from_json(json::parse(R"({"lambda":2.5,"alpha":[0]})")),
                 DomainError);
    EXPECT_THROW(io::params_from_json(json::parse(R"({"lambda":2,"alpha":"x"})")), DomainError);
    EXPECT_THROW(io::params_from_json(json::parse(R"({"lambda":3,"alpha":[1,0,0]})")),
                 DomainError);
    EXPECT_THROW(io::load_params("/nonexistent/params.json"), std::ios_base::failure);
}

TEST(Io, LoadParamsFromFile) {
    const auto path = std::filesystem::temp_directory_path() / "cyclic_osc_params_test.json";
    {
        std::ofstream out(path);
        out << R"({"lambda": 2, "alpha": [0.5, -0.5]})";
    }
    EXPECT_EQ(io::load_params(path.string()), new_params(2, {0.5}));
    {
        std::ofstream out(path);
        out << "{not json";
    }
    EXPECT_THROW(io::load_params(path.string()), DomainError);
    std::filesystem::remove(path);
}

TEST(Io, MatrixDumpShape) {
    const auto r = build_rep(new_params(3, {1.0, -0.5}), 6);
    const auto j = io::rep_to_json(r);
    ASSERT_EQ(j["a"].size(), 6u);
    ASSERT_EQ(j["a"][0].size(), 6u);
    EXPECT_EQ(j["a"][0][1], json::array({std::sqrt(2.0), 0.0}));
    EXPECT_EQ(j["P"].size(), 3u);
    const double im = j["T"][1][1][1];
    EXPECT_NEAR(im, std::sin(2 * std::numbers::pi / 3), 1e-15);
}

TEST(Io, SpectrumCsvAndJsonAgree) {
    const auto p = new_params(3, {0.1, 1.0 / 7.0});
    const auto lines = analytic_spectrum(p, 8);
    std::ostringstream csv;
    io::write_spectrum_csv(csv, lines);
    const auto j = json::parse(io::spectrum_to_json(lines, classify_degeneracy(p, 8)).dump());

    std::istringstream in(csv.str());
    std::string row;
    std::getline(in, row);
    EXPECT_EQ(row, "n,k,mu,energy");
    std::size_t i = 0;
    while (std::getline(in, row)) {
        const double csv_energy = std::strtod(row.substr(row.rfind(',') + 1).c_str(), nullptr);
        EXPECT_EQ(csv_energy, j["levels"][i]["energy"].get<double>());
        EXPECT_EQ(csv_energy, lines[i].energy);
        ++i;
    }
    EXPECT_EQ(i, 9u);
}

TEST(Io, SweepRowsMirrorJson) {
    const std::vector<GridAxis> grid{parse_axis("-1.5:0.5:0.5"), parse_axis("0.1")};
    EXPECT_EQ(io::sweep_csv_header(3), "alpha_0,alpha_1,valid,pattern,threshold_energy");
    for (const auto& r : sweep_collect(3, grid, 24, kDegeneracyTolerance)) {
        const auto row = io::sweep_csv_row(r);
        const auto j = io::sweep_record_to_json(r);
        EXPECT_EQ(row.substr(0, row.find(',')), io::format_number(j["alpha"][0].get<double>()));
        EXPECT_NE(row.find(r.valid ? ",true," : ",false,"), std::string::npos);
        EXPECT_EQ(j["pattern"], r.report.pattern());
    }
}

TEST(Io, VariantJsonFields) {
    const auto r = build_rep(new_params(3, {0.5, 0.5}), 20);
    const auto s = ossqm_build(r, 1, 1.0, 0.0);
    const auto j = io::variant_to_json(s, ossqm_check(s, 1e-10), ground_state_analysis(s, 1e-9), 5);
    for (const char* key :
         {"kind", "mu", "free_params", "r_values", "spectrum", "ground_state", "relations"})
        EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_EQ(j["kind"], "ossqm");
    EXPECT_EQ(j["spectrum"].size(), 5u);
    EXPECT_EQ(j["ground_state"]["multiplicity"], 1);
    EXPECT_TRUE(j["relations"][0].contains("residual"));
}
