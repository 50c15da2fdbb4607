#pragma once

#include "cyclic_osc/algebra.hpp"
#include "cyclic_osc/fock.hpp"
#include "cyclic_osc/relations.hpp"
#include "cyclic_osc/spectrum.hpp"
#include "cyclic_osc/variants.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace cyclic_osc::io {

using nlohmann::json;

/// %.17g: parses back to the same double.
std::string format_number(double v);

/// {"lambda": int, "alpha": [lambda reals]}
json params_to_json(const AlgebraParams& p);
AlgebraParams params_from_json(const json& j);
AlgebraParams load_params(const std::string& path);

json report_to_json(const RelationReport& r);
json degeneracy_to_json(const DegeneracyReport& d);
json ground_state_to_json(const GroundState& g);

/// Row-major nested arrays of [re, im] pairs.
template <typename Derived>
json matrix_to_json(const Eigen::MatrixBase<Derived>& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            const auto z = std::complex<double>(m(i, j));
            row.push_back({z.real(), z.imag()});
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

template <typename Real>
json rep_to_json(const TruncatedRep<Real>& r) {
    json j;
    j["params"] = params_to_json(r.params);
    j["dim"] = r.dim;
    j["a"] = matrix_to_json(r.a);
    j["adag"] = matrix_to_json(r.adag);
    j["N"] = matrix_to_json(r.nmat);
    j["T"] = matrix_to_json(r.tmat);
    j["P"] = json::array();
    for (const auto& pm : r.proj) j["P"].push_back(matrix_to_json(pm));
    return j;
}

/// {kind, mu, free_params, r_values, spectrum, ground_state, relations}
template <typename Real>
json variant_to_json(const VariantSolution<Real>& s, const RelationReport& report,
                     const GroundState& ground, long long spectrum_count) {
    json j;
    j["kind"] = to_string(s.kind);
    j["mu"] = s.mu;
    j["free_params"] = s.free_params;
    j["r_values"] = s.r_values;
    auto e = s.energies();
    if (spectrum_count >= 0 && static_cast<std::size_t>(spectrum_count) < e.size())
        e.resize(static_cast<std::size_t>(spectrum_count));
    j["spectrum"] = e;
    j["ground_state"] = ground_state_to_json(ground);
    j["relations"] = report_to_json(report)["relations"];
    return j;
}

void write_spectrum_csv(std::ostream& out, const std::vector<SpectrumLine>& lines);
json spectrum_to_json(const std::vector<SpectrumLine>& lines, const DegeneracyReport& d);

std::string sweep_csv_header(int lambda);
std::string sweep_csv_row(const SweepRecord& r);
json sweep_record_to_json(const SweepRecord& r);

}  // namespace cyclic_osc::io
