#include "cyclic_osc/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace cyclic_osc::io {

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json params_to_json(const AlgebraParams& p) {
    return {{"lambda", p.lambda()}, {"alpha", p.alpha()}};
}

AlgebraParams params_from_json(const json& j) {
    if (!j.is_object() || !j.contains("lambda") || !j.contains("alpha"))
        throw DomainError("params JSON needs \"lambda\" and \"alpha\"");
    if (!j["lambda"].is_number_integer()) throw DomainError("\"lambda\" must be an integer");
    if (!j["alpha"].is_array()) throw DomainError("\"alpha\" must be an array");
    std::vector<double> alpha;
    for (const auto& v : j["alpha"]) {
        if (!v.is_number()) throw DomainError("\"alpha\" entries must be numbers");
        alpha.push_back(v.get<double>());
    }
    return AlgebraParams::from_alpha(j["lambda"].get<int>(), alpha);
}

AlgebraParams load_params(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw DomainError(path + ": " + e.what());
    }
    return params_from_json(j);
}

json report_to_json(const RelationReport& r) {
    json rel = json::array();
    for (const auto& x : r.relations)
        rel.push_back({{"name", x.name}, {"residual", x.residual}, {"pass", x.pass}});
    return {{"relations", rel},
            {"headroom", r.headroom},
            {"tol", r.tol},
            {"degenerate", r.degenerate},
            {"all_pass", r.all_pass()}};
}

json degeneracy_to_json(const DegeneracyReport& d) {
    json clusters = json::array();
    for (const auto& c : d.clusters) clusters.push_back({{"energy", c.energy}, {"levels", c.levels}});
    json j = {{"pattern", d.pattern()},
              {"multiplicity", d.multiplicity},
              {"stabilized", d.stabilized},
              {"clusters", clusters}};
    j["threshold_energy"] = d.threshold_energy ? json(*d.threshold_energy) : json(nullptr);
    return j;
}

json ground_state_to_json(const GroundState& g) {
    return {{"energy", g.energy}, {"multiplicity", g.multiplicity}, {"broken", g.broken}};
}

void write_spectrum_csv(std::ostream& out, const std::vector<SpectrumLine>& lines) {
    out << "n,k,mu,energy\n";
    for (const auto& l : lines)
        out << l.n << ',' << l.k << ',' << l.mu << ',' << format_number(l.energy) << '\n';
}

json spectrum_to_json(const std::vector<SpectrumLine>& lines, const DegeneracyReport& d) {
    json levels = json::array();
    for (const auto& l : lines)
        levels.push_back({{"n", l.n}, {"k", l.k}, {"mu", l.mu}, {"energy", l.energy}});
    return {{"levels", levels}, {"degeneracy", degeneracy_to_json(d)}};
}

std::string sweep_csv_header(int lambda) {
    std::ostringstream s;
    for (int mu = 0; mu + 1 < lambda; ++mu) s << "alpha_" << mu << ',';
    s << "valid,pattern,threshold_energy";
    return s.str();
}

std::string sweep_csv_row(const SweepRecord& r) {
    std::ostringstream s;
    for (double a : r.params.head()) s << format_number(a) << ',';
    s << (r.valid ? "true" : "false") << ',' << r.report.pattern() << ',';
    if (r.report.threshold_energy) s << format_number(*r.report.threshold_energy);
    return s.str();
}

json sweep_record_to_json(const SweepRecord& r) {
    json j;
    j["alpha"] = r.params.head();
    j["valid"] = r.valid;
    j["violations"] = r.violations;
    j["pattern"] = r.report.pattern();
    j["threshold_energy"] =
        r.report.threshold_energy ? json(*r.report.threshold_energy) : json(nullptr);
    return j;
}

}  // namespace cyclic_osc::io
