// Command-line front end: spectra, relation checks, sweeps and variant
// solutions of C_lambda-extended oscillator algebras.
//
// Exit codes: 0 ok, 1 a relation check failed, 2 bad input or parameters,
// 3 I/O error.

#include "cyclic_osc/cyclic_osc.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace cyclic_osc;
using io::json;
using Ld = long double;

enum Exit { kOk = 0, kRelationFailure = 1, kBadInput = 2, kIoError = 3 };

struct Common {
    int lambda = 0;
    std::string alpha;
    std::string params_file;
    Eigen::Index dim = 60;
    double tol = 1e-10;
    double cluster_tol = kDegeneracyTolerance;
    std::string format;
    std::string output;
};

struct VariantArgs {
    std::optional<int> mu;
    double c = 1.0;
    std::optional<double> eta;
    double phi = 0.0;
    double xi = 1.0;
    std::optional<double> r;
};

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        try {
            out.push_back(std::stod(item, &used));
        } catch (const std::exception&) {
            throw DomainError("malformed number '" + item + "' in '" + text + "'");
        }
        if (used != item.size()) throw DomainError("malformed number '" + item + "'");
    }
    return out;
}

void add_params_options(CLI::App* sub, Common& c) {
    sub->add_option("--lambda", c.lambda, "Order of the cyclic group (>= 2)");
    sub->add_option("--alpha", c.alpha,
                    "alpha_0..alpha_{lambda-2} (or all lambda values), comma separated");
    sub->add_option("--params", c.params_file, "JSON file {\"lambda\": int, \"alpha\": [...]}");
    sub->add_option("--dim", c.dim, "Truncation dimension D")->capture_default_str();
}

void add_output_options(CLI::App* sub, Common& c, std::vector<std::string> formats) {
    // Subcommands share `c`; the per-command default is filled in after parsing.
    sub->add_option("--format", c.format, "Output format (default " + formats.front() + ")")
        ->check(CLI::IsMember(formats));
    sub->add_option("--output,-o", c.output, "Output file (default stdout)");
    sub->add_option("--tol", c.tol, "Relation residual tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--cluster-tol", c.cluster_tol, "Energy clustering tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

void add_variant_options(CLI::App* sub, VariantArgs& v) {
    sub->add_option("--mu", v.mu, "Solution family index");
    sub->add_option("--c", v.c, "Pseudosupersymmetric constant c")->capture_default_str();
    sub->add_option("--eta", v.eta, "Family-1 eta in (0, 2|c|), default sqrt(2)|c|");
    sub->add_option("--phi", v.phi, "Phase in [0, 2 pi)")->capture_default_str();
    sub->add_option("--xi", v.xi, "Orthosupersymmetric xi in (0, sqrt(2)]")
        ->capture_default_str();
    sub->add_option("--r", v.r, "Family-2 r_mu, default the equal-spacing value");
}

AlgebraParams resolve_params(const Common& c) {
    const bool inline_given = c.lambda != 0 || !c.alpha.empty();
    if (!c.params_file.empty()) {
        if (inline_given) throw DomainError("give either --params or --lambda/--alpha, not both");
        return io::load_params(c.params_file);
    }
    if (c.lambda == 0 || c.alpha.empty())
        throw DomainError("parameters needed: --lambda and --alpha, or --params");
    const auto values = parse_list(c.alpha);
    if (static_cast<int>(values.size()) == c.lambda)
        return AlgebraParams::from_alpha(c.lambda, values);
    return new_params(c.lambda, values);
}

/// stdout, or a file opened for writing; failures are I/O errors.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (path.empty()) return;
        file_.open(path);
        if (!file_) throw std::ios_base::failure("cannot open " + path + " for writing");
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
    void finish() {
        stream().flush();
        if (!stream()) throw std::ios_base::failure("write failed");
    }

private:
    std::ofstream file_;
};

void write_json(const Common& c, const json& j) {
    Sink sink(c.output);
    sink.stream() << j.dump(2) << '\n';
    sink.finish();
}

// --- spectrum ---------------------------------------------------------------

int cmd_spectrum(const Common& c, long long nmax) {
    const auto p = resolve_params(c);
    require_fock(p);
    if (nmax < 0) throw DomainError("--nmax must be >= 0");
    const auto lines = analytic_spectrum(p, nmax);

    // The formula must agree with the diagonal of (1/2){a, a^dag}.
    const Eigen::Index dim = std::max<Eigen::Index>(c.dim, nmax + 1 + kDefaultHeadroom);
    const auto h = h0(build_rep(p, dim));
    double worst = 0;
    for (const auto& l : lines) worst = std::max(worst, std::abs(h(l.n, l.n) - l.energy));
    if (worst > c.tol) {
        std::cerr << "error: analytic spectrum differs from H0 diagonal by " << worst << '\n';
        return kRelationFailure;
    }

    const auto report = classify_degeneracy(p, std::max<long long>(nmax, 12LL * p.lambda()),
                                            c.cluster_tol);
    if (c.format == "csv") {
        Sink sink(c.output);
        io::write_spectrum_csv(sink.stream(), lines);
        sink.finish();
    } else {
        auto j = io::spectrum_to_json(lines, report);
        j["params"] = io::params_to_json(p);
        write_json(c, j);
    }
    return kOk;
}

// --- verify -----------------------------------------------------------------

struct SuiteRun {
    std::string suite;
    std::optional<int> mu;
    RelationReport report;
};

std::vector<int> family_range(const VariantArgs& v, int count) {
    if (v.mu) {
        if (*v.mu < 0 || *v.mu >= count)
            throw DomainError("--mu must lie in [0, " + std::to_string(count - 1) + "]");
        return {*v.mu};
    }
    std::vector<int> all(count);
    for (int i = 0; i < count; ++i) all[i] = i;
    return all;
}

void require_lambda(const AlgebraParams& p, int lambda, const std::string& suite) {
    if (p.lambda() != lambda)
        throw DomainError("suite " + suite + " needs lambda = " + std::to_string(lambda));
}

double eta_or_default(const VariantArgs& v) {
    return v.eta ? *v.eta : std::sqrt(2.0) * std::abs(v.c);
}

std::vector<int> ossqm_families(const AlgebraParams& p, const VariantArgs& v) {
    if (v.mu) {
        if (*v.mu == 2) (void)ossqm_build(build_rep(p, 6), 2, v.xi, v.phi);  // throws
        return {*v.mu};
    }
    std::vector<int> out;
    for (int mu = 0; mu < 2; ++mu)
        if (std::abs(p.alpha(mu + 1) + 1.0) <= kRealTolerance) out.push_back(mu);
    return out;
}

void run_suite(const std::string& suite, const AlgebraParams& p, const Common& c,
               const VariantArgs& v, std::vector<SuiteRun>& runs) {
    const auto rep = [&] { return build_rep<Ld>(p, c.dim); };
    if (suite == "algebra") {
        runs.push_back({suite, std::nullopt, check_relations(rep(), c.tol)});
    } else if (suite == "klein") {
        require_lambda(p, 2, suite);
        runs.push_back({suite, std::nullopt, klein_reduction_check(rep(), c.tol)});
    } else if (suite == "shape") {
        const auto h = build_hierarchy<Ld>(p, c.dim);
        runs.push_back({"shape-partners", std::nullopt, partner_check(h, c.tol)});
        for (int mu : family_range(v, p.lambda()))
            runs.push_back({"shape-sqm2", mu, sqm2_check(h, mu, c.tol)});
    } else if (suite == "pssqm") {
        const auto r = rep();
        for (int mu : family_range(v, p.lambda()))
            runs.push_back({suite, mu, pssqm_check(pssqm_build(r, mu), c.tol)});
    } else if (suite == "cubic") {
        require_lambda(p, 3, suite);
        const auto r = rep();
        for (int mu : family_range(v, 3))
            runs.push_back({suite, mu, pssqm_cubic_check(pssqm_build(r, mu), c.tol)});
    } else if (suite == "pseudo1") {
        require_lambda(p, 3, suite);
        const auto r = rep();
        for (int mu : family_range(v, 3))
            runs.push_back(
                {suite, mu,
                 pseudo_check(pseudo_family1_build(r, mu, v.c, eta_or_default(v), v.phi), c.tol)});
    } else if (suite == "pseudo2") {
        require_lambda(p, 3, suite);
        const auto r = rep();
        for (int mu : family_range(v, 3)) {
            const double rmu = v.r ? *v.r : family2_equal_spacing_r(p, mu);
            runs.push_back({suite, mu, pseudo_check(pseudo_family2_build(r, mu, v.c, rmu), c.tol)});
        }
    } else if (suite == "ossqm") {
        require_lambda(p, 3, suite);
        const auto families = ossqm_families(p, v);
        if (families.empty())
            throw DomainError("suite ossqm needs alpha_1 = -1 (mu = 0) or alpha_2 = -1 (mu = 1)");
        const auto r = rep();
        for (int mu : families)
            runs.push_back({suite, mu, ossqm_check(ossqm_build(r, mu, v.xi, v.phi), c.tol)});
    } else {
        throw DomainError("unknown suite " + suite);
    }
}

int cmd_verify(const Common& c, const std::string& suite, const VariantArgs& v) {
    const auto p = resolve_params(c);
    require_fock(p);
    std::vector<SuiteRun> runs;
    if (suite == "all") {
        // Every suite that applies to these parameters; the cubic relation is
        // alpha-dependent data and stays opt-in.
        run_suite("algebra", p, c, v, runs);
        if (p.lambda() == 2) run_suite("klein", p, c, v, runs);
        if (window_violations(p).empty()) run_suite("shape", p, c, v, runs);
        if (p.lambda() >= 3) run_suite("pssqm", p, c, v, runs);
        if (p.lambda() == 3) {
            run_suite("pseudo1", p, c, v, runs);
            run_suite("pseudo2", p, c, v, runs);
            if (!ossqm_families(p, v).empty()) run_suite("ossqm", p, c, v, runs);
        }
    } else {
        run_suite(suite, p, c, v, runs);
    }

    bool ok = true;
    for (const auto& r : runs) ok = ok && r.report.all_pass();

    if (c.format == "csv") {
        Sink sink(c.output);
        auto& out = sink.stream();
        out << "suite,mu,relation,residual,pass\n";
        for (const auto& r : runs)
            for (const auto& x : r.report.relations)
                out << r.suite << ',' << (r.mu ? std::to_string(*r.mu) : "") << ",\"" << x.name
                    << "\"," << io::format_number(x.residual) << ',' << (x.pass ? "true" : "false")
                    << '\n';
        sink.finish();
    } else {
        json suites = json::array();
        for (const auto& r : runs) {
            auto j = io::report_to_json(r.report);
            j["suite"] = r.suite;
            j["mu"] = r.mu ? json(*r.mu) : json(nullptr);
            suites.push_back(std::move(j));
        }
        write_json(c, {{"params", io::params_to_json(p)},
                       {"dim", c.dim},
                       {"tol", c.tol},
                       {"suites", suites},
                       {"all_pass", ok}});
    }
    return ok ? kOk : kRelationFailure;
}

// --- sweep ------------------------------------------------------------------

std::vector<GridAxis> parse_grid(const std::string& spec, int lambda) {
    std::map<int, GridAxis> axes;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq < 2 || item[0] != 'a')
            throw DomainError("grid entry '" + item + "' is not a<k>=lo:hi:step");
        int k = -1;
        try {
            std::size_t used = 0;
            k = std::stoi(item.substr(1, eq - 1), &used);
            if (used != eq - 1) k = -1;
        } catch (const std::exception&) {
        }
        if (k < 0 || k > lambda - 2)
            throw DomainError("grid axis '" + item.substr(0, eq) + "' outside a0..a" +
                              std::to_string(lambda - 2));
        if (!axes.emplace(k, parse_axis(item.substr(eq + 1))).second)
            throw DomainError("grid axis a" + std::to_string(k) + " given twice");
    }
    std::vector<GridAxis> grid;
    for (int k = 0; k <= lambda - 2; ++k) {
        const auto it = axes.find(k);
        if (it == axes.end()) throw DomainError("grid axis a" + std::to_string(k) + " missing");
        grid.push_back(it->second);
    }
    return grid;
}

int cmd_sweep(const Common& c, const std::string& grid_spec, long long nmax, unsigned threads) {
    if (c.lambda < 2) throw DomainError("--lambda >= 2 required");
    const auto grid = parse_grid(grid_spec, c.lambda);
    if (nmax <= 0) nmax = 12LL * c.lambda;

    Sink sink(c.output);
    auto& out = sink.stream();
    if (c.format == "csv") {
        out << io::sweep_csv_header(c.lambda) << '\n';
        sweep(c.lambda, grid, nmax, c.cluster_tol,
              [&](const SweepRecord& r) { out << io::sweep_csv_row(r) << '\n'; }, threads);
    } else {
        out << "[\n";
        bool first = true;
        sweep(c.lambda, grid, nmax, c.cluster_tol,
              [&](const SweepRecord& r) {
                  out << (first ? "" : ",\n") << io::sweep_record_to_json(r).dump();
                  first = false;
              },
              threads);
        out << "\n]\n";
    }
    sink.finish();
    return kOk;
}

// --- hierarchy --------------------------------------------------------------

int cmd_hierarchy(const Common& c, long long nmax) {
    const auto p = resolve_params(c);
    require_fock(p);
    const auto h = build_hierarchy(p, std::max<Eigen::Index>(c.dim, nmax + 1));
    const auto spectra = sector_spectra(h, nmax + 1);
    if (c.format == "csv") {
        Sink sink(c.output);
        auto& out = sink.stream();
        out << "sector,n,energy\n";
        for (std::size_t mu = 0; mu < spectra.size(); ++mu)
            for (std::size_t n = 0; n < spectra[mu].size(); ++n)
                out << mu << ',' << n << ',' << io::format_number(spectra[mu][n]) << '\n';
        sink.finish();
    } else {
        json sectors = json::array();
        for (std::size_t mu = 0; mu < spectra.size(); ++mu)
            sectors.push_back({{"sector", mu}, {"energies", spectra[mu]}});
        write_json(c, {{"params", io::params_to_json(p)},
                       {"omega", h.omega},
                       {"e0", h.e0},
                       {"sectors", sectors}});
    }
    return kOk;
}

// --- variant ----------------------------------------------------------------

int cmd_variant(const Common& c, const std::string& kind, const VariantArgs& v,
                long long count, bool matrices) {
    const auto p = resolve_params(c);
    require_fock(p);
    if (!v.mu) throw DomainError("--mu is required");
    const int mu = *v.mu;
    const auto r = build_rep<Ld>(p, c.dim);

    VariantSolution<Ld> s;
    RelationReport report;
    if (kind == "pssqm" || kind == "pssqm-cubic") {
        s = pssqm_build(r, mu);
        report = pssqm_check(s, c.tol);
        if (kind == "pssqm-cubic") {
            report.append(pssqm_cubic_check(s, c.tol));
            s.kind = VariantKind::pssqm_cubic;
        }
    } else if (kind == "pseudo-family1") {
        s = pseudo_family1_build(r, mu, v.c, eta_or_default(v), v.phi);
        report = pseudo_check(s, c.tol);
    } else if (kind == "pseudo-family2") {
        require_lambda(p, 3, kind);
        s = pseudo_family2_build(r, mu, v.c, v.r ? *v.r : family2_equal_spacing_r(p, mu));
        report = pseudo_check(s, c.tol);
    } else {
        s = ossqm_build(r, mu, v.xi, v.phi);
        report = ossqm_check(s, c.tol);
    }

    auto j = io::variant_to_json(s, report, ground_state_analysis(s, c.cluster_tol), count);
    j["params"] = io::params_to_json(p);
    j["dim"] = c.dim;
    if (matrices) {
        j["matrices"]["Q"] = io::matrix_to_json(s.Q);
        if (s.kind == VariantKind::ossqm) j["matrices"]["Q2"] = io::matrix_to_json(s.Q2);
        j["matrices"]["H"] = io::matrix_to_json(s.H);
    }
    write_json(c, j);
    return report.all_pass() ? kOk : kRelationFailure;
}

// --- dump -------------------------------------------------------------------

int cmd_dump(const Common& c) {
    const auto p = resolve_params(c);
    write_json(c, io::rep_to_json(build_rep(p, c.dim)));
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"C_lambda-extended oscillator algebras in truncated Fock space"};
    app.require_subcommand(1);

    Common common;
    VariantArgs variant;
    long long nmax = 20;
    std::string suite = "all";
    std::string grid;
    unsigned threads = 0;
    std::string kind;
    long long spectrum_count = 12;
    bool matrices = false;

    auto* spectrum = app.add_subcommand("spectrum", "H0 levels and degeneracy pattern");
    add_params_options(spectrum, common);
    add_output_options(spectrum, common, {"csv", "json"});
    spectrum->add_option("--nmax", nmax, "Highest level index")->capture_default_str();

    auto* verify = app.add_subcommand("verify", "Check defining relations (exit 1 on failure)");
    add_params_options(verify, common);
    add_output_options(verify, common, {"json", "csv"});
    verify->add_option("--suite", suite, "Relation suite")
        ->check(CLI::IsMember(
            {"algebra", "klein", "shape", "pssqm", "cubic", "pseudo1", "pseudo2", "ossqm", "all"}))
        ->capture_default_str();
    add_variant_options(verify, variant);

    auto* sweep_cmd = app.add_subcommand("sweep", "Degeneracy pattern over a parameter grid");
    sweep_cmd->add_option("--lambda", common.lambda, "Order of the cyclic group")->required();
    sweep_cmd->add_option("--grid", grid, "a0=lo:hi:step[,a1=lo:hi:step...]")->required();
    sweep_cmd->add_option("--nmax", nmax, "Highest level index (0: 12 lambda)");
    sweep_cmd->add_option("--threads", threads, "Worker threads (0: hardware)");
    add_output_options(sweep_cmd, common, {"csv", "json"});

    auto* hierarchy = app.add_subcommand("hierarchy", "Partner Hamiltonian spectra per sector");
    add_params_options(hierarchy, common);
    add_output_options(hierarchy, common, {"csv", "json"});
    hierarchy->add_option("--nmax", nmax, "Highest level index")->capture_default_str();

    auto* variant_cmd = app.add_subcommand("variant", "Build one variant solution");
    add_params_options(variant_cmd, common);
    add_output_options(variant_cmd, common, {"json"});
    variant_cmd->add_option("--kind", kind, "Solution kind")
        ->required()
        ->check(CLI::IsMember(
            {"pssqm", "pssqm-cubic", "pseudo-family1", "pseudo-family2", "ossqm"}));
    add_variant_options(variant_cmd, variant);
    variant_cmd->add_option("--count", spectrum_count, "Spectrum entries to print")
        ->capture_default_str();
    variant_cmd->add_flag("--matrices", matrices, "Include Q, H as [re, im] arrays");

    auto* dump = app.add_subcommand("dump", "Matrices a, a^dag, N, T, P_mu as JSON");
    add_params_options(dump, common);
    add_output_options(dump, common, {"json"});

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kBadInput;
    }

    if (common.format.empty())
        common.format = (*verify || *variant_cmd || *dump) ? "json" : "csv";

    try {
        if (*spectrum) return cmd_spectrum(common, nmax);
        if (*verify) return cmd_verify(common, suite, variant);
        if (*sweep_cmd) return cmd_sweep(common, grid, nmax, threads);
        if (*hierarchy) return cmd_hierarchy(common, nmax);
        if (*variant_cmd) return cmd_variant(common, kind, variant, spectrum_count, matrices);
        if (*dump) return cmd_dump(common);
    } catch (const FockError& e) {
        std::cerr << "error: " << e.what() << '\n';
        for (int mu : e.violations())
            std::cerr << "violation: mu=" << mu << " F(" << mu << ") <= 0\n";
        return kBadInput;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kBadInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kBadInput;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRelationFailure;
    }
    return kBadInput;
}
