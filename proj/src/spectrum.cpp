#include "cyclic_osc/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>

namespace cyclic_osc {

std::string DegeneracyReport::pattern() const {
    if (multiplicity <= 1) return "nondegenerate";
    return std::to_string(multiplicity) + "-fold-above-threshold";
}

std::vector<SpectrumLine> analytic_spectrum(const AlgebraParams& p, long long n_max) {
    const auto d = derived_constants(p);
    const int lambda = p.lambda();
    std::vector<SpectrumLine> lines;
    lines.reserve(static_cast<std::size_t>(std::max(0LL, n_max + 1)));
    for (long long n = 0; n <= n_max; ++n) {
        const int mu = wrap(n, lambda);
        const long long k = n / lambda;
        lines.push_back({n, k, mu, static_cast<double>(n) + 0.5 + d.gamma[mu]});
    }
    return lines;
}

std::vector<LevelCluster> cluster_levels(std::span<const double> energies, double tol) {
    std::vector<long long> order(energies.size());
    std::iota(order.begin(), order.end(), 0LL);
    std::stable_sort(order.begin(), order.end(),
                     [&](long long i, long long j) { return energies[i] < energies[j]; });
    std::vector<LevelCluster> clusters;
    for (long long n : order) {
        if (clusters.empty() || energies[n] - clusters.back().energy > tol)
            clusters.push_back({energies[n], {}});
        clusters.back().levels.push_back(n);
    }
    for (auto& c : clusters) std::sort(c.levels.begin(), c.levels.end());
    return clusters;
}

double complete_energy_cutoff(std::span<const double> energies, int lambda) {
    std::vector<double> top(lambda, -std::numeric_limits<double>::infinity());
    for (std::size_t n = 0; n < energies.size(); ++n) {
        auto& t = top[wrap(static_cast<long long>(n), lambda)];
        t = std::max(t, energies[n]);
    }
    return *std::min_element(top.begin(), top.end());
}

std::vector<LevelCluster> complete_clusters(std::span<const double> energies, int lambda,
                                            double tol) {
    const double cutoff = complete_energy_cutoff(energies, lambda);
    auto all = cluster_levels(energies, tol);
    std::erase_if(all, [&](const LevelCluster& c) { return c.energy > cutoff; });
    return all;
}

SpacingReport spacing_report(const std::vector<LevelCluster>& clusters, double tol) {
    SpacingReport s;
    if (clusters.size() < 2) return s;
    s.gap = clusters[1].energy - clusters[0].energy;
    s.uniform_gap = true;
    for (std::size_t i = 2; i < clusters.size(); ++i)
        if (std::abs(clusters[i].energy - clusters[i - 1].energy - s.gap) > tol)
            s.uniform_gap = false;
    s.monotone_excited_multiplicity = true;
    for (std::size_t i = 2; i < clusters.size(); ++i)
        if (clusters[i].multiplicity() < clusters[i - 1].multiplicity())
            s.monotone_excited_multiplicity = false;
    s.excited_multiplicity = clusters.back().multiplicity();
    return s;
}

DegeneracyReport classify_levels(std::span<const double> energies, int lambda, double tol) {
    DegeneracyReport report;
    report.clusters = cluster_levels(energies, tol);
    const double cutoff = complete_energy_cutoff(energies, lambda);

    // Multiplicity of the cluster holding each level, for complete clusters.
    std::vector<int> level_mult(energies.size(), 0);
    std::vector<std::size_t> complete;
    for (std::size_t c = 0; c < report.clusters.size(); ++c) {
        const auto& cl = report.clusters[c];
        if (cl.energy > cutoff) continue;
        complete.push_back(c);
        for (long long n : cl.levels) level_mult[n] = cl.multiplicity();
    }

    // The signature of each ladder in its last two complete periods.
    std::vector<int> asymptotic(lambda, 1);
    report.stabilized = true;
    for (int g = 0; g < lambda; ++g) {
        std::vector<int> seen;
        for (std::size_t n = static_cast<std::size_t>(g); n < energies.size(); n += lambda)
            if (level_mult[n] > 0) seen.push_back(level_mult[n]);
        if (seen.size() < 2) {
            report.stabilized = false;
            if (!seen.empty()) asymptotic[g] = seen.back();
            continue;
        }
        asymptotic[g] = seen.back();
        if (seen[seen.size() - 2] != seen.back()) report.stabilized = false;
    }
    report.multiplicity = *std::max_element(asymptotic.begin(), asymptotic.end());
    if (report.multiplicity <= 1) return report;

    // A cluster is still short of its asymptotic size below the threshold.
    std::ptrdiff_t last_deficient = -1;
    for (std::size_t i = 0; i < complete.size(); ++i) {
        const auto& cl = report.clusters[complete[i]];
        int expect = 1;
        for (long long n : cl.levels) expect = std::max(expect, asymptotic[wrap(n, lambda)]);
        if (cl.multiplicity() < expect) last_deficient = static_cast<std::ptrdiff_t>(i);
    }
    for (std::size_t i = static_cast<std::size_t>(last_deficient + 1); i < complete.size(); ++i) {
        const auto& cl = report.clusters[complete[i]];
        if (cl.multiplicity() == report.multiplicity) {
            report.threshold_energy = cl.energy;
            break;
        }
    }
    return report;
}

DegeneracyReport classify_degeneracy(const AlgebraParams& p, long long n_max, double tol) {
    const auto lines = analytic_spectrum(p, n_max);
    std::vector<double> energies;
    energies.reserve(lines.size());
    for (const auto& l : lines) energies.push_back(l.energy);
    return classify_levels(energies, p.lambda(), tol);
}

std::size_t GridAxis::count() const {
    if (!(std::isfinite(lo) && std::isfinite(hi) && std::isfinite(step)))
        throw DomainError("grid bounds must be finite");
    if (hi < lo) throw DomainError("grid axis needs lo <= hi");
    if (hi == lo) return 1;
    if (!(step > 0)) throw DomainError("grid step must be positive");
    return static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
}

GridAxis parse_axis(const std::string& text) {
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw DomainError("malformed grid axis '" + text + "'");
        }
        if (used != item.size()) throw DomainError("malformed grid axis '" + text + "'");
        parts.push_back(v);
    }
    GridAxis axis;
    if (parts.size() == 1) {
        axis = {parts[0], parts[0], 1.0};
    } else if (parts.size() == 3) {
        axis = {parts[0], parts[1], parts[2]};
    } else {
        throw DomainError("grid axis must be lo:hi:step, got '" + text + "'");
    }
    (void)axis.count();  // validates
    return axis;
}

namespace {

SweepRecord evaluate_point(int lambda, std::span<const GridAxis> grid,
                           std::span<const std::size_t> strides, std::size_t index,
                           long long n_max, double tol) {
    std::vector<double> head(grid.size());
    std::size_t rest = index;
    for (std::size_t d = 0; d < grid.size(); ++d) {
        head[d] = grid[d].at(rest / strides[d]);
        rest %= strides[d];
    }
    SweepRecord rec;
    rec.index = index;
    rec.params = AlgebraParams::from_head(lambda, std::move(head));
    const auto v = validate_fock(rec.params);
    rec.valid = v.ok();
    rec.violations = v.violations;
    rec.report = classify_degeneracy(rec.params, n_max, tol);
    return rec;
}

}  // namespace

void sweep(int lambda, std::span<const GridAxis> grid, long long n_max, double tol,
           const std::function<void(const SweepRecord&)>& sink, unsigned threads) {
    if (lambda < 2) throw DomainError("lambda must be >= 2");
    if (grid.size() != static_cast<std::size_t>(lambda - 1))
        throw DomainError("grid needs " + std::to_string(lambda - 1) + " axes, got " +
                          std::to_string(grid.size()));
    std::vector<std::size_t> strides(grid.size(), 1);
    std::size_t total = 1;
    for (std::size_t d = grid.size(); d-- > 0;) {
        strides[d] = total;
        total *= grid[d].count();
    }
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

    const std::size_t chunk = 64 * static_cast<std::size_t>(threads);
    for (std::size_t begin = 0; begin < total; begin += chunk) {
        const std::size_t end = std::min(total, begin + chunk);
        std::vector<std::future<std::vector<SweepRecord>>> parts;
        const std::size_t per = (end - begin + threads - 1) / threads;
        for (std::size_t lo = begin; lo < end; lo += per) {
            const std::size_t hi = std::min(end, lo + per);
            parts.push_back(std::async(std::launch::async, [=, &strides] {
                std::vector<SweepRecord> out;
                out.reserve(hi - lo);
                for (std::size_t i = lo; i < hi; ++i)
                    out.push_back(evaluate_point(lambda, grid, strides, i, n_max, tol));
                return out;
            }));
        }
        for (auto& f : parts)
            for (const auto& rec : f.get()) sink(rec);
    }
}

std::vector<SweepRecord> sweep_collect(int lambda, std::span<const GridAxis> grid,
                                       long long n_max, double tol, unsigned threads) {
    std::vector<SweepRecord> out;
    sweep(lambda, grid, n_max, tol, [&](const SweepRecord& r) { out.push_back(r); }, threads);
    return out;
}

}  // namespace cyclic_osc
