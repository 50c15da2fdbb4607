#pragma once

#include "cyclic_osc/algebra.hpp"
#include "cyclic_osc/fock.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cyclic_osc {

struct SpectrumLine {
    long long n = 0;
    long long k = 0;
    int mu = 0;
    double energy = 0.0;
};

/// A set of levels sharing one energy within tolerance.
struct LevelCluster {
    double energy = 0.0;      ///< energy of the lowest member
    std::vector<long long> levels;

    int multiplicity() const noexcept { return static_cast<int>(levels.size()); }
};

struct DegeneracyReport {
    /// 1 means nondegenerate; m >= 2 means m-fold degenerate above the threshold.
    int multiplicity = 1;
    std::optional<double> threshold_energy;
    std::vector<LevelCluster> clusters;  ///< every level index exactly once, ascending energy
    /// The last two complete periods showed the same cluster signature.
    bool stabilized = false;

    bool nondegenerate() const noexcept { return multiplicity == 1; }
    /// "nondegenerate" or "<m>-fold-above-threshold".
    std::string pattern() const;
};

/// H0 = (1/2){a, a^dag} as a real matrix. Verifies that on the headroom
/// block it is diagonal and equals N + 1/2 + sum gamma_mu P_mu; a mismatch
/// is an internal error (std::logic_error).
template <typename Real>
Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> h0(const TruncatedRep<Real>& r) {
    using Matrix = typename TruncatedRep<Real>::Matrix;
    const Matrix anti = (r.a * r.adag + r.adag * r.a) * Real(0.5);
    Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> out = anti.real();

    const auto beta = beta_as<Real>(r.params);
    const Eigen::Index keep = r.dim - kDefaultHeadroom;
    const Real scale = Real(64) * std::numeric_limits<Real>::epsilon() *
                       (Real(r.dim) + Real(1) + beta.back());
    for (Eigen::Index i = 0; i < keep; ++i) {
        for (Eigen::Index j = 0; j < keep; ++j) {
            if (i != j && anti(i, j) != typename TruncatedRep<Real>::Scalar(0))
                throw std::logic_error("H0 is not diagonal on the headroom block");
        }
        const int mu = wrap(i, r.lambda());
        const Real gamma = beta[mu] + Real(0.5) * Real(r.params.alpha()[mu]);
        const Real expect = Real(i) + Real(0.5) + gamma;
        if (std::abs(out(i, i) - expect) > scale || std::abs(anti(i, i).imag()) > scale)
            throw std::logic_error("H0 diagonal disagrees with N + 1/2 + sum gamma P");
    }
    return out;
}

/// E_{k lambda + mu} = k lambda + mu + gamma_mu + 1/2 for n = 0..n_max.
std::vector<SpectrumLine> analytic_spectrum(const AlgebraParams& p, long long n_max);

/// Groups energies into clusters: a level joins the current cluster when it
/// lies within tol of the cluster's lowest energy. Level index = position.
std::vector<LevelCluster> cluster_levels(std::span<const double> energies, double tol);

/// Energy up to which every grade ladder (n mod lambda) is fully present in
/// `energies` (indexed by n): the minimum over ladders of their highest level.
double complete_energy_cutoff(std::span<const double> energies, int lambda);

/// Clusters lying entirely below complete_energy_cutoff (+ tol).
std::vector<LevelCluster> complete_clusters(std::span<const double> energies, int lambda,
                                            double tol);

/// Constant gap between distinct levels, and multiplicities above the ground
/// level that never decrease (a regular ladder may fill in at the bottom but
/// does not alternate).
struct SpacingReport {
    bool uniform_gap = false;
    bool monotone_excited_multiplicity = false;
    double gap = 0.0;
    int excited_multiplicity = 0;  ///< multiplicity of the highest cluster

    bool equally_spaced() const noexcept { return uniform_gap && monotone_excited_multiplicity; }
};

SpacingReport spacing_report(const std::vector<LevelCluster>& clusters, double tol);

inline constexpr double kDegeneracyTolerance = 1e-9;

DegeneracyReport classify_degeneracy(const AlgebraParams& p, long long n_max,
                                     double tol = kDegeneracyTolerance);

/// Classification of an arbitrary level list whose index n carries grade
/// n mod lambda. Used for H0 and for variant Hamiltonians.
DegeneracyReport classify_levels(std::span<const double> energies, int lambda, double tol);

/// One axis lo:hi:step, inclusive of hi up to rounding.
struct GridAxis {
    double lo = 0.0;
    double hi = 0.0;
    double step = 1.0;

    std::size_t count() const;
    double at(std::size_t i) const { return lo + static_cast<double>(i) * step; }
};

/// Parses "lo:hi:step" (or a single value "v").
GridAxis parse_axis(const std::string& text);

struct SweepRecord {
    std::size_t index = 0;
    AlgebraParams params;
    bool valid = false;
    std::vector<int> violations;
    DegeneracyReport report;
};

/// Streams one record per grid point in row-major order (alpha_0 slowest).
/// Points are evaluated concurrently in bounded chunks; the sink sees them in
/// grid order. Invalid points are flagged, still classified, never skipped.
void sweep(int lambda, std::span<const GridAxis> grid, long long n_max, double tol,
           const std::function<void(const SweepRecord&)>& sink, unsigned threads = 0);

std::vector<SweepRecord> sweep_collect(int lambda, std::span<const GridAxis> grid,
                                       long long n_max, double tol, unsigned threads = 0);

}  // namespace cyclic_osc
