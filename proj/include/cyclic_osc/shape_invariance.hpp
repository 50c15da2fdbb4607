#pragma once

#include "cyclic_osc/algebra.hpp"
#include "cyclic_osc/fock.hpp"
#include "cyclic_osc/relations.hpp"

#include <Eigen/Dense>

#include <sstream>
#include <string>
#include <vector>

namespace cyclic_osc {

/// Inequalities of the window -1 < alpha_0 < lambda-1,
/// -1 < alpha_mu < lambda-mu-1-sum_{nu<mu} alpha_nu (mu = 1..lambda-2)
/// that fail for p. Empty when every level spacing omega_mu is positive and
/// the Fock condition holds.
std::vector<std::string> window_violations(const AlgebraParams& p);

/// SUSY partner hierarchy of period p = lambda, realized on the Fock spaces
/// of the p cyclically shifted algebras: A_mu = a_mu, H^(mu) = F(N + mu).
///
/// The shape invariance condition on superpotentials is not solved; only its
/// algebraic consequences (partner relations, spacings omega_mu) are built.
template <typename Real = double>
struct Hierarchy {
    using Matrix = typename TruncatedRep<Real>::Matrix;

    int period = 0;
    Eigen::Index dim = 0;
    std::vector<TruncatedRep<Real>> reps;  ///< reps[mu] from cyclic_shift(params, mu)
    std::vector<Real> e0;                  ///< ground energies E0^(mu), mu = 0..p
    std::vector<Real> omega;               ///< 1 + alpha_mu, mu = 0..p-1
    std::vector<Matrix> hmats;             ///< H^(mu), mu = 0..p

    const Matrix& A(long long mu) const { return reps[wrap(mu, period)].a; }
    const Matrix& Adag(long long mu) const { return reps[wrap(mu, period)].adag; }
};

template <typename Real = double>
Hierarchy<Real> build_hierarchy(const AlgebraParams& p, Eigen::Index dim) {
    if (const auto bad = window_violations(p); !bad.empty()) {
        std::ostringstream msg;
        msg << "parameters outside the shape-invariance window:";
        for (const auto& b : bad) msg << ' ' << b << ';';
        throw DomainError(msg.str());
    }
    Hierarchy<Real> h;
    h.period = p.lambda();
    h.dim = dim;
    for (int mu = 0; mu < h.period; ++mu)
        h.reps.push_back(build_rep<Real>(cyclic_shift(p, mu), dim));

    const auto beta = beta_as<Real>(p);
    h.e0.assign(1, Real(0));
    for (int mu = 0; mu < h.period; ++mu) {
        h.omega.push_back(Real(1) + static_cast<Real>(p.alpha()[mu]));
        h.e0.push_back(h.e0.back() + h.omega.back());
    }
    for (int mu = 0; mu <= h.period; ++mu)
        h.hmats.push_back(h.reps[0].diagonal(
            [&](long long n) { return structure_function_as(beta, n + mu); }));
    return h;
}

/// H^(mu) = A_{mu-1} A^dag_{mu-1} + E0^(mu-1) = A^dag_mu A_mu + E0^(mu) for
/// mu = 1..p, H^(0) = A^dag_0 A_0, the ground energies, and the level
/// spacings F(n+mu+1) - F(n+mu) = omega_{(n+mu) mod p}.
template <typename Real>
RelationReport partner_check(const Hierarchy<Real>& h, double tol,
                             int headroom = kDefaultHeadroom) {
    using Matrix = typename Hierarchy<Real>::Matrix;
    const Eigen::Index keep = h.dim - headroom;
    const Matrix I = Matrix::Identity(h.dim, h.dim);
    RelationReport rep;
    rep.headroom = headroom;
    rep.tol = tol;

    rep.add("H^(0) = A^dag_0 A_0", head_residual(Matrix(h.hmats[0] - h.Adag(0) * h.A(0)), keep));
    double lower = 0, upper = 0, ground = 0, spacing = 0;
    for (int mu = 1; mu <= h.period; ++mu) {
        const Matrix from_below = h.A(mu - 1) * h.Adag(mu - 1) + h.e0[mu - 1] * I;
        const Matrix from_above = h.Adag(mu) * h.A(mu) + h.e0[mu] * I;
        lower = std::max(lower, head_residual(Matrix(h.hmats[mu] - from_below), keep));
        upper = std::max(upper, head_residual(Matrix(h.hmats[mu] - from_above), keep));
    }
    for (int mu = 0; mu <= h.period; ++mu) {
        const auto& H = h.hmats[mu];
        ground = std::max(ground, static_cast<double>(std::abs(
                                      H.diagonal().head(keep).real().minCoeff() - h.e0[mu])));
        for (Eigen::Index n = 0; n + 1 < keep; ++n) {
            const Real gap = (H(n + 1, n + 1) - H(n, n)).real();
            spacing = std::max(spacing, static_cast<double>(std::abs(
                                            gap - h.omega[wrap(n + mu, h.period)])));
        }
    }
    rep.add("H^(mu) = A_{mu-1} A^dag_{mu-1} + E0^(mu-1)", lower);
    rep.add("H^(mu) = A^dag_mu A_mu + E0^(mu)", upper);
    rep.add("min spec H^(mu) = E0^(mu)", ground);
    rep.add("H^(mu) level spacing = omega", spacing);
    return rep;
}

/// The sector-mu sqm(2) triple as explicit 2D x 2D block matrices.
template <typename Real = double>
struct BlockPair {
    using Matrix = typename TruncatedRep<Real>::Matrix;

    int mu = 0;
    Matrix H;     ///< diag(H^(mu) - E0^(mu), H^(mu+1) - E0^(mu))
    Matrix Qdag;  ///< [[0, A^dag_mu], [0, 0]]
    Matrix Q;     ///< [[0, 0], [A_mu, 0]]
};

template <typename Real>
BlockPair<Real> block_pair(const Hierarchy<Real>& h, int mu) {
    using Matrix = typename Hierarchy<Real>::Matrix;
    if (mu < 0 || mu >= h.period)
        throw DomainError("sector " + std::to_string(mu) + " outside [0, p)");
    const Eigen::Index d = h.dim;
    const Matrix I = Matrix::Identity(d, d);
    BlockPair<Real> b;
    b.mu = mu;
    b.H = Matrix::Zero(2 * d, 2 * d);
    b.H.topLeftCorner(d, d) = h.hmats[mu] - h.e0[mu] * I;
    b.H.bottomRightCorner(d, d) = h.hmats[mu + 1] - h.e0[mu] * I;
    b.Qdag = Matrix::Zero(2 * d, 2 * d);
    b.Qdag.topRightCorner(d, d) = h.Adag(mu);
    b.Q = Matrix::Zero(2 * d, 2 * d);
    b.Q.bottomLeftCorner(d, d) = h.A(mu);
    return b;
}

/// Q^2 = 0, [H, Q] = 0, {Q, Q^dag} = H for sector mu, on the headroom block
/// of each diagonal sub-block.
template <typename Real>
RelationReport sqm2_check(const Hierarchy<Real>& h, int mu, double tol,
                          int headroom = kDefaultHeadroom) {
    using Matrix = typename Hierarchy<Real>::Matrix;
    const auto b = block_pair(h, mu);
    const auto idx = block_head_indices(h.dim, h.dim - headroom, 2);
    RelationReport rep;
    rep.headroom = headroom;
    rep.tol = tol;
    rep.add("Q^dag = (Q)^dag", indexed_residual(Matrix(b.Qdag - b.Q.adjoint()), idx));
    rep.add("Q^2 = 0", indexed_residual(Matrix(b.Q * b.Q), idx));
    rep.add("[H, Q] = 0", indexed_residual(Matrix(b.H * b.Q - b.Q * b.H), idx));
    rep.add("{Q, Q^dag} = H", indexed_residual(Matrix(b.Q * b.Qdag + b.Qdag * b.Q - b.H), idx));
    return rep;
}

/// Diagonal of H^(mu) for n < count, per sector mu = 0..p-1.
template <typename Real>
std::vector<std::vector<double>> sector_spectra(const Hierarchy<Real>& h, Eigen::Index count) {
    std::vector<std::vector<double>> out;
    for (int mu = 0; mu < h.period; ++mu) {
        std::vector<double> e;
        for (Eigen::Index n = 0; n < std::min(count, h.dim); ++n)
            e.push_back(static_cast<double>(h.hmats[mu](n, n).real()));
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace cyclic_osc
