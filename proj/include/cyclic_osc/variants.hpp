#pragma once

#include "cyclic_osc/algebra.hpp"
#include "cyclic_osc/fock.hpp"
#include "cyclic_osc/relations.hpp"
#include "cyclic_osc/spectrum.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <numbers>
#include <string>
#include <vector>

namespace cyclic_osc {

enum class VariantKind { pssqm, pssqm_cubic, pseudo_family1, pseudo_family2, ossqm };

std::string to_string(VariantKind kind);

/// A charge / Hamiltonian pair (two charges for OSSQM) realized on one
/// bosonic Fock tower. H is diagonal in the Fock basis for every family.
template <typename Real = double>
struct VariantSolution {
    using Matrix = typename TruncatedRep<Real>::Matrix;

    VariantKind kind = VariantKind::pssqm;
    int mu = 0;
    int order = 0;  ///< p; 2 for the lambda = 3 families
    int lambda = 0;
    Eigen::Index dim = 0;
    std::map<std::string, double> free_params;
    std::map<std::string, double> r_values;
    Matrix Q;
    Matrix Q2;  ///< second charge, OSSQM only
    Matrix H;

    /// Diagonal of H, n = 0..D-1.
    std::vector<double> energies() const {
        std::vector<double> e(static_cast<std::size_t>(dim));
        for (Eigen::Index n = 0; n < dim; ++n) e[n] = static_cast<double>(H(n, n).real());
        return e;
    }
};

/// Longest operator word of the defining relations plus one.
template <typename Real>
int variant_headroom(const VariantSolution<Real>& s) {
    return s.kind == VariantKind::pssqm ? s.order + 2 : 4;
}

namespace detail {

/// N + constant + shift_{n mod lambda}. All diagonal Hamiltonians go through
/// here so equal parameters give bitwise-equal matrices.
template <typename Real>
typename TruncatedRep<Real>::Matrix diagonal_hamiltonian(const TruncatedRep<Real>& r,
                                                         Real constant,
                                                         const std::vector<Real>& shift) {
    return r.diagonal(
        [&](long long n) { return (Real(n) + constant) + shift[wrap(n, r.lambda())]; });
}

template <typename Real>
Real gamma_as(const AlgebraParams& p, long long mu) {
    const auto beta = beta_as<Real>(p);
    const int m = wrap(mu, p.lambda());
    return beta[m] + Real(0.5) * static_cast<Real>(p.alpha()[m]);
}

inline std::string r_name(long long mu, int lambda) {
    return "r_" + std::to_string(wrap(mu, lambda));
}

inline void require_lambda3(const AlgebraParams& p, const char* what) {
    if (p.lambda() != 3)
        throw DomainError(std::string(what) + " needs lambda = 3, got " +
                          std::to_string(p.lambda()));
}

inline void require_phase(double phi) {
    if (!(phi >= 0.0 && phi < 2.0 * std::numbers::pi))
        throw DomainError("phase phi must lie in [0, 2 pi)");
}

/// Charges are weighted shifts and H is diagonal, so operator words are
/// evaluated as sparse products: same values, O(D) per product.
template <typename Real>
using Sparse = Eigen::SparseMatrix<std::complex<Real>>;

template <typename Real, typename Derived>
Sparse<Real> sparse(const Eigen::MatrixBase<Derived>& m) {
    return m.sparseView();
}

template <typename Real>
double sparse_residual(const Sparse<Real>& m, Eigen::Index keep) {
    using Matrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
    return head_residual(Matrix(m), keep);
}

template <typename Matrix>
Matrix power(const Matrix& m, int k) {
    Matrix out = Matrix::Identity(m.rows(), m.cols());
    for (int i = 0; i < k; ++i) out = out * m;
    return out;
}

}  // namespace detail

/// r_{mu+2} of the order-p parasupersymmetric representative.
double pssqm_r(const AlgebraParams& p, int mu);

/// Representative PSSQM solution of order p = lambda - 1, family mu in 0..p:
///   Q = sqrt(2) sum_{nu=1}^p a^dag P_{mu+nu}
///   H = N + (1/2)(2 gamma_{mu+2} + r_{mu+2} - 2p + 3) + sum_{nu=1}^p (p+1-nu) P_{mu+nu}
template <typename Real = double>
VariantSolution<Real> pssqm_build(const TruncatedRep<Real>& r, int mu) {
    using Matrix = typename TruncatedRep<Real>::Matrix;
    const int lambda = r.lambda();
    const int p = lambda - 1;
    if (mu < 0 || mu > p)
        throw DomainError("PSSQM family index " + std::to_string(mu) + " outside [0, " +
                          std::to_string(p) + "]");
    require_fock(r.params);

    VariantSolution<Real> s;
    s.kind = VariantKind::pssqm;
    s.mu = mu;
    s.order = p;
    s.lambda = lambda;
    s.dim = r.dim;
    const double rv = pssqm_r(r.params, mu);
    s.r_values[detail::r_name(mu + 2, lambda)] = rv;

    Matrix proj_sum = Matrix::Zero(r.dim, r.dim);
    std::vector<Real> shift(lambda, Real(0));
    for (int nu = 1; nu <= p; ++nu) {
        proj_sum += r.P(mu + nu);
        shift[wrap(mu + nu, lambda)] = Real(p + 1 - nu);
    }
    s.Q = std::sqrt(Real(2)) * (r.adag * proj_sum);
    const Real constant =
        detail::gamma_as<Real>(r.params, mu + 2) + Real(0.5) * (Real(rv) + Real(3 - 2 * p));
    s.H = detail::diagonal_hamiltonian(r, constant, shift);
    return s;
}

/// Q^{p+1} = 0 with Q^p != 0, [H, Q] = 0 and
/// sum_{j=0}^p Q^{p-j} Q^dag Q^j = 2p Q^{p-1} H, on the block n < D - (p+2).
template <typename Real>
RelationReport pssqm_check(const VariantSolution<Real>& s, double tol) {
    using SparseM = detail::Sparse<Real>;
    const int p = s.order;
    const int headroom = variant_headroom(s);
    const Eigen::Index keep = s.dim - headroom;
    RelationReport rep;
    rep.headroom = headroom;
    rep.tol = tol;

    const SparseM q = detail::sparse<Real>(s.Q);
    const SparseM qdag = q.adjoint();
    const SparseM h = detail::sparse<Real>(s.H);
    std::vector<SparseM> qpow{detail::sparse<Real>(s.Q.Identity(s.dim, s.dim))};
    for (int k = 1; k <= p + 1; ++k) qpow.push_back(qpow.back() * q);

    rep.add("Q^{p+1} = 0", detail::sparse_residual<Real>(qpow[p + 1], keep));
    rep.add_nonzero("Q^p != 0", detail::sparse_residual<Real>(qpow[p], keep));
    rep.add("[H, Q] = 0", detail::sparse_residual<Real>(SparseM(h * q - q * h), keep));
    SparseM lhs(s.dim, s.dim);
    for (int j = 0; j <= p; ++j) lhs += SparseM(qpow[p - j] * qdag) * qpow[j];
    const SparseM rhs = std::complex<Real>(Real(2 * p)) * SparseM(qpow[p - 1] * h);
    rep.add("sum_j Q^{p-j} Q^dag Q^j = 2p Q^{p-1} H",
            detail::sparse_residual<Real>(SparseM(lhs - rhs), keep));
    return rep;
}

/// [Q, [Q^dag, Q]] = 2 Q H for an order-2 solution. Whether it holds depends
/// on alpha; the report is data. A zero charge is flagged degenerate.
template <typename Real>
RelationReport pssqm_cubic_check(const VariantSolution<Real>& s, double tol) {
    using SparseM = detail::Sparse<Real>;
    if (s.order != 2)
        throw DomainError("cubic relation applies to order 2, got " + std::to_string(s.order));
    const int headroom = 4;
    RelationReport rep;
    rep.headroom = headroom;
    rep.tol = tol;
    rep.degenerate = s.Q.cwiseAbs().maxCoeff() == Real(0);
    const SparseM q = detail::sparse<Real>(s.Q);
    const SparseM qdag = q.adjoint();
    const SparseM h = detail::sparse<Real>(s.H);
    const SparseM inner = qdag * q - q * qdag;
    const SparseM lhs = q * inner - inner * q;
    rep.add("[Q, [Q^dag, Q]] = 2 Q H",
            detail::sparse_residual<Real>(SparseM(lhs - std::complex<Real>(2) * SparseM(q * h)),
                                          s.dim - headroom));
    return rep;
}

namespace detail {

template <typename Real>
VariantSolution<Real> pseudo_family1_unchecked(const TruncatedRep<Real>& r, int mu, double c,
                                               double eta, double phi) {
    using Scalar = typename TruncatedRep<Real>::Scalar;
    const int lambda = r.lambda();
    VariantSolution<Real> s;
    s.kind = VariantKind::pseudo_family1;
    s.mu = mu;
    s.order = 2;
    s.lambda = lambda;
    s.dim = r.dim;
    s.free_params = {{"c", c}, {"eta", eta}, {"phi", phi}};

    const Real cr = Real(c), er = Real(eta);
    const Real canonical = std::sqrt(Real(2)) * std::abs(cr);
    // eta = sqrt(2)|c| is the r = 0 member of the family; snap rounding.
    Real rv = (Real(1) + Real(r.params.alpha(mu + 2))) * (er * er - Real(2) * cr * cr) /
              (Real(2) * cr * cr);
    if (std::abs(er - canonical) <= Real(4) * std::numeric_limits<Real>::epsilon() * canonical)
        rv = Real(0);
    s.r_values[r_name(mu + 2, lambda)] = static_cast<double>(rv);

    const Scalar partner =
        std::polar(Real(1), Real(phi)) * std::sqrt(Scalar(Real(4) * cr * cr - er * er));
    s.Q = (er * r.adag + partner * r.a) * r.P(mu + 2);
    std::vector<Real> shift(lambda, Real(0));
    shift[wrap(mu + 1, lambda)] = Real(2);
    shift[wrap(mu + 2, lambda)] = Real(1);
    s.H = diagonal_hamiltonian(r, gamma_as<Real>(r.params, mu + 2) + Real(0.5) * (rv - Real(1)),
                               shift);
    return s;
}

}  // namespace detail

/// First pseudosupersymmetric family (lambda = 3), 0 < eta < 2|c|:
///   Q = (eta a^dag + e^{i phi} sqrt(4c^2 - eta^2) a) P_{mu+2}
///   H = N + (1/2)(2 gamma_{mu+2} + r_{mu+2} - 1) + 2 P_{mu+1} + P_{mu+2}
///   r_{mu+2} = (1 + alpha_{mu+2})(eta^2 - 2c^2) / (2c^2)
template <typename Real = double>
VariantSolution<Real> pseudo_family1_build(const TruncatedRep<Real>& r, int mu, double c,
                                           double eta, double phi) {
    detail::require_lambda3(r.params, "pseudosupersymmetric family 1");
    if (mu < 0 || mu > 2) throw DomainError("family index must be 0, 1 or 2");
    if (c == 0.0 || !std::isfinite(c)) throw DomainError("c must be finite and nonzero");
    if (!(eta > 0.0 && eta < 2.0 * std::abs(c)))
        throw DomainError("eta must lie in the open interval (0, 2|c|)");
    detail::require_phase(phi);
    require_fock(r.params);
    return detail::pseudo_family1_unchecked(r, mu, c, eta, phi);
}

/// Family 1 without parameter checks; eta > 2|c| gives an imaginary partner
/// coefficient. Used for negative controls.
template <typename Real = double>
VariantSolution<Real> pseudo_family1_raw(const TruncatedRep<Real>& r, int mu, double c,
                                         double eta, double phi) {
    return detail::pseudo_family1_unchecked(r, mu, c, eta, phi);
}

/// Second family (lambda = 3), one real parameter r_mu:
///   Q = 2|c| a P_{mu+2}
///   H = N + (1/2)(2 gamma_{mu+2} - alpha_{mu+2})
///         + (1/2)(1 - alpha_{mu+1} + alpha_{mu+2} + r_mu) P_mu + P_{mu+1}
template <typename Real = double>
VariantSolution<Real> pseudo_family2_build(const TruncatedRep<Real>& r, int mu, double c,
                                           double r_mu) {
    detail::require_lambda3(r.params, "pseudosupersymmetric family 2");
    if (mu < 0 || mu > 2) throw DomainError("family index must be 0, 1 or 2");
    if (c == 0.0 || !std::isfinite(c)) throw DomainError("c must be finite and nonzero");
    if (!std::isfinite(r_mu)) throw DomainError("r_mu must be finite");
    require_fock(r.params);
    const int lambda = r.lambda();
    const auto& p = r.params;

    VariantSolution<Real> s;
    s.kind = VariantKind::pseudo_family2;
    s.mu = mu;
    s.order = 2;
    s.lambda = lambda;
    s.dim = r.dim;
    s.free_params = {{"c", c}, {"r_mu", r_mu}};
    s.r_values[detail::r_name(mu, lambda)] = r_mu;

    s.Q = Real(2 * std::abs(c)) * (r.a * r.P(mu + 2));
    std::vector<Real> shift(lambda, Real(0));
    shift[wrap(mu, lambda)] =
        Real(0.5) * (Real(1) - Real(p.alpha(mu + 1)) + Real(p.alpha(mu + 2)) + Real(r_mu));
    shift[wrap(mu + 1, lambda)] = Real(1);
    const Real constant =
        detail::gamma_as<Real>(p, mu + 2) - Real(0.5) * Real(p.alpha(mu + 2));
    s.H = detail::diagonal_hamiltonian(r, constant, shift);
    return s;
}

/// r_mu = (alpha_{mu+1} - alpha_{mu+2} + 3) mod 6, as the representative in
/// [0, 6) shifted by 6 * offset.
double family2_equal_spacing_r(const AlgebraParams& p, int mu, int offset = 0);

/// Q^2 = 0, [H, Q] = 0, Q Q^dag Q = 4 c^2 Q H on the block n < D - 4.
template <typename Real>
RelationReport pseudo_check(const VariantSolution<Real>& s, double tol) {
    using SparseM = detail::Sparse<Real>;
    if (s.kind != VariantKind::pseudo_family1 && s.kind != VariantKind::pseudo_family2)
        throw DomainError("pseudo_check needs a pseudosupersymmetric solution");
    const Real c = Real(s.free_params.at("c"));
    const int headroom = variant_headroom(s);
    const Eigen::Index keep = s.dim - headroom;
    RelationReport rep;
    rep.headroom = headroom;
    rep.tol = tol;
    const SparseM q = detail::sparse<Real>(s.Q);
    const SparseM h = detail::sparse<Real>(s.H);
    rep.add("Q^2 = 0", detail::sparse_residual<Real>(SparseM(q * q), keep));
    rep.add("[H, Q] = 0", detail::sparse_residual<Real>(SparseM(h * q - q * h), keep));
    const SparseM lhs = SparseM(q * SparseM(q.adjoint())) * q;
    const SparseM rhs = std::complex<Real>(Real(4) * c * c) * SparseM(q * h);
    rep.add("Q Q^dag Q = 4 c^2 Q H", detail::sparse_residual<Real>(SparseM(lhs - rhs), keep));
    return rep;
}

/// Order-2 orthosupersymmetric families mu in {0, 1}; needs alpha_{mu+1} = -1.
///   Q1 = xi a P_{mu+2} + e^{i phi} sqrt(2 - xi^2) a^dag P_mu
///   Q2 = -e^{-i phi} sqrt(2 - xi^2) a P_{mu+2} + xi a^dag P_mu
///   H  = N + (1/2)(2 gamma_{mu+1} - 1) + 2 P_mu + P_{mu+1}
template <typename Real = double>
VariantSolution<Real> ossqm_build(const TruncatedRep<Real>& r, int mu, double xi, double phi) {
    using Scalar = typename TruncatedRep<Real>::Scalar;
    detail::require_lambda3(r.params, "orthosupersymmetric solution");
    if (mu == 2)
        throw DomainError(
            "no orthosupersymmetric family mu = 2: the absence of a third family follows from "
            "alpha_0 = -1 being incompatible with the Fock condition F(1) > 0");
    if (mu < 0 || mu > 1) throw DomainError("orthosupersymmetric family index must be 0 or 1");
    const double root2 = std::sqrt(2.0);
    if (!(xi > 0.0 && xi <= root2 * (1.0 + 4.0 * std::numeric_limits<double>::epsilon())))
        throw DomainError("xi must lie in (0, sqrt(2)]");
    detail::require_phase(phi);
    const auto& p = r.params;
    if (std::abs(p.alpha(mu + 1) + 1.0) > kRealTolerance)
        throw DomainError("orthosupersymmetric family " + std::to_string(mu) + " needs alpha_" +
                          std::to_string(wrap(mu + 1, 3)) + " = -1");
    require_fock(p);

    VariantSolution<Real> s;
    s.kind = VariantKind::ossqm;
    s.mu = mu;
    s.order = 2;
    s.lambda = 3;
    s.dim = r.dim;
    s.free_params = {{"xi", xi}, {"phi", phi}};

    const Real x = Real(xi);
    const Real partner = std::sqrt(std::max(Real(0), Real(2) - x * x));
    const Scalar e = std::polar(Real(1), Real(phi));
    const auto& lower = r.P(mu + 2);
    const auto& upper = r.P(mu);
    s.Q = x * (r.a * lower) + (e * partner) * (r.adag * upper);
    s.Q2 = (-std::conj(e) * partner) * (r.a * lower) + x * (r.adag * upper);
    std::vector<Real> shift(3, Real(0));
    shift[wrap(mu, 3)] = Real(2);
    shift[wrap(mu + 1, 3)] = Real(1);
    s.H = detail::diagonal_hamiltonian(r, detail::gamma_as<Real>(p, mu + 1) - Real(0.5), shift);
    return s;
}

/// Q_r Q_s = 0 (4), [H, Q_r] = 0 (2), Q_r Q_s^dag + delta_rs sum_t Q_t^dag Q_t
/// = 2 delta_rs H for rs = 11, 12, 22, plus the summed corollary
/// Q_1 Q_1^dag + Q_2 Q_2^dag + 2 sum_t Q_t^dag Q_t = 4 H.
template <typename Real>
RelationReport ossqm_check(const VariantSolution<Real>& s, double tol) {
    using SparseM = detail::Sparse<Real>;
    if (s.kind != VariantKind::ossqm)
        throw DomainError("ossqm_check needs an orthosupersymmetric solution");
    const int headroom = variant_headroom(s);
    const Eigen::Index keep = s.dim - headroom;
    RelationReport rep;
    rep.headroom = headroom;
    rep.tol = tol;
    const SparseM q[2] = {detail::sparse<Real>(s.Q), detail::sparse<Real>(s.Q2)};
    const SparseM qdag[2] = {q[0].adjoint(), q[1].adjoint()};
    const SparseM h = detail::sparse<Real>(s.H);
    const SparseM number_sum = qdag[0] * q[0] + qdag[1] * q[1];
    const auto res = [&](const SparseM& m) { return detail::sparse_residual<Real>(m, keep); };
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            rep.add("Q_" + std::to_string(a + 1) + " Q_" + std::to_string(b + 1) + " = 0",
                    res(q[a] * q[b]));
    for (int a = 0; a < 2; ++a)
        rep.add("[H, Q_" + std::to_string(a + 1) + "] = 0", res(h * q[a] - q[a] * h));
    for (int a = 0; a < 2; ++a) {
        for (int b = a; b < 2; ++b) {
            SparseM lhs = q[a] * qdag[b];
            if (a == b) lhs = lhs + number_sum - std::complex<Real>(2) * h;
            rep.add("Q_" + std::to_string(a + 1) + " Q_" + std::to_string(b + 1) + "^dag" +
                        (a == b ? " + sum_t Q_t^dag Q_t = 2H" : " = 0"),
                    res(lhs));
        }
    }
    const SparseM summed = SparseM(q[0] * qdag[0]) + SparseM(q[1] * qdag[1]) +
                           std::complex<Real>(2) * number_sum;
    rep.add("corollary: sum_r Q_r Q_r^dag + 2 sum_t Q_t^dag Q_t = 4H",
            res(summed - std::complex<Real>(4) * h));
    return rep;
}

struct GroundState {
    double energy = 0.0;
    int multiplicity = 0;
    bool broken = false;  ///< energy > tol
};

template <typename Real>
GroundState ground_state_analysis(const VariantSolution<Real>& s, double tol) {
    const auto e = s.energies();
    GroundState g;
    g.energy = *std::min_element(e.begin(), e.end());
    for (double v : e)
        if (v - g.energy <= tol) ++g.multiplicity;
    g.broken = g.energy > tol;
    return g;
}

/// Complete clusters of the H diagonal on the headroom block.
template <typename Real>
std::vector<LevelCluster> variant_levels(const VariantSolution<Real>& s, double tol) {
    auto e = s.energies();
    e.resize(static_cast<std::size_t>(s.dim - variant_headroom(s)));
    return complete_clusters(e, s.lambda, tol);
}

}  // namespace cyclic_osc
