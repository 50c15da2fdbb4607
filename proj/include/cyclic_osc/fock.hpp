#pragma once

#include "cyclic_osc/algebra.hpp"
#include "cyclic_osc/relations.hpp"

#include <Eigen/Dense>

#include <complex>
#include <numbers>
#include <string>
#include <vector>

namespace cyclic_osc {

/// Dense matrix representation of a, a^dagger, N, T and the grade projectors
/// P_mu on the truncated Fock basis |0>..|D-1>. The vacuum is index 0.
///
/// Matrices are complex even where real (a, N, P) so that charges built from
/// T or phases share one scalar type. Products are dense, O(D^3).
template <typename Real = double>
struct TruncatedRep {
    using Scalar = std::complex<Real>;
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

    AlgebraParams params;
    Eigen::Index dim = 0;
    Matrix a;     ///< a|n> = sqrt(F(n)) |n-1>
    Matrix adag;  ///< a^dagger|n> = sqrt(F(n+1)) |n+1>, cut at n+1 = D
    Matrix nmat;
    Matrix tmat;  ///< exp(i 2 pi N / lambda)
    std::vector<Matrix> proj;

    int lambda() const noexcept { return params.lambda(); }
    const Matrix& P(long long mu) const { return proj[wrap(mu, lambda())]; }
    Matrix identity() const { return Matrix::Identity(dim, dim); }

    /// Diagonal matrix f(n) for n = 0..D-1.
    template <typename Fn>
    Matrix diagonal(Fn&& f) const {
        Matrix m = Matrix::Zero(dim, dim);
        for (Eigen::Index n = 0; n < dim; ++n) m(n, n) = Scalar(f(static_cast<long long>(n)));
        return m;
    }
};

template <typename Real = double>
TruncatedRep<Real> build_rep(const AlgebraParams& p, Eigen::Index dim) {
    using Rep = TruncatedRep<Real>;
    using Scalar = typename Rep::Scalar;
    require_fock(p);
    const int lambda = p.lambda();
    if (dim < 2 * lambda)
        throw DomainError("truncation dimension " + std::to_string(dim) + " below 2*lambda = " +
                          std::to_string(2 * lambda));

    const auto beta = beta_as<Real>(p);
    Rep r{p, dim, {}, {}, {}, {}, {}};
    r.a = Rep::Matrix::Zero(dim, dim);
    for (Eigen::Index n = 1; n < dim; ++n)
        r.a(n - 1, n) = Scalar(std::sqrt(structure_function_as(beta, n)));
    r.adag = r.a.adjoint();
    r.nmat = r.diagonal([](long long n) { return Real(n); });

    const Real two_pi = 2 * std::numbers::pi_v<Real>;
    r.tmat = Rep::Matrix::Zero(dim, dim);
    for (Eigen::Index n = 0; n < dim; ++n)
        r.tmat(n, n) = std::polar(Real(1), two_pi * Real(n % lambda) / Real(lambda));

    r.proj.reserve(lambda);
    for (int mu = 0; mu < lambda; ++mu)
        r.proj.push_back(
            r.diagonal([&](long long n) { return wrap(n, lambda) == mu ? Real(1) : Real(0); }));
    return r;
}

/// Default headroom: covers every word of length <= 2.
inline constexpr int kDefaultHeadroom = 3;

/// Defining relations in projector and T form, plus a^dagger a = F(N),
/// a a^dagger = F(N+1), on the block n < D - headroom.
template <typename Real>
RelationReport check_relations(const TruncatedRep<Real>& r, double tol,
                               int headroom = kDefaultHeadroom) {
    using Matrix = typename TruncatedRep<Real>::Matrix;
    using Scalar = typename TruncatedRep<Real>::Scalar;
    const int lambda = r.lambda();
    const Eigen::Index keep = r.dim - headroom;
    const Matrix I = r.identity();
    const auto beta = beta_as<Real>(r.params);

    RelationReport rep;
    rep.headroom = headroom;
    rep.tol = tol;
    auto res = [&](const auto& m) { return head_residual(m, keep); };

    rep.add("hermiticity a^dag = (a)^dag", res(r.adag - r.a.adjoint()));
    rep.add("[N, a^dag] = a^dag", res(Matrix(r.nmat * r.adag - r.adag * r.nmat - r.adag)));
    rep.add("[N, a] = -a", res(Matrix(r.nmat * r.a - r.a * r.nmat + r.a)));

    double commute_np = 0, grading = 0, idempotent = 0;
    Matrix sum_p = Matrix::Zero(r.dim, r.dim);
    Matrix g = I;
    for (int mu = 0; mu < lambda; ++mu) {
        const Matrix& pm = r.P(mu);
        sum_p += pm;
        g += Scalar(Real(r.params.alpha()[mu])) * pm;
        commute_np = std::max(commute_np, res(Matrix(r.nmat * pm - pm * r.nmat)));
        grading = std::max(grading, res(Matrix(r.adag * pm - r.P(mu + 1) * r.adag)));
        for (int nu = 0; nu < lambda; ++nu) {
            Matrix expect = mu == nu ? pm : Matrix::Zero(r.dim, r.dim);
            idempotent = std::max(idempotent, res(Matrix(pm * r.P(nu) - expect)));
        }
    }
    rep.add("[N, P_mu] = 0", commute_np);
    rep.add("sum P_mu = I", res(sum_p - I));
    rep.add("[a, a^dag] = I + sum alpha_mu P_mu",
            res(Matrix(r.a * r.adag - r.adag * r.a - g)));
    rep.add("a^dag P_mu = P_{mu+1} a^dag", grading);
    rep.add("P_mu P_nu = delta_{mu nu} P_mu", idempotent);

    const Matrix f_n = r.diagonal([&](long long n) { return structure_function_as(beta, n); });
    const Matrix f_n1 =
        r.diagonal([&](long long n) { return structure_function_as(beta, n + 1); });
    rep.add("a^dag a = F(N)", res(Matrix(r.adag * r.a - f_n)));
    rep.add("a a^dag = F(N+1)", res(Matrix(r.a * r.adag - f_n1)));

    // T form: T^lambda = I, a^dag T = e^{-i 2pi/lambda} T a^dag, and the
    // projectors recovered from powers of T.
    const Real two_pi = 2 * std::numbers::pi_v<Real>;
    std::vector<Matrix> tpow{I};
    for (int nu = 1; nu <= lambda; ++nu) tpow.push_back(tpow.back() * r.tmat);
    rep.add("T^lambda = I", res(tpow[lambda] - I));
    const Scalar phase = std::polar(Real(1), -two_pi / Real(lambda));
    rep.add("a^dag T = e^{-i2pi/lambda} T a^dag",
            res(Matrix(r.adag * r.tmat - phase * r.tmat * r.adag)));
    double from_t = 0;
    for (int mu = 0; mu < lambda; ++mu) {
        Matrix acc = Matrix::Zero(r.dim, r.dim);
        for (int nu = 0; nu < lambda; ++nu)
            acc += std::polar(Real(1), -two_pi * Real(mu * nu) / Real(lambda)) * tpow[nu];
        from_t = std::max(from_t, res(Matrix(acc / Scalar(Real(lambda)) - r.P(mu))));
    }
    rep.add("P_mu = (1/lambda) sum_nu e^{-i2pi mu nu/lambda} T^nu", from_t);
    return rep;
}

/// lambda = 2: T is the Klein operator (-1)^N and [a, a^dag] = I + kappa (-1)^N
/// with kappa = alpha_0.
template <typename Real>
RelationReport klein_reduction_check(const TruncatedRep<Real>& r, double tol,
                                     int headroom = kDefaultHeadroom) {
    using Matrix = typename TruncatedRep<Real>::Matrix;
    using Scalar = typename TruncatedRep<Real>::Scalar;
    if (r.lambda() != 2)
        throw DomainError("Klein reduction needs lambda = 2, got " + std::to_string(r.lambda()));
    const Matrix klein = r.diagonal([](long long n) { return n % 2 == 0 ? Real(1) : Real(-1); });
    const Scalar kappa(Real(r.params.alpha()[0]));

    RelationReport rep;
    rep.headroom = headroom;
    rep.tol = tol;
    rep.add("T = (-1)^N", static_cast<double>((r.tmat - klein).cwiseAbs().maxCoeff()));
    rep.add("[a, a^dag] = I + kappa (-1)^N",
            head_residual(Matrix(r.a * r.adag - r.adag * r.a - r.identity() - kappa * klein),
                          r.dim - headroom));
    return rep;
}

}  // namespace cyclic_osc
