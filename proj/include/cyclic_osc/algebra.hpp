#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace cyclic_osc {

/// Raised when an argument lies outside the domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when kappa parameters break the conjugation symmetry
/// kappa_mu^* = kappa_{lambda-mu}, or a Fourier image is not real.
class SymmetryError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a bosonic Fock representation does not exist for the given
/// parameters. Carries the violated indices mu (1 <= mu < lambda).
class FockError : public DomainError {
public:
    FockError(std::string what, std::vector<int> violations)
        : DomainError(std::move(what)), violations_(std::move(violations)) {}

    const std::vector<int>& violations() const noexcept { return violations_; }

private:
    std::vector<int> violations_;
};

/// Cyclic index in [0, lambda). Every grade subscript goes through here.
constexpr int wrap(long long mu, int lambda) noexcept {
    const long long r = mu % lambda;
    return static_cast<int>(r < 0 ? r + lambda : r);
}

/// Order lambda of the cyclic group and the parameters alpha_0..alpha_{lambda-1}.
/// The last entry is always derived so that the alphas sum to zero.
class AlgebraParams {
public:
    /// The ordinary oscillator at lambda = 2.
    AlgebraParams() : lambda_(2), alpha_{0.0, 0.0} {}

    /// Builds from the lambda-1 independent parameters; alpha_{lambda-1} is
    /// completed as minus their sum. The Fock condition is not enforced.
    static AlgebraParams from_head(int lambda, std::vector<double> alpha_head);

    /// Accepts either lambda-1 entries or a full lambda-vector whose sum
    /// vanishes to 1e-12 (relative to its 1-norm); the last entry is rederived.
    static AlgebraParams from_alpha(int lambda, const std::vector<double>& alpha);

    int lambda() const noexcept { return lambda_; }
    const std::vector<double>& alpha() const noexcept { return alpha_; }

    /// alpha with cyclic indexing.
    double alpha(long long mu) const noexcept { return alpha_[wrap(mu, lambda_)]; }

    /// The independent parameters alpha_0..alpha_{lambda-2}.
    std::vector<double> head() const { return {alpha_.begin(), alpha_.end() - 1}; }

    friend bool operator==(const AlgebraParams&, const AlgebraParams&) = default;

private:
    AlgebraParams(int lambda, std::vector<double> alpha)
        : lambda_(lambda), alpha_(std::move(alpha)) {}

    int lambda_;
    std::vector<double> alpha_;
};

inline AlgebraParams new_params(int lambda, std::vector<double> alpha_head) {
    return AlgebraParams::from_head(lambda, std::move(alpha_head));
}

/// Alternate coordinates kappa_1..kappa_{lambda-1} (stored at index mu-1).
struct KappaParams {
    std::vector<std::complex<double>> kappa;

    std::complex<double> operator[](int mu) const { return kappa.at(mu - 1); }
};

/// Closed-form constants used throughout: prefix sums beta, the H0 shifts
/// gamma, and the shape-invariant level spacings omega.
struct DerivedConstants {
    std::vector<double> beta;
    std::vector<double> gamma;
    std::vector<double> omega;

    double beta_at(long long mu) const noexcept {
        return beta[wrap(mu, static_cast<int>(beta.size()))];
    }
    double gamma_at(long long mu) const noexcept {
        return gamma[wrap(mu, static_cast<int>(gamma.size()))];
    }
};

DerivedConstants derived_constants(const AlgebraParams& p);

/// Prefix sums beta_mu = sum_{nu<mu} alpha_nu evaluated in `Real`.
template <typename Real>
std::vector<Real> beta_as(const AlgebraParams& p) {
    std::vector<Real> beta(p.lambda(), Real(0));
    for (int mu = 1; mu < p.lambda(); ++mu)
        beta[mu] = beta[mu - 1] + static_cast<Real>(p.alpha()[mu - 1]);
    return beta;
}

/// F(n) = n + beta_{n mod lambda} in `Real`.
template <typename Real>
Real structure_function_as(const std::vector<Real>& beta, long long n) {
    return static_cast<Real>(n) + beta[wrap(n, static_cast<int>(beta.size()))];
}

struct FockValidation {
    std::vector<int> violations;  ///< mu with sum_{nu<mu} alpha_nu <= -mu

    bool ok() const noexcept { return violations.empty(); }
    explicit operator bool() const noexcept { return ok(); }
};

/// Existence of the bosonic Fock representation: F(mu) > 0 for mu = 1..lambda-1.
FockValidation validate_fock(const AlgebraParams& p);

/// Throws FockError listing the violations when validate_fock fails.
void require_fock(const AlgebraParams& p);

/// F(n) = n + beta_{n mod lambda}; F(0) = 0.
double structure_function(const AlgebraParams& p, long long n);

/// alpha^(mu)_nu = alpha_{nu+mu}.
AlgebraParams cyclic_shift(const AlgebraParams& p, int mu);

/// alpha_mu = sum_{nu=1}^{lambda-1} exp(i 2 pi mu nu / lambda) kappa_nu.
AlgebraParams alpha_from_kappa(const KappaParams& k, int lambda);

/// Inverse of alpha_from_kappa; the absent nu = 0 term is the zero sum of alpha.
KappaParams kappa_from_alpha(const AlgebraParams& p);

inline constexpr double kRealTolerance = 1e-12;

}  // namespace cyclic_osc
