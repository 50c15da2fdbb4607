#include "cyclic_osc/algebra.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace cyclic_osc {

namespace {

void require_lambda(int lambda) {
    if (lambda < 2)
        throw DomainError("lambda must be >= 2, got " + std::to_string(lambda));
}

}  // namespace

AlgebraParams AlgebraParams::from_head(int lambda, std::vector<double> alpha_head) {
    require_lambda(lambda);
    if (alpha_head.size() != static_cast<std::size_t>(lambda - 1))
        throw DomainError("expected " + std::to_string(lambda - 1) + " alpha values, got " +
                          std::to_string(alpha_head.size()));
    for (double a : alpha_head)
        if (!std::isfinite(a)) throw DomainError("alpha values must be finite");
    const double tail = -std::accumulate(alpha_head.begin(), alpha_head.end(), 0.0);
    alpha_head.push_back(tail == 0.0 ? 0.0 : tail);
    return AlgebraParams(lambda, std::move(alpha_head));
}

AlgebraParams AlgebraParams::from_alpha(int lambda, const std::vector<double>& alpha) {
    require_lambda(lambda);
    if (alpha.size() + 1 == static_cast<std::size_t>(lambda)) return from_head(lambda, alpha);
    if (alpha.size() != static_cast<std::size_t>(lambda))
        throw DomainError("expected " + std::to_string(lambda) + " alpha values, got " +
                          std::to_string(alpha.size()));
    double sum = 0.0, norm = 0.0;
    for (double a : alpha) {
        if (!std::isfinite(a)) throw DomainError("alpha values must be finite");
        sum += a;
        norm += std::abs(a);
    }
    if (std::abs(sum) > kRealTolerance * std::max(1.0, norm))
        throw DomainError("alpha values must sum to zero");
    return from_head(lambda, {alpha.begin(), alpha.end() - 1});
}

DerivedConstants derived_constants(const AlgebraParams& p) {
    const int lambda = p.lambda();
    DerivedConstants d;
    d.beta = beta_as<double>(p);
    d.gamma.resize(lambda);
    d.omega.resize(lambda);
    for (int mu = 0; mu < lambda; ++mu) {
        d.gamma[mu] = d.beta[mu] + 0.5 * p.alpha()[mu];
        d.omega[mu] = 1.0 + p.alpha()[mu];
    }
    return d;
}

FockValidation validate_fock(const AlgebraParams& p) {
    FockValidation v;
    double prefix = 0.0;
    for (int mu = 1; mu < p.lambda(); ++mu) {
        prefix += p.alpha()[mu - 1];
        if (!(prefix > -static_cast<double>(mu))) v.violations.push_back(mu);
    }
    return v;
}

void require_fock(const AlgebraParams& p) {
    auto v = validate_fock(p);
    if (v.ok()) return;
    std::ostringstream msg;
    msg << "no bosonic Fock representation: F(mu) <= 0 at mu =";
    for (int mu : v.violations) msg << ' ' << mu;
    throw FockError(msg.str(), std::move(v.violations));
}

double structure_function(const AlgebraParams& p, long long n) {
    if (n < 0) throw DomainError("structure function needs n >= 0");
    return structure_function_as(beta_as<double>(p), n);
}

AlgebraParams cyclic_shift(const AlgebraParams& p, int mu) {
    if (mu < 0 || mu >= p.lambda())
        throw DomainError("shift " + std::to_string(mu) + " outside [0, lambda)");
    std::vector<double> shifted(p.lambda());
    for (int nu = 0; nu < p.lambda(); ++nu) shifted[nu] = p.alpha(nu + mu);
    // A permutation keeps the zero sum; rederive the tail anyway.
    return AlgebraParams::from_head(p.lambda(), {shifted.begin(), shifted.end() - 1});
}

AlgebraParams alpha_from_kappa(const KappaParams& k, int lambda) {
    require_lambda(lambda);
    if (k.kappa.size() != static_cast<std::size_t>(lambda - 1))
        throw DomainError("expected " + std::to_string(lambda - 1) + " kappa values");
    for (int mu = 1; mu < lambda; ++mu)
        if (std::abs(std::conj(k[mu]) - k[lambda - mu]) > kRealTolerance)
            throw SymmetryError("kappa_" + std::to_string(mu) + "^* != kappa_" +
                                std::to_string(lambda - mu));

    std::vector<double> head(lambda - 1);
    for (int mu = 0; mu + 1 < lambda; ++mu) {
        std::complex<double> sum{};
        for (int nu = 1; nu < lambda; ++nu)
            sum += std::polar(1.0, 2.0 * std::numbers::pi * mu * nu / lambda) * k[nu];
        if (std::abs(sum.imag()) > kRealTolerance)
            throw SymmetryError("alpha_" + std::to_string(mu) + " is not real");
        head[mu] = sum.real();
    }
    return AlgebraParams::from_head(lambda, std::move(head));
}

KappaParams kappa_from_alpha(const AlgebraParams& p) {
    const int lambda = p.lambda();
    double sum = 0.0, norm = 0.0;
    for (double a : p.alpha()) {
        sum += a;
        norm += std::abs(a);
    }
    if (std::abs(sum) > kRealTolerance * std::max(1.0, norm))
        throw DomainError("alpha values must sum to zero");

    KappaParams k;
    k.kappa.resize(lambda - 1);
    for (int nu = 1; nu < lambda; ++nu) {
        std::complex<double> acc{};
        for (int mu = 0; mu < lambda; ++mu)
            acc += std::polar(1.0, -2.0 * std::numbers::pi * mu * nu / lambda) * p.alpha()[mu];
        k.kappa[nu - 1] = acc / static_cast<double>(lambda);
    }
    return k;
}

}  // namespace cyclic_osc
