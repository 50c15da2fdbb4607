#pragma once

#include "cyclic_osc/algebra.hpp"

#include <random>
#include <vector>

namespace cyclic_osc::test_support {

/// Random parameters satisfying the Fock condition, alpha_mu in [lo, hi].
inline AlgebraParams random_fock_params(std::mt19937_64& rng, int lambda, double lo = -0.9,
                                        double hi = 2.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    for (;;) {
        std::vector<double> head(lambda - 1);
        for (double& a : head) a = u(rng);
        auto p = AlgebraParams::from_head(lambda, head);
        if (validate_fock(p).ok()) return p;
    }
}

/// Random parameters inside the shape-invariance window, kept `margin` away
/// from every boundary.
inline AlgebraParams random_window_params(std::mt19937_64& rng, int lambda,
                                          double margin = 0.05) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> head;
    double prefix = 0.0;
    for (int mu = 0; mu + 1 < lambda; ++mu) {
        const double lo = -1.0 + margin;
        const double hi = lambda - mu - 1 - prefix - margin;
        const double a = hi > lo ? lo + (hi - lo) * u(rng) : 0.5 * (lo + hi);
        head.push_back(a);
        prefix += a;
    }
    return AlgebraParams::from_head(lambda, head);
}

}  // namespace cyclic_osc::test_support
