#include "cyclic_osc/variants.hpp"

#include <cmath>

namespace cyclic_osc {

std::string to_string(VariantKind kind) {
    switch (kind) {
        case VariantKind::pssqm: return "pssqm";
        case VariantKind::pssqm_cubic: return "pssqm-cubic";
        case VariantKind::pseudo_family1: return "pseudo-family1";
        case VariantKind::pseudo_family2: return "pseudo-family2";
        case VariantKind::ossqm: return "ossqm";
    }
    return "unknown";
}

double pssqm_r(const AlgebraParams& p, int mu) {
    const int order = p.lambda() - 1;
    double acc = (order - 2) * p.alpha(mu + 2);
    for (int nu = 3; nu <= order; ++nu) acc += 2.0 * (order - nu + 1) * p.alpha(mu + nu);
    acc += order * (order - 2);
    return acc / order;
}

double family2_equal_spacing_r(const AlgebraParams& p, int mu, int offset) {
    if (p.lambda() != 3) throw DomainError("family 2 needs lambda = 3");
    double r = std::fmod(p.alpha(mu + 1) - p.alpha(mu + 2) + 3.0, 6.0);
    if (r < 0) r += 6.0;
    return r + 6.0 * offset;
}

}  // namespace cyclic_osc
