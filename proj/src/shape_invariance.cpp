#include "cyclic_osc/shape_invariance.hpp"

#include <sstream>

namespace cyclic_osc {

std::vector<std::string> window_violations(const AlgebraParams& p) {
    const int lambda = p.lambda();
    std::vector<std::string> bad;
    double prefix = 0.0;
    for (int mu = 0; mu + 1 < lambda; ++mu) {
        const double a = p.alpha()[mu];
        const double upper = lambda - mu - 1 - prefix;
        if (!(a > -1.0 && a < upper)) {
            std::ostringstream s;
            s << "-1 < alpha_" << mu << " < " << upper << " (alpha_" << mu << " = " << a << ")";
            bad.push_back(s.str());
        }
        prefix += a;
    }
    // omega > 0 for the derived tail.
    if (!(p.alpha()[lambda - 1] > -1.0))
        bad.push_back("omega_" + std::to_string(lambda - 1) + " > 0");
    return bad;
}

}  // namespace cyclic_osc
