#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace cyclic_osc {

struct RelationResidual {
    std::string name;
    double residual = 0.0;  ///< max |entry| of (lhs - rhs) over the checked block
    bool pass = false;
};

struct RelationReport {
    std::vector<RelationResidual> relations;
    int headroom = 0;
    double tol = 0.0;
    /// Set when the check is vacuous, e.g. a zero charge satisfying 0 = 0.
    bool degenerate = false;

    void add(std::string name, double residual) {
        relations.push_back({std::move(name), residual, residual <= tol});
    }
    /// Adds a relation that must NOT vanish (e.g. Q^p != 0); passes iff value > tol.
    void add_nonzero(std::string name, double magnitude) {
        relations.push_back({std::move(name), magnitude, magnitude > tol});
    }
    void append(const RelationReport& other) {
        relations.insert(relations.end(), other.relations.begin(), other.relations.end());
        degenerate = degenerate || other.degenerate;
    }

    bool all_pass() const {
        return std::all_of(relations.begin(), relations.end(),
                           [](const RelationResidual& r) { return r.pass; });
    }
    double max_residual() const {
        double m = 0.0;
        for (const auto& r : relations) m = std::max(m, r.residual);
        return m;
    }
    const RelationResidual* find(const std::string& name) const {
        for (const auto& r : relations)
            if (r.name == name) return &r;
        return nullptr;
    }
};

/// Max |m_ij| over the leading keep x keep block. Truncation only corrupts
/// the top of the Fock tower, so identities are read off this block.
template <typename Derived>
double head_residual(const Eigen::MatrixBase<Derived>& m, Eigen::Index keep) {
    keep = std::clamp<Eigen::Index>(keep, 0, std::min(m.rows(), m.cols()));
    if (keep == 0) return 0.0;
    return static_cast<double>(m.topLeftCorner(keep, keep).cwiseAbs().maxCoeff());
}

/// Indices i of a (blocks * dim)-sized graded matrix with (i mod dim) < keep.
inline std::vector<Eigen::Index> block_head_indices(Eigen::Index dim, Eigen::Index keep,
                                                    int blocks) {
    std::vector<Eigen::Index> idx;
    for (int b = 0; b < blocks; ++b)
        for (Eigen::Index i = 0; i < keep; ++i) idx.push_back(b * dim + i);
    return idx;
}

template <typename Derived>
double indexed_residual(const Eigen::MatrixBase<Derived>& m,
                        const std::vector<Eigen::Index>& idx) {
    if (idx.empty()) return 0.0;
    return static_cast<double>(m(idx, idx).cwiseAbs().maxCoeff());
}

}  // namespace cyclic_osc
