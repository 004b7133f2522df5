#pragma once

#include <Eigen/Core>

namespace platid {

/// Closed-form eigendecomposition of a symmetric 2x2 matrix.
/// Eigenvectors are unit length with a deterministic sign convention
/// (first nonzero component positive); v_min is perpendicular to v_max.
struct SymEig2 {
    double lam_max = 0.0;
    double lam_min = 0.0;
    Eigen::Vector2d v_max{1.0, 0.0};
    Eigen::Vector2d v_min{0.0, 1.0};
    bool ambiguous = false;  ///< eigenvalues coincide within 1e-12 relative
};

SymEig2 sym_eig2(const Eigen::Matrix2d& m);

/// Spectral condition number |lambda|_max / |lambda|_min of a symmetric 4x4;
/// +inf when singular.
double sym_cond4(const Eigen::Matrix4d& m);

}  // namespace platid
