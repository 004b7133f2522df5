#pragma once

#include "platid/motion.hpp"

#include <Eigen/Core>

namespace platid {

/// 4x4 bearing-measurement Fisher information matrix (units m^-2), symmetric
/// positive semidefinite with the minor-diagonal repetition J23 = J14.
struct Fim {
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
};

/// The 9 independent FIM entries, ordered
/// {J11, J22, J33, J44, J12, J13, J14, J24, J34}.
using FimVec9 = Eigen::Matrix<double, 9, 1>;

struct FimBlocks {
    Eigen::Matrix2d j11;
    Eigen::Matrix2d j12;
    Eigen::Matrix2d j21;
    Eigen::Matrix2d j22;
};

/// Gradient of the bearing at sample i w.r.t. the 4-D target state:
/// (1/r_i) * [(1-a_i) cos t_i, -(1-a_i) sin t_i, a_i cos t_i, -a_i sin t_i].
Eigen::Vector4d bearing_gradient(const TargetState& target, const Vec2& platform_pos,
                                 const TimeGrid& grid, int i);

/// Rank-1 projector [[cos^2 t, -sin(2t)/2], [-sin(2t)/2, sin^2 t]] onto the
/// cross-range direction; eigenvalues {1, 0}.
Eigen::Matrix2d bearing_dyad(double theta);

/// alpha_theta * sum_i grad(theta_i) grad(theta_i)^t over all grid samples.
Fim assemble_fim(const TargetState& target, const PlatformStateFree& platform, const TimeGrid& grid,
                 double alpha_theta);

/// The noise-free FIM the platform side evaluates (and an eavesdropper
/// intercepts): assemble_fim at the true platform state.
Fim synthesize_observed(const TargetState& target_estimate, const ConstrainedPlatformState& platform_truth,
                        const TimeGrid& grid, double alpha_theta_true);

/// Partition into 2x2 blocks; J[1,2] = J[2,1] for any valid FIM.
FimBlocks blocks(const Fim& fim);

/// Stack the 9 independent entries. Rejects matrices violating J23 = J14
/// beyond 1e-9 relative (not a valid bearing FIM) or asymmetric beyond 1e-12.
FimVec9 pack9(const Fim& fim);

/// Rebuild all 16 entries from the 9 independent ones.
Fim unpack9(const FimVec9& v);

/// Repetition counts of the independent entries in the full matrix:
/// (1,1,1,1,2,2,4,2,2). Sums to 16.
FimVec9 weight_vec();

/// Check symmetry, positive semidefiniteness and the J23 = J14 repetition;
/// throws std::domain_error naming the violated invariant.
void validate_fim(const Fim& fim);

}  // namespace platid
