#pragma once

#include "platid/motion.hpp"

namespace platid {

/// A point of the unobservability subspace: an affine combination (through
/// beta) of a solution trajectory with the estimated target trajectory, paired
/// with the beta^2-scaled alpha_theta. Every member reproduces the same FIM.
struct SubspaceMember {
    double beta = 1.0;
    PlatformStateFree state;
    double alpha_theta = 0.0;
};

/// beta * xP + (1 - beta) * [p_T(t1), v_T, v_T] with alpha_theta scaled by
/// beta^2. beta = 0 collapses onto the target trajectory (degenerate).
SubspaceMember subspace_member(const PlatformStateFree& solution, double alpha_theta,
                               const TargetState& target, const TimeGrid& grid, double beta);

/// Squared-speed difference |v1'|^2 - |v2'|^2 of the subspace member's legs,
/// in closed form: 2 beta (1 - beta) v_T^t (v1 - v2). Requires the input
/// trajectory itself to have equal leg speeds.
double speed_gap(const PlatformStateFree& platform, const Vec2& target_velocity, double beta);

/// True when (v1 - v2) is orthogonal to the target velocity within tol
/// (dimensionless cosine): the trajectory stays unidentifiable even with equal
/// leg speeds. v1 = v2 reports true (single-leg degenerate; callers flag it).
bool is_stealthy(const PlatformStateFree& platform, const Vec2& target_velocity, double tol = 1e-9);

}  // namespace platid
