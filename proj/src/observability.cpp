#include "platid/observability.hpp"

#include <cmath>
#include <stdexcept>

namespace platid {

SubspaceMember subspace_member(const PlatformStateFree& solution, double alpha_theta,
                               const TargetState& target, const TimeGrid& grid, double beta)
{
    if (!std::isfinite(beta)) throw std::invalid_argument("subspace_member: beta must be finite");
    const Vec2 vt = target.velocity(grid);
    SubspaceMember out;
    out.beta = beta;
    out.state.p1 = beta * solution.p1 + (1.0 - beta) * target.p1;
    out.state.v1 = beta * solution.v1 + (1.0 - beta) * vt;
    out.state.v2 = beta * solution.v2 + (1.0 - beta) * vt;
    out.alpha_theta = beta * beta * alpha_theta;
    return out;
}

double speed_gap(const PlatformStateFree& platform, const Vec2& target_velocity, double beta)
{
    const double s1 = platform.v1.norm();
    const double s2 = platform.v2.norm();
    if (std::abs(s1 - s2) > kEqualSpeedRelTol * std::max(s1, s2)) {
        throw std::invalid_argument("speed_gap: input trajectory must have equal leg speeds");
    }
    return 2.0 * beta * (1.0 - beta) * target_velocity.dot(platform.v1 - platform.v2);
}

bool is_stealthy(const PlatformStateFree& platform, const Vec2& target_velocity, double tol)
{
    const Vec2 d = platform.v1 - platform.v2;
    return std::abs(d.dot(target_velocity)) <= tol * d.norm() * target_velocity.norm();
}

}  // namespace platid
