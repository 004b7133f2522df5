#include "platid/objective.hpp"

#include <cmath>
#include <stdexcept>

namespace platid {

namespace {

// Below this, j_u signals coincident geometry rather than information.
constexpr double kDegenerateNorm = 1e-300;

}  // namespace

ObservedProducts ObservedProducts::from_fim(const Fim& j_obs, const TargetState& target,
                                            const TimeGrid& grid)
{
    validate_fim(j_obs);
    return ObservedProducts{pack9(j_obs), target, grid};
}

ObservedProducts ObservedProducts::with_turn_index(int turn_index) const
{
    return ObservedProducts{j_obs, target, grid.with_turn_index(turn_index)};
}

FimVec9 unit_fim_vec(const ObservedProducts& obs, const ConstrainedPlatformState& x)
{
    return pack9(assemble_fim(obs.target, free_from_constrained(x), obs.grid, 1.0));
}

double weighted_norm_sq(const FimVec9& v)
{
    return v.dot(weight_vec().cwiseProduct(v));
}

double frobenius_objective(const ObservedProducts& obs, const ConstrainedPlatformState& x,
                           double alpha_theta)
{
    if (!std::isfinite(alpha_theta)) throw std::invalid_argument("frobenius_objective: non-finite alpha_theta");
    const FimVec9 d = obs.j_obs - alpha_theta * unit_fim_vec(obs, x);
    return weighted_norm_sq(d);
}

double alpha_theta_ls(const ObservedProducts& obs, const ConstrainedPlatformState& x)
{
    const FimVec9 ju = unit_fim_vec(obs, x);
    if (ju.norm() < kDegenerateNorm) throw std::domain_error("alpha_theta_ls: degenerate j_u");
    const FimVec9 wju = weight_vec().cwiseProduct(ju);
    return ju.dot(weight_vec().cwiseProduct(obs.j_obs)) / ju.dot(wju);
}

double reduced_objective_G(const ObservedProducts& obs, const ConstrainedPlatformState& x)
{
    const FimVec9 ju = unit_fim_vec(obs, x);
    if (ju.norm() < kDegenerateNorm) throw std::domain_error("reduced_objective_G: degenerate j_u");
    const FimVec9 wju = weight_vec().cwiseProduct(ju);
    const double num = obs.j_obs.dot(wju);
    const double den = ju.dot(wju);
    return num * num / den;
}

}  // namespace platid
