#pragma once

#include "platid/fim.hpp"
#include "platid/motion.hpp"

namespace platid {

/// The intercepted target-estimation products: the 9 independent entries of
/// the observed FIM, the target state estimate and the sample grid.
struct ObservedProducts {
    FimVec9 j_obs;
    TargetState target;
    TimeGrid grid;

    /// Validates the full matrix (symmetry, PSD, J23 = J14) before packing.
    static ObservedProducts from_fim(const Fim& j_obs, const TargetState& target, const TimeGrid& grid);

    /// Same products with a different assumed turn index (turning-time sweeps).
    ObservedProducts with_turn_index(int turn_index) const;
};

/// j_u(x): the 9 independent entries of the unit-alpha_theta FIM at x.
FimVec9 unit_fim_vec(const ObservedProducts& obs, const ConstrainedPlatformState& x);

/// v^t W v, the squared Frobenius norm of the matrix v represents.
double weighted_norm_sq(const FimVec9& v);

/// F(x, alpha_theta) = [j_obs - alpha_theta j_u(x)]^t W [j_obs - alpha_theta j_u(x)].
/// Equals |J_obs - J(x, alpha_theta)|_F^2; zero exactly at a solution.
double frobenius_objective(const ObservedProducts& obs, const ConstrainedPlatformState& x,
                           double alpha_theta);

/// Closed-form least-squares minimizer of F over alpha_theta for fixed x:
/// (j_u^t W j_obs) / (j_u^t W j_u). May be negative for adversarial inputs;
/// callers treat that as a bad-candidate diagnostic, not an error.
double alpha_theta_ls(const ObservedProducts& obs, const ConstrainedPlatformState& x);

/// Reduced 5-D objective G(x) = <j_obs, W j_u>^2 / (j_u^t W j_u).
/// Maximizing G is equivalent to minimizing F over (x, alpha_theta);
/// F(x, alpha_theta_ls(x)) + G(x) = j_obs^t W j_obs.
double reduced_objective_G(const ObservedProducts& obs, const ConstrainedPlatformState& x);

}  // namespace platid
