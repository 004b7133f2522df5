#pragma once

#include "platid/fim.hpp"
#include "platid/motion.hpp"
#include "platid/objective.hpp"

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace platid {

struct AlphaThetaBounds {
    double min = 0.0;
    double max = 0.0;
};

/// A sign-resolved pair of bearing axes at t_1 and t_n.
struct AxisPair {
    Vec2 i1{0.0, 0.0};
    Vec2 in{0.0, 0.0};
};

struct ZoneGuess {
    std::string zone;        ///< "a", "b" or "c"
    Waypoints waypoints;
    double alpha_theta = 0;  ///< grid value the guess was built with
    int grid_index = 0;      ///< m, 1-based
    int pair_index = 0;      ///< g in {1, 2}
    double g_value = 0;      ///< reduced objective at the guess
    double r1_hat = 0;
    double rn_hat = 0;
};

struct GuessSet {
    std::vector<ZoneGuess> zones;  ///< at most 3, ordered a, b, c
    bool zone_c_absent = false;    ///< no chord-heading sign flip found
    double condition_number = 0;   ///< of the observed FIM (diagnostic)
};

/// Coarse range estimates at t_1 and t_n from the diagonal-block traces:
/// r1 = sqrt(alpha_theta * sum (1-a_i)^2 / tr J[1,1]) and the a_i^2 analogue.
/// Exact when all sample ranges are equal.
std::pair<double, double> range_estimates(const Fim& j_obs, const TimeGrid& grid, double alpha_theta);

/// Corner 2x2 blocks of inv(J_obs) via Schur complements. Rejects
/// near-singular FIMs (condition number above 1e12: single-leg or otherwise
/// unobservable geometry).
std::pair<Eigen::Matrix2d, Eigen::Matrix2d> covariance_blocks(const Fim& j_obs);

/// Axes of maximum uncertainty at t_1 and t_n: unit eigenvectors of the
/// covariance corner blocks for their largest eigenvalues. These lie along the
/// platform-target range directions, each known only up to sign.
std::pair<Vec2, Vec2> bearing_axes(const Fim& j_obs);

/// Unit perpendicular of v (rotated by +pi/2).
Vec2 perp_unit(const Vec2& v);

/// Resolve the 4 sign combinations down to the 2 admissible pairs whose
/// components lie on the same side of the target track: sign<i1, u> =
/// sign<in, u> with u the unit perpendicular of the target velocity.
std::array<AxisPair, 2> admissible_pairs(const Vec2& i1, const Vec2& in, const Vec2& target_velocity);

/// Platform endpoint guesses p_T(t_1) + r1 * i1 and p_T(t_n) + rn * in.
std::pair<Vec2, Vec2> endpoint_guesses(const TargetState& target, double r1_hat, double rn_hat,
                                       const AxisPair& pair);

/// 1-based index of the sample nearest the middle of the observation
/// interval (earlier sample on ties).
int middle_sample(const TimeGrid& grid);

/// Coarse platform position near mid-interval: range from the off-diagonal
/// block trace, direction from that block's smallest-eigenvalue eigenvector
/// (the range direction), sign-matched to the resolved i1.
Vec2 midpoint_probe(const Fim& j_obs, const TimeGrid& grid, double alpha_theta,
                    const TargetState& target, const Vec2& i1_resolved, const Vec2& target_velocity);

/// Turn-point construction under the +-pi/2-turn assumption: the two mirror
/// candidates form right triangles over the endpoint chord (equal leg speeds
/// by construction); the probe picks the side.
Waypoints turn_guess(const Vec2& p1_hat, const Vec2& pn_hat, const TimeGrid& grid, const Vec2& probe);

/// Run the full guess pipeline over a uniform alpha_theta grid of n_theta
/// values, split the candidates into up to three zones (per axis pair, with
/// the flipped pair split where the chord heading changes sign), and keep the
/// G-maximizing candidate of each zone.
GuessSet zone_guesses(const ObservedProducts& obs, const AlphaThetaBounds& bounds, int n_theta);

/// Smallest recommended grid count: ceil((min+max)/(2 min)) + 1.
int n_theta_min(const AlphaThetaBounds& bounds);

}  // namespace platid
