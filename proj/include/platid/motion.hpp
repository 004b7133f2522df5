#pragma once

#include <Eigen/Core>

#include <vector>

namespace platid {

using Vec2 = Eigen::Vector2d;

/// Wrap an angle to (-pi, pi].
double wrap_angle(double a);

/// Unit vector of a heading measured from north (eta axis) toward east (xi axis).
inline Vec2 heading_unit(double phi) { return Vec2(std::sin(phi), std::cos(phi)); }

/// Four-quadrant heading of a 2-vector (xi, eta), measured from north toward
/// east; result in (-pi, pi].
double heading_of(const Vec2& v);

/// Relative tolerance on the equal-speed constraint of the two legs.
inline constexpr double kEqualSpeedRelTol = 1e-9;

/// Sample instants t_1..t_n plus the index k of the sample at which the
/// platform switches legs. Sample access is 1-based throughout, matching the
/// t_1..t_n convention of all the formulas in this library.
///
/// A grid without a turn index (see without_turn) supports target-side math
/// and degenerate single-leg platform trajectories only; two-leg operations
/// reject it.
class TimeGrid {
public:
    /// Times must be strictly increasing with n >= 2; turn_index is 1-based
    /// and must satisfy 1 < k < n (a turn at an endpoint degenerates the
    /// two-leg model into a single leg).
    TimeGrid(std::vector<double> times, int turn_index);

    /// Uniform grid with sample period `period` covering [start, start+duration].
    /// duration must be an integer multiple of period.
    static TimeGrid uniform(double start, double duration, double period, int turn_index);

    /// Grid with no leg switch. Valid for target-side evaluation only.
    static TimeGrid without_turn(std::vector<double> times);

    int size() const { return n_; }
    bool has_turn() const { return k_ > 0; }
    int turn_index() const;

    double time(int i) const;   ///< t_i, 1 <= i <= n
    double alpha(int i) const;  ///< (t_i - t_1)/(t_n - t_1)

    double start_time() const { return t_.front(); }
    double end_time() const { return t_.back(); }
    double duration() const { return t_.back() - t_.front(); }
    double turn_time() const;

    const std::vector<double>& times() const { return t_; }

    /// Same instants with a different turn index (turning-time sweeps).
    TimeGrid with_turn_index(int turn_index) const;

private:
    TimeGrid() = default;

    std::vector<double> t_;
    std::vector<double> alpha_;
    int n_ = 0;
    int k_ = -1;
};

/// Constant-velocity target stored by its endpoint positions (meters).
struct TargetState {
    Vec2 p1{0.0, 0.0};
    Vec2 pn{0.0, 0.0};

    Vec2 velocity(const TimeGrid& grid) const { return (pn - p1) / grid.duration(); }
};

/// Two-leg platform trajectory with unconstrained leg velocities.
struct PlatformStateFree {
    Vec2 p1{0.0, 0.0};
    Vec2 v1{0.0, 0.0};
    Vec2 v2{0.0, 0.0};
};

/// Equal-speed two-leg platform state [xi, eta, s, phi1, phi2]:
/// position at t_1 (m), speed (m/s), and the two leg headings (rad).
struct ConstrainedPlatformState {
    double xi = 0.0;
    double eta = 0.0;
    double s = 0.0;
    double phi1 = 0.0;
    double phi2 = 0.0;

    /// Copy with both headings wrapped to (-pi, pi].
    ConstrainedPlatformState normalized() const;

    Eigen::Matrix<double, 5, 1> to_vector() const;
    static ConstrainedPlatformState from_vector(const Eigen::Matrix<double, 5, 1>& v);
};

/// Platform positions at t_1, t_k and t_n. Valid instances satisfy the
/// equal-speed constraint |pk-p1|/(t_k-t_1) = |pn-pk|/(t_n-t_k).
struct Waypoints {
    Vec2 p1{0.0, 0.0};
    Vec2 pk{0.0, 0.0};
    Vec2 pn{0.0, 0.0};
};

/// Target position at sample i.
Vec2 target_position(const TargetState& target, const TimeGrid& grid, int i);

/// Platform position at sample i: leg 1 for t_i < t_k, leg 2 anchored at the
/// turn point for t_i >= t_k.
Vec2 platform_position(const PlatformStateFree& platform, const TimeGrid& grid, int i);

/// Expand [xi, eta, s, phi1, phi2] into position and leg velocities,
/// v_j = s * (sin phi_j, cos phi_j). Requires s > 0.
PlatformStateFree free_from_constrained(const ConstrainedPlatformState& state);

/// Inverse of free_from_constrained. Requires |v1| = |v2| (relative tolerance
/// kEqualSpeedRelTol) and a nonzero speed.
ConstrainedPlatformState constrained_from_free(const PlatformStateFree& platform);

Waypoints waypoints_from_state(const ConstrainedPlatformState& state, const TimeGrid& grid);
ConstrainedPlatformState state_from_waypoints(const Waypoints& waypoints, const TimeGrid& grid);

/// Noise-free bearing from the platform position at sample i to the target,
/// measured from north toward east, in (-pi, pi].
double bearing(const TargetState& target, const Vec2& platform_pos, const TimeGrid& grid, int i);

/// Target-platform distance at sample i; positions must be distinct.
double range(const TargetState& target, const Vec2& platform_pos, const TimeGrid& grid, int i);

}  // namespace platid
