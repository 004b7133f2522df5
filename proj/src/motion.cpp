#include "platid/motion.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace platid {

namespace {

constexpr double kPi = std::numbers::pi;

[[noreturn]] void fail(const std::string& what) { throw std::invalid_argument(what); }

}  // namespace

double wrap_angle(double a)
{
    if (!std::isfinite(a)) fail("wrap_angle: non-finite angle");
    double w = std::remainder(a, 2.0 * kPi);  // [-pi, pi]
    if (w <= -kPi) w = kPi;
    return w;
}

double heading_of(const Vec2& v)
{
    if (v.x() == 0.0 && v.y() == 0.0) fail("heading_of: zero vector has no heading");
    return wrap_angle(std::atan2(v.x(), v.y()));
}

TimeGrid::TimeGrid(std::vector<double> times, int turn_index)
{
    n_ = static_cast<int>(times.size());
    if (n_ < 2) fail("TimeGrid: need at least 2 samples");
    for (int i = 1; i < n_; ++i) {
        if (!(times[i] > times[i - 1])) fail("TimeGrid: times must be strictly increasing");
    }
    if (turn_index <= 1 || turn_index >= n_) {
        fail("TimeGrid: turn index must satisfy 1 < k < n, got k=" + std::to_string(turn_index) +
             " with n=" + std::to_string(n_));
    }
    t_ = std::move(times);
    k_ = turn_index;
    const double span = t_.back() - t_.front();
    alpha_.resize(n_);
    for (int i = 0; i < n_; ++i) alpha_[i] = (t_[i] - t_.front()) / span;
}

TimeGrid TimeGrid::uniform(double start, double duration, double period, int turn_index)
{
    if (!(duration > 0.0) || !(period > 0.0)) fail("TimeGrid::uniform: duration and period must be positive");
    const double steps = duration / period;
    const double rounded = std::round(steps);
    if (std::abs(steps - rounded) > 1e-9 * std::max(1.0, steps)) {
        fail("TimeGrid::uniform: duration is not an integer multiple of period");
    }
    const int n = static_cast<int>(rounded) + 1;
    std::vector<double> t(n);
    for (int i = 0; i < n; ++i) t[i] = start + period * i;
    t.back() = start + duration;
    return TimeGrid(std::move(t), turn_index);
}

TimeGrid TimeGrid::without_turn(std::vector<double> times)
{
    TimeGrid g;
    g.n_ = static_cast<int>(times.size());
    if (g.n_ < 2) fail("TimeGrid: need at least 2 samples");
    for (int i = 1; i < g.n_; ++i) {
        if (!(times[i] > times[i - 1])) fail("TimeGrid: times must be strictly increasing");
    }
    g.t_ = std::move(times);
    g.k_ = -1;
    const double span = g.t_.back() - g.t_.front();
    g.alpha_.resize(g.n_);
    for (int i = 0; i < g.n_; ++i) g.alpha_[i] = (g.t_[i] - g.t_.front()) / span;
    return g;
}

int TimeGrid::turn_index() const
{
    if (!has_turn()) fail("TimeGrid: grid has no turn index");
    return k_;
}

double TimeGrid::time(int i) const
{
    if (i < 1 || i > n_) fail("TimeGrid: sample index " + std::to_string(i) + " out of range [1, " +
                              std::to_string(n_) + "]");
    return t_[i - 1];
}

double TimeGrid::alpha(int i) const
{
    if (i < 1 || i > n_) fail("TimeGrid: sample index " + std::to_string(i) + " out of range [1, " +
                              std::to_string(n_) + "]");
    return alpha_[i - 1];
}

double TimeGrid::turn_time() const { return time(turn_index()); }

TimeGrid TimeGrid::with_turn_index(int turn_index) const { return TimeGrid(t_, turn_index); }

ConstrainedPlatformState ConstrainedPlatformState::normalized() const
{
    ConstrainedPlatformState out = *this;
    out.phi1 = wrap_angle(phi1);
    out.phi2 = wrap_angle(phi2);
    return out;
}

Eigen::Matrix<double, 5, 1> ConstrainedPlatformState::to_vector() const
{
    Eigen::Matrix<double, 5, 1> v;
    v << xi, eta, s, phi1, phi2;
    return v;
}

ConstrainedPlatformState ConstrainedPlatformState::from_vector(const Eigen::Matrix<double, 5, 1>& v)
{
    return ConstrainedPlatformState{v[0], v[1], v[2], v[3], v[4]};
}

Vec2 target_position(const TargetState& target, const TimeGrid& grid, int i)
{
    const double a = grid.alpha(i);
    return target.p1 + a * (target.pn - target.p1);
}

Vec2 platform_position(const PlatformStateFree& platform, const TimeGrid& grid, int i)
{
    const double ti = grid.time(i);
    if (!grid.has_turn()) {
        // Only a single-leg (v1 == v2) trajectory is meaningful without a turn.
        const double scale = platform.v1.norm() + platform.v2.norm();
        if ((platform.v1 - platform.v2).norm() > 1e-12 * scale) {
            fail("platform_position: grid has no turn index but leg velocities differ");
        }
        return platform.p1 + (ti - grid.start_time()) * platform.v1;
    }
    const double tk = grid.turn_time();
    if (ti < tk) return platform.p1 + (ti - grid.start_time()) * platform.v1;
    return platform.p1 + (tk - grid.start_time()) * platform.v1 + (ti - tk) * platform.v2;
}

PlatformStateFree free_from_constrained(const ConstrainedPlatformState& state)
{
    if (!(state.s > 0.0)) fail("free_from_constrained: speed must be positive");
    return PlatformStateFree{Vec2(state.xi, state.eta), state.s * heading_unit(state.phi1),
                             state.s * heading_unit(state.phi2)};
}

ConstrainedPlatformState constrained_from_free(const PlatformStateFree& platform)
{
    const double s1 = platform.v1.norm();
    const double s2 = platform.v2.norm();
    if (std::abs(s1 - s2) > kEqualSpeedRelTol * std::max(s1, s2)) {
        fail("constrained_from_free: leg speeds differ (" + std::to_string(s1) + " vs " +
             std::to_string(s2) + ")");
    }
    const double s = 0.5 * (s1 + s2);
    if (!(s > 0.0)) fail("constrained_from_free: speed must be positive");
    return ConstrainedPlatformState{platform.p1.x(), platform.p1.y(), s, heading_of(platform.v1),
                                    heading_of(platform.v2)};
}

Waypoints waypoints_from_state(const ConstrainedPlatformState& state, const TimeGrid& grid)
{
    const PlatformStateFree free = free_from_constrained(state);
    const Vec2 pk = free.p1 + (grid.turn_time() - grid.start_time()) * free.v1;
    const Vec2 pn = pk + (grid.end_time() - grid.turn_time()) * free.v2;
    return Waypoints{free.p1, pk, pn};
}

ConstrainedPlatformState state_from_waypoints(const Waypoints& waypoints, const TimeGrid& grid)
{
    const double tau1 = grid.turn_time() - grid.start_time();
    const double tau2 = grid.end_time() - grid.turn_time();
    const Vec2 leg1 = waypoints.pk - waypoints.p1;
    const Vec2 leg2 = waypoints.pn - waypoints.pk;
    const double s1 = leg1.norm() / tau1;
    const double s2 = leg2.norm() / tau2;
    if (std::abs(s1 - s2) > kEqualSpeedRelTol * std::max(s1, s2)) {
        fail("state_from_waypoints: waypoints violate the equal-speed constraint (" +
             std::to_string(s1) + " vs " + std::to_string(s2) + " m/s)");
    }
    const double s = 0.5 * (s1 + s2);
    if (!(s > 0.0)) fail("state_from_waypoints: degenerate waypoints with zero speed");
    return ConstrainedPlatformState{waypoints.p1.x(), waypoints.p1.y(), s, heading_of(leg1),
                                    heading_of(leg2)};
}

double bearing(const TargetState& target, const Vec2& platform_pos, const TimeGrid& grid, int i)
{
    const Vec2 d = target_position(target, grid, i) - platform_pos;
    if (d.x() == 0.0 && d.y() == 0.0) fail("bearing: coincident target and platform positions");
    return wrap_angle(std::atan2(d.x(), d.y()));
}

double range(const TargetState& target, const Vec2& platform_pos, const TimeGrid& grid, int i)
{
    const Vec2 d = target_position(target, grid, i) - platform_pos;
    const double r = d.norm();
    if (r == 0.0) fail("range: coincident target and platform positions");
    return r;
}

}  // namespace platid
