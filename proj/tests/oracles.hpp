#pragma once

// Test-side oracles, deliberately independent of the library's computation
// paths: bearings go through atan2 + sin/cos here, matrices are accumulated
// entry by entry, norms are summed over all 16 entries.

#include "platid/fim.hpp"
#include "platid/motion.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace oracle {

using platid::ConstrainedPlatformState;
using platid::Fim;
using platid::PlatformStateFree;
using platid::TargetState;
using platid::TimeGrid;
using platid::Vec2;

struct Scenario {
    TimeGrid grid;
    TargetState target;
    ConstrainedPlatformState platform;
    double alpha_theta;
};

// Table-driven fixture: 800 s at 4 s period, turn at sample 101, target from
// (15e3, 35e3) at (-10, 5) m/s, platform from (1e4, 2e4) at 7.1 m/s.
inline Scenario table_scenario(int which)
{
    const double pi = 3.14159265358979323846;
    Scenario s{TimeGrid::uniform(0.0, 800.0, 4.0, 101),
               TargetState{Vec2(15e3, 35e3), Vec2(15e3 - 800.0 * 10.0, 35e3 + 800.0 * 5.0)},
               ConstrainedPlatformState{1e4, 2e4, 7.1, 3.0 * pi / 4.0, pi / 4.0}, 2.6580e3};
    if (which == 2) s.platform.phi1 = -pi / 4.0;
    return s;
}

// Piecewise-linear platform position computed from first principles.
inline Vec2 platform_position_direct(const PlatformStateFree& p, const TimeGrid& grid, int i)
{
    const double t = grid.time(i) - grid.start_time();
    const double tk = grid.turn_time() - grid.start_time();
    if (t < tk) return p.p1 + t * p.v1;
    return p.p1 + tk * p.v1 + (t - tk) * p.v2;
}

// Entry-by-entry FIM accumulation through explicit angles, over samples [lo, hi]
// of the grid (alpha values always taken from the full grid).
inline Eigen::Matrix4d fim_direct(const TargetState& target, const PlatformStateFree& platform,
                                  const TimeGrid& grid, double alpha_theta, int lo, int hi)
{
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    for (int i = lo; i <= hi; ++i) {
        const Vec2 pt = target.p1 + grid.alpha(i) * (target.pn - target.p1);
        const Vec2 pp = platform_position_direct(platform, grid, i);
        const double theta = std::atan2(pt.x() - pp.x(), pt.y() - pp.y());
        const double r = std::hypot(pt.x() - pp.x(), pt.y() - pp.y());
        const double a = grid.alpha(i);
        Eigen::Vector4d g;
        g << (1.0 - a) * std::cos(theta), -(1.0 - a) * std::sin(theta), a * std::cos(theta),
            -a * std::sin(theta);
        g /= r;
        for (int row = 0; row < 4; ++row) {
            for (int col = 0; col < 4; ++col) m(row, col) += g[row] * g[col];
        }
    }
    return alpha_theta * m;
}

inline Eigen::Matrix4d fim_direct(const TargetState& target, const PlatformStateFree& platform,
                                  const TimeGrid& grid, double alpha_theta)
{
    return fim_direct(target, platform, grid, alpha_theta, 1, grid.size());
}

// All-16-entries squared Frobenius distance.
inline double frobenius_sq_direct(const Eigen::Matrix4d& a, const Eigen::Matrix4d& b)
{
    double sum = 0.0;
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) sum += (a(r, c) - b(r, c)) * (a(r, c) - b(r, c));
    }
    return sum;
}

inline double rel_err(double got, double want)
{
    return std::abs(got - want) / std::max({std::abs(got), std::abs(want), 1e-300});
}

inline double rel_err(const Eigen::Matrix4d& got, const Eigen::Matrix4d& want)
{
    return (got - want).norm() / std::max(want.norm(), 1e-300);
}

// Random but well-separated instances for property tests. Non-uniform grids
// are drawn half the time; nothing in the library may assume uniform sampling.
class InstanceGen {
public:
    explicit InstanceGen(unsigned seed) : rng_(seed) {}

    double uniform(double lo, double hi)
    {
        return std::uniform_real_distribution<double>(lo, hi)(rng_);
    }

    int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    TimeGrid grid()
    {
        const int n = uniform_int(5, 40);
        std::vector<double> t(n);
        if (uniform(0.0, 1.0) < 0.5) {
            const double period = uniform(1.0, 30.0);
            const double start = uniform(-100.0, 100.0);
            for (int i = 0; i < n; ++i) t[i] = start + i * period;
        } else {
            t[0] = uniform(-100.0, 100.0);
            for (int i = 1; i < n; ++i) t[i] = t[i - 1] + uniform(0.5, 40.0);
        }
        return TimeGrid(t, uniform_int(2, n - 1));
    }

    ConstrainedPlatformState platform_near(const Vec2& anchor)
    {
        const double bearing = uniform(-3.14159, 3.14159);
        const double dist = uniform(5e3, 4e4);
        return ConstrainedPlatformState{anchor.x() + dist * std::sin(bearing),
                                        anchor.y() + dist * std::cos(bearing), uniform(1.0, 15.0),
                                        uniform(-3.14159, 3.14159), uniform(-3.14159, 3.14159)};
    }

    // A separated target/platform pair: every sample range is at least 100 m.
    Scenario scenario()
    {
        while (true) {
            Scenario s{grid(), TargetState{}, ConstrainedPlatformState{}, 0.0};
            s.target.p1 = Vec2(uniform(-2e4, 2e4), uniform(-2e4, 2e4));
            const Vec2 vt(uniform(-15.0, 15.0), uniform(-15.0, 15.0));
            s.target.pn = s.target.p1 + s.grid.duration() * vt;
            s.platform = platform_near(s.target.p1);
            s.alpha_theta = std::pow(10.0, uniform(1.0, 4.0));
            const PlatformStateFree free = platid::free_from_constrained(s.platform);
            bool separated = true;
            for (int i = 1; i <= s.grid.size() && separated; ++i) {
                const Vec2 pt = s.target.p1 + s.grid.alpha(i) * (s.target.pn - s.target.p1);
                separated = (pt - platform_position_direct(free, s.grid, i)).norm() > 100.0;
            }
            if (separated) return s;
        }
    }

    std::mt19937_64& rng() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace oracle
