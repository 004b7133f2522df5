#include "platid/observability.hpp"

#include "platid/fim.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace platid;
using oracle::table_scenario;

TEST_CASE("subspace_member endpoints of the beta line")
{
    const auto s = table_scenario(1);
    const PlatformStateFree p = free_from_constrained(s.platform);

    const SubspaceMember identity = subspace_member(p, s.alpha_theta, s.target, s.grid, 1.0);
    CHECK(identity.state.p1 == p.p1);
    CHECK(identity.state.v1 == p.v1);
    CHECK(identity.state.v2 == p.v2);
    CHECK(identity.alpha_theta == s.alpha_theta);

    const SubspaceMember collapsed = subspace_member(p, s.alpha_theta, s.target, s.grid, 0.0);
    const Vec2 vt = s.target.velocity(s.grid);
    CHECK(collapsed.state.p1 == s.target.p1);
    CHECK(collapsed.state.v1 == vt);
    CHECK(collapsed.state.v2 == vt);
    CHECK(collapsed.alpha_theta == 0.0);
}

TEST_CASE("beta = 2 member reproduces the observed FIM")
{
    const auto s = table_scenario(1);
    const PlatformStateFree p = free_from_constrained(s.platform);
    const Fim j_obs = assemble_fim(s.target, p, s.grid, s.alpha_theta);
    const SubspaceMember member = subspace_member(p, s.alpha_theta, s.target, s.grid, 2.0);
    const Fim j_member = assemble_fim(s.target, member.state, s.grid, member.alpha_theta);
    CHECK(oracle::rel_err(j_member.m, j_obs.m) <= 1e-12);

    // Bearings are preserved and ranges scale by beta along the subspace.
    for (const int i : {1, 50, 101, 201}) {
        const Vec2 pp = platform_position(p, s.grid, i);
        const Vec2 pm = platform_position(member.state, s.grid, i);
        CHECK(bearing(s.target, pm, s.grid, i) ==
              doctest::Approx(bearing(s.target, pp, s.grid, i)).epsilon(1e-12));
        CHECK(range(s.target, pm, s.grid, i) ==
              doctest::Approx(2.0 * range(s.target, pp, s.grid, i)).epsilon(1e-12));
    }
}

TEST_CASE("FIM invariance along the subspace for many betas")
{
    oracle::InstanceGen gen(41);
    for (int trial = 0; trial < 30; ++trial) {
        const auto s = gen.scenario();
        const PlatformStateFree p = free_from_constrained(s.platform);
        const Fim j = assemble_fim(s.target, p, s.grid, s.alpha_theta);
        for (const double beta : {-2.0, -1.0, 0.5, 1.0, 2.0, 3.0}) {
            const SubspaceMember member = subspace_member(p, s.alpha_theta, s.target, s.grid, beta);
            const Fim jm = assemble_fim(s.target, member.state, s.grid, member.alpha_theta);
            CHECK(oracle::rel_err(jm.m, j.m) <= 1e-12);
        }
    }
}

TEST_CASE("speed_gap closed form")
{
    const auto s = table_scenario(1);
    const PlatformStateFree p = free_from_constrained(s.platform);
    const Vec2 vt = s.target.velocity(s.grid);

    CHECK(speed_gap(p, vt, 1.0) == 0.0);
    CHECK(speed_gap(p, vt, 0.0) == 0.0);

    const SubspaceMember member = subspace_member(p, s.alpha_theta, s.target, s.grid, 0.5);
    const double direct = member.state.v1.squaredNorm() - member.state.v2.squaredNorm();
    CHECK(oracle::rel_err(speed_gap(p, vt, 0.5), direct) <= 1e-10);

    const PlatformStateFree uneven{Vec2(0, 0), Vec2(1, 0), Vec2(2, 0)};
    CHECK_THROWS_AS(speed_gap(uneven, vt, 0.5), std::invalid_argument);
}

TEST_CASE("speed_gap matches the member's leg speeds for random betas")
{
    oracle::InstanceGen gen(42);
    for (int trial = 0; trial < 50; ++trial) {
        const auto s = gen.scenario();
        const PlatformStateFree p = free_from_constrained(s.platform);
        const Vec2 vt = s.target.velocity(s.grid);
        const double beta = gen.uniform(-3.0, 3.0);
        const SubspaceMember member = subspace_member(p, s.alpha_theta, s.target, s.grid, beta);
        const double direct = member.state.v1.squaredNorm() - member.state.v2.squaredNorm();
        const double gap = speed_gap(p, vt, beta);
        CHECK(std::abs(gap - direct) <=
              1e-10 * std::max({std::abs(gap), std::abs(direct), member.state.v1.squaredNorm()}));
    }
}

TEST_CASE("is_stealthy classification")
{
    // Legs straddling a direction orthogonal to the target velocity.
    const Vec2 vt(3.0, 1.0);
    const Vec2 d = Vec2(-1.0, 3.0).normalized() * 4.0;  // d is orthogonal to vt
    const Vec2 w = vt.normalized() * 6.0;
    const PlatformStateFree stealthy{Vec2(0, 0), w + 0.5 * d, w - 0.5 * d};
    CHECK(std::abs(stealthy.v1.norm() - stealthy.v2.norm()) <= 1e-12);
    CHECK(is_stealthy(stealthy, vt));

    // Every subspace member of a stealthy trajectory keeps equal speeds.
    for (const double beta : {-1.5, -0.5, 0.25, 0.75, 1.5}) {
        CHECK(std::abs(speed_gap(stealthy, vt, beta)) <= 1e-12 * w.squaredNorm());
    }

    const auto s = table_scenario(1);
    const PlatformStateFree p = free_from_constrained(s.platform);
    CHECK(!is_stealthy(p, s.target.velocity(s.grid)));

    // Single-leg degenerate: the difference vector vanishes.
    const PlatformStateFree single{Vec2(0, 0), Vec2(3, 4), Vec2(3, 4)};
    CHECK(is_stealthy(single, vt));
}
