#include "platid/fim.hpp"

#include "platid/linalg.hpp"
#include "platid/observability.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>

using namespace platid;
using oracle::table_scenario;

TEST_CASE("bearing_gradient support and norm")
{
    const auto s = table_scenario(1);
    const PlatformStateFree p = free_from_constrained(s.platform);

    const Eigen::Vector4d g1 = bearing_gradient(s.target, platform_position(p, s.grid, 1), s.grid, 1);
    CHECK(g1[2] == 0.0);
    CHECK(g1[3] == 0.0);

    const int n = s.grid.size();
    const Eigen::Vector4d gn = bearing_gradient(s.target, platform_position(p, s.grid, n), s.grid, n);
    CHECK(gn[0] == 0.0);
    CHECK(gn[1] == 0.0);

    for (const int i : {1, 57, 101, 160, n}) {
        const Vec2 pp = platform_position(p, s.grid, i);
        const double a = s.grid.alpha(i);
        const double r = range(s.target, pp, s.grid, i);
        const double want = std::sqrt((1.0 - a) * (1.0 - a) + a * a) / r;
        CHECK(bearing_gradient(s.target, pp, s.grid, i).norm() ==
              doctest::Approx(want).epsilon(1e-12));
    }

    CHECK_THROWS_AS(bearing_gradient(s.target, s.target.p1, s.grid, 1), std::invalid_argument);
}

TEST_CASE("bearing_dyad is the cross-range projector")
{
    const Eigen::Matrix2d d0 = bearing_dyad(0.0);
    CHECK(d0(0, 0) == 1.0);
    CHECK(d0(0, 1) == doctest::Approx(0.0));
    CHECK(d0(1, 1) == doctest::Approx(0.0));
    // Null direction is the bearing unit vector (sin 0, cos 0) = (0, 1).
    CHECK((d0 * Vec2(0.0, 1.0)).norm() == doctest::Approx(0.0));

    oracle::InstanceGen gen(21);
    for (int trial = 0; trial < 100; ++trial) {
        const double theta = gen.uniform(-3.2, 3.2);
        const Eigen::Matrix2d d = bearing_dyad(theta);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(d);
        CHECK(eig.eigenvalues()[0] == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(eig.eigenvalues()[1] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK((d * d - d).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK((d * Vec2(std::sin(theta), std::cos(theta))).norm() <= 1e-12);
    }
}

TEST_CASE("assemble_fim disjoint support on a two-sample grid")
{
    // alpha = {0, 1}: the two gradients have disjoint support, so the
    // off-diagonal blocks vanish. A grid with two samples has no valid turn
    // index; a single-leg (v1 = v2) trajectory is the only one it supports.
    const TimeGrid g = TimeGrid::without_turn({0.0, 800.0});
    const TargetState target{Vec2(0.0, 10e3), Vec2(2e3, 12e3)};
    const PlatformStateFree platform{Vec2(1e3, -2e3), Vec2(3.0, 4.0), Vec2(3.0, 4.0)};
    const Fim f = assemble_fim(target, platform, g, 100.0);
    CHECK(f.m.block<2, 2>(0, 2).cwiseAbs().maxCoeff() == 0.0);
    CHECK(f.m.block<2, 2>(2, 0).cwiseAbs().maxCoeff() == 0.0);
    validate_fim(f);
}

TEST_CASE("assemble_fim linearity in alpha_theta")
{
    const auto s = table_scenario(1);
    const PlatformStateFree p = free_from_constrained(s.platform);
    const Fim f1 = assemble_fim(s.target, p, s.grid, s.alpha_theta);
    const Fim f2 = assemble_fim(s.target, p, s.grid, 2.0 * s.alpha_theta);
    CHECK(oracle::rel_err(f2.m, Eigen::Matrix4d(2.0 * f1.m)) <= 1e-15);
    CHECK_THROWS_AS(assemble_fim(s.target, p, s.grid, 0.0), std::invalid_argument);
}

TEST_CASE("assemble_fim matches the summation oracle on scenario (i)")
{
    const auto s = table_scenario(1);
    const PlatformStateFree p = free_from_constrained(s.platform);
    const Fim f = assemble_fim(s.target, p, s.grid, s.alpha_theta);
    const Eigen::Matrix4d want = oracle::fim_direct(s.target, p, s.grid, s.alpha_theta);
    CHECK(oracle::rel_err(f.m, want) <= 1e-10);

    // synthesize_observed is the same assembly with the roles named.
    const Fim obs = synthesize_observed(s.target, s.platform, s.grid, s.alpha_theta);
    CHECK(obs.m == f.m);
}

TEST_CASE("assemble_fim rejects coincident geometry")
{
    const TimeGrid g = TimeGrid::uniform(0.0, 100.0, 10.0, 4);
    const TargetState target{Vec2(0.0, 0.0), Vec2(100.0, 0.0)};
    const PlatformStateFree crossing{Vec2(0.0, 0.0), Vec2(1.0, 0.0), Vec2(1.0, 0.0)};
    CHECK_THROWS_AS(assemble_fim(target, crossing, g, 1.0), std::invalid_argument);
}

TEST_CASE("assembled FIMs satisfy every structural invariant")
{
    oracle::InstanceGen gen(22);
    for (int trial = 0; trial < 100; ++trial) {
        const auto s = gen.scenario();
        const Fim f = synthesize_observed(s.target, s.platform, s.grid, s.alpha_theta);
        validate_fim(f);
        CHECK(f.m(1, 2) == f.m(0, 3));
        CHECK(f.m == f.m.transpose().eval());
    }
}

TEST_CASE("per-sample additivity against the oracle")
{
    oracle::InstanceGen gen(23);
    for (int trial = 0; trial < 20; ++trial) {
        const auto s = gen.scenario();
        const PlatformStateFree p = free_from_constrained(s.platform);
        const int split = gen.uniform_int(1, s.grid.size() - 1);
        const Eigen::Matrix4d head = oracle::fim_direct(s.target, p, s.grid, s.alpha_theta, 1, split);
        const Eigen::Matrix4d tail =
            oracle::fim_direct(s.target, p, s.grid, s.alpha_theta, split + 1, s.grid.size());
        const Fim full = assemble_fim(s.target, p, s.grid, s.alpha_theta);
        CHECK(oracle::rel_err(full.m, Eigen::Matrix4d(head + tail)) <= 1e-12);
    }
}

TEST_CASE("blocks partition the matrix")
{
    oracle::InstanceGen gen(26);
    const Fim cases[3] = {
        synthesize_observed(table_scenario(1).target, table_scenario(1).platform,
                            table_scenario(1).grid, table_scenario(1).alpha_theta),
        synthesize_observed(table_scenario(2).target, table_scenario(2).platform,
                            table_scenario(2).grid, table_scenario(2).alpha_theta),
        [&] {
            const auto s = gen.scenario();
            return synthesize_observed(s.target, s.platform, s.grid, s.alpha_theta);
        }(),
    };
    for (const Fim& f : cases) {
        const FimBlocks b = blocks(f);
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) {
                CHECK(b.j11(r, c) == f.m(r, c));
                CHECK(b.j12(r, c) == f.m(r, c + 2));
                CHECK(b.j21(r, c) == f.m(r + 2, c));
                CHECK(b.j22(r, c) == f.m(r + 2, c + 2));
            }
        }
        CHECK(b.j12 == b.j21);
    }
}

TEST_CASE("pack9/unpack9 bijection and minor-diagonal check")
{
    const auto s = table_scenario(1);
    const Fim f = synthesize_observed(s.target, s.platform, s.grid, s.alpha_theta);
    const FimVec9 v = pack9(f);
    CHECK(unpack9(v).m == f.m);
    CHECK(v[6] == f.m(0, 3));
    CHECK(v[6] == f.m(1, 2));

    Fim bad = f;
    bad.m(1, 2) *= 1.5;
    bad.m(2, 1) = bad.m(1, 2);
    CHECK_THROWS_AS(pack9(bad), std::domain_error);

    Fim asym = f;
    asym.m(0, 1) *= 2.0;
    CHECK_THROWS_AS(pack9(asym), std::domain_error);
}

TEST_CASE("weight_vec counts entry repetitions")
{
    const FimVec9 w = weight_vec();
    CHECK(w.sum() == 16.0);
    CHECK(w[6] == 4.0);  // the J14 = J23 slot appears four times

    // Weighted 9-vector distance equals the all-entries Frobenius square.
    oracle::InstanceGen gen(24);
    for (int trial = 0; trial < 100; ++trial) {
        const auto sa = gen.scenario();
        const auto sb = gen.scenario();
        const Fim fa = synthesize_observed(sa.target, sa.platform, sa.grid, sa.alpha_theta);
        const Fim fb = synthesize_observed(sb.target, sb.platform, sb.grid, sb.alpha_theta);
        const FimVec9 d = pack9(fa) - pack9(fb);
        const double got = d.dot(w.cwiseProduct(d));
        const double want = oracle::frobenius_sq_direct(fa.m, fb.m);
        CHECK(oracle::rel_err(got, want) <= 1e-12);
    }
}

TEST_CASE("subspace members reproduce the FIM")
{
    oracle::InstanceGen gen(25);
    for (int trial = 0; trial < 30; ++trial) {
        const auto s = gen.scenario();
        const PlatformStateFree p = free_from_constrained(s.platform);
        const Fim f = assemble_fim(s.target, p, s.grid, s.alpha_theta);
        for (const double beta : {-1.0, 0.5, 2.0}) {
            const SubspaceMember member = subspace_member(p, s.alpha_theta, s.target, s.grid, beta);
            const Fim fm = assemble_fim(s.target, member.state, s.grid, member.alpha_theta);
            CHECK(oracle::rel_err(fm.m, f.m) <= 1e-12);
        }
    }
}
