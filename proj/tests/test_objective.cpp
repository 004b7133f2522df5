#include "platid/objective.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace platid;
using oracle::table_scenario;

namespace {

ObservedProducts make_obs(const oracle::Scenario& s)
{
    return ObservedProducts::from_fim(synthesize_observed(s.target, s.platform, s.grid, s.alpha_theta),
                                      s.target, s.grid);
}

// A slightly wrong candidate near the truth.
ConstrainedPlatformState nudged(const ConstrainedPlatformState& x, oracle::InstanceGen& gen)
{
    ConstrainedPlatformState y = x;
    y.xi += gen.uniform(-2e3, 2e3);
    y.eta += gen.uniform(-2e3, 2e3);
    y.s *= gen.uniform(0.7, 1.4);
    y.phi1 += gen.uniform(-0.5, 0.5);
    y.phi2 += gen.uniform(-0.5, 0.5);
    return y;
}

}  // namespace

TEST_CASE("frobenius_objective at the synthesis point and at alpha_theta = 0")
{
    const auto s = table_scenario(1);
    const ObservedProducts obs = make_obs(s);
    const double wnorm = weighted_norm_sq(obs.j_obs);

    CHECK(frobenius_objective(obs, s.platform, s.alpha_theta) <= 1e-18 * wnorm);
    CHECK(frobenius_objective(obs, s.platform, 0.0) == wnorm);
}

TEST_CASE("frobenius_objective equals the full-matrix distance")
{
    oracle::InstanceGen gen(31);
    for (int trial = 0; trial < 50; ++trial) {
        const auto s = gen.scenario();
        const ObservedProducts obs = make_obs(s);
        const ConstrainedPlatformState x = nudged(s.platform, gen);
        const double alpha = s.alpha_theta * gen.uniform(0.3, 3.0);

        const Eigen::Matrix4d jm = oracle::fim_direct(
            s.target, free_from_constrained(x), s.grid, alpha);
        const Eigen::Matrix4d jo =
            oracle::fim_direct(s.target, free_from_constrained(s.platform), s.grid, s.alpha_theta);
        const double want = oracle::frobenius_sq_direct(jo, jm);
        CHECK(oracle::rel_err(frobenius_objective(obs, x, alpha), want) <= 1e-10);
    }
}

TEST_CASE("frobenius_objective propagates coincident geometry")
{
    const auto s = table_scenario(1);
    const ObservedProducts obs = make_obs(s);
    // Candidate sitting exactly on the target's first position.
    const ConstrainedPlatformState crossing{s.target.p1.x(), s.target.p1.y(), 5.0, 0.0, 1.0};
    CHECK_THROWS_AS(frobenius_objective(obs, crossing, 1.0), std::invalid_argument);
}

TEST_CASE("alpha_theta_ls recovers the synthesis constant")
{
    for (const int which : {1, 2}) {
        const auto s = table_scenario(which);
        const ObservedProducts obs = make_obs(s);
        CHECK(alpha_theta_ls(obs, s.platform) == doctest::Approx(2.6580e3).epsilon(1e-12));
    }
}

TEST_CASE("alpha_theta_ls is zero for W-orthogonal observations")
{
    const auto s = table_scenario(1);
    const ObservedProducts base = make_obs(s);
    const FimVec9 ju = unit_fim_vec(base, s.platform);
    const FimVec9 w = weight_vec();

    // Remove the j_u component in the W inner product.
    oracle::InstanceGen gen(32);
    FimVec9 v;
    for (int i = 0; i < 9; ++i) v[i] = gen.uniform(-1.0, 1.0) * 1e-4;
    const double coeff = v.dot(w.cwiseProduct(ju)) / ju.dot(w.cwiseProduct(ju));
    const FimVec9 ortho = v - coeff * ju;

    ObservedProducts obs{ortho, s.target, s.grid};
    CHECK(std::abs(alpha_theta_ls(obs, s.platform)) <=
          1e-9 * ortho.norm() / ju.norm());
}

TEST_CASE("alpha_theta_ls minimizes F along alpha_theta")
{
    oracle::InstanceGen gen(33);
    for (int trial = 0; trial < 20; ++trial) {
        const auto s = gen.scenario();
        const ObservedProducts obs = make_obs(s);
        const ConstrainedPlatformState x = nudged(s.platform, gen);
        const double star = alpha_theta_ls(obs, x);
        const double f_star = frobenius_objective(obs, x, star);
        for (const double rel : {-0.5, -0.1, -1e-3, 1e-3, 0.1, 0.5}) {
            CHECK(f_star <= frobenius_objective(obs, x, star * (1.0 + rel)));
        }
    }
}

TEST_CASE("reduced objective at the truth hits the Cauchy-Schwarz bound")
{
    const auto s = table_scenario(1);
    const ObservedProducts obs = make_obs(s);
    const double bound = weighted_norm_sq(obs.j_obs);
    CHECK(oracle::rel_err(reduced_objective_G(obs, s.platform), bound) <= 1e-12);

    // ... which is the plain squared Frobenius norm of the observed matrix.
    const Eigen::Matrix4d jo =
        oracle::fim_direct(s.target, free_from_constrained(s.platform), s.grid, s.alpha_theta);
    CHECK(oracle::rel_err(bound, oracle::frobenius_sq_direct(jo, Eigen::Matrix4d::Zero())) <= 1e-10);
}

TEST_CASE("G scales quadratically with the observation")
{
    const auto s = table_scenario(2);
    const ObservedProducts obs = make_obs(s);
    oracle::InstanceGen gen(34);
    for (int trial = 0; trial < 20; ++trial) {
        const ConstrainedPlatformState x = nudged(s.platform, gen);
        const double c = gen.uniform(0.1, 10.0);
        ObservedProducts scaled = obs;
        scaled.j_obs *= c;
        CHECK(oracle::rel_err(reduced_objective_G(scaled, x), c * c * reduced_objective_G(obs, x)) <=
              1e-12);
    }
}

TEST_CASE("F + G decomposition and the bound")
{
    oracle::InstanceGen gen(35);
    for (int trial = 0; trial < 100; ++trial) {
        const auto s = gen.scenario();
        const ObservedProducts obs = make_obs(s);
        const ConstrainedPlatformState x = nudged(s.platform, gen);
        const double bound = weighted_norm_sq(obs.j_obs);
        const double g = reduced_objective_G(obs, x);
        const double f = frobenius_objective(obs, x, alpha_theta_ls(obs, x));
        CHECK(oracle::rel_err(f + g, bound) <= 1e-10);
        CHECK(g <= bound * (1.0 + 1e-12));
    }
}

TEST_CASE("argmax ordering is invariant to observation rescaling")
{
    const auto s = table_scenario(1);
    const ObservedProducts obs = make_obs(s);
    oracle::InstanceGen gen(36);
    for (int trial = 0; trial < 30; ++trial) {
        const ConstrainedPlatformState a = nudged(s.platform, gen);
        const ConstrainedPlatformState b = nudged(s.platform, gen);
        ObservedProducts scaled = obs;
        scaled.j_obs *= gen.uniform(0.01, 100.0);
        const bool order = reduced_objective_G(obs, a) > reduced_objective_G(obs, b);
        const bool order_scaled = reduced_objective_G(scaled, a) > reduced_objective_G(scaled, b);
        CHECK(order == order_scaled);
    }
}
