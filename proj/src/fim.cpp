#include "platid/fim.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace platid {

namespace {

// cos/sin of the bearing via the difference-vector ratios; avoids the
// atan2 round trip in the assembly hot path.
struct BearingTrig {
    double cos_t;
    double sin_t;
    double r;
};

BearingTrig bearing_trig(const TargetState& target, const Vec2& platform_pos, const TimeGrid& grid,
                         int i)
{
    const Vec2 d = target_position(target, grid, i) - platform_pos;
    const double r = d.norm();
    if (r == 0.0) throw std::invalid_argument("fim: coincident target and platform positions");
    return BearingTrig{d.y() / r, d.x() / r, r};
}

}  // namespace

Eigen::Vector4d bearing_gradient(const TargetState& target, const Vec2& platform_pos,
                                 const TimeGrid& grid, int i)
{
    const BearingTrig b = bearing_trig(target, platform_pos, grid, i);
    const double a = grid.alpha(i);
    Eigen::Vector4d g;
    g << (1.0 - a) * b.cos_t, -(1.0 - a) * b.sin_t, a * b.cos_t, -a * b.sin_t;
    return g / b.r;
}

Eigen::Matrix2d bearing_dyad(double theta)
{
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    Eigen::Matrix2d d;
    d << c * c, -s * c, -s * c, s * s;
    return d;
}

Fim assemble_fim(const TargetState& target, const PlatformStateFree& platform, const TimeGrid& grid,
                 double alpha_theta)
{
    if (!(alpha_theta > 0.0)) throw std::invalid_argument("assemble_fim: alpha_theta must be positive");

    // Blockwise accumulation keeps the symmetry and the J23 = J14 repetition
    // exact: the shared off-diagonal block is computed once.
    Eigen::Matrix2d b11 = Eigen::Matrix2d::Zero();
    Eigen::Matrix2d b12 = Eigen::Matrix2d::Zero();
    Eigen::Matrix2d b22 = Eigen::Matrix2d::Zero();
    for (int i = 1; i <= grid.size(); ++i) {
        const BearingTrig b = bearing_trig(target, platform_position(platform, grid, i), grid, i);
        const double a = grid.alpha(i);
        const Vec2 y = Vec2(b.cos_t, -b.sin_t) / b.r;
        const Eigen::Matrix2d dyad = y * y.transpose();
        b11 += (1.0 - a) * (1.0 - a) * dyad;
        b12 += a * (1.0 - a) * dyad;
        b22 += a * a * dyad;
    }
    Fim fim;
    fim.m.block<2, 2>(0, 0) = alpha_theta * b11;
    fim.m.block<2, 2>(0, 2) = alpha_theta * b12;
    fim.m.block<2, 2>(2, 0) = alpha_theta * b12;
    fim.m.block<2, 2>(2, 2) = alpha_theta * b22;
    return fim;
}

Fim synthesize_observed(const TargetState& target_estimate, const ConstrainedPlatformState& platform_truth,
                        const TimeGrid& grid, double alpha_theta_true)
{
    return assemble_fim(target_estimate, free_from_constrained(platform_truth), grid, alpha_theta_true);
}

FimBlocks blocks(const Fim& fim)
{
    return FimBlocks{fim.m.block<2, 2>(0, 0), fim.m.block<2, 2>(0, 2), fim.m.block<2, 2>(2, 0),
                     fim.m.block<2, 2>(2, 2)};
}

FimVec9 pack9(const Fim& fim)
{
    const Eigen::Matrix4d& m = fim.m;
    const double scale = m.cwiseAbs().maxCoeff();
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw std::domain_error("pack9: matrix is not symmetric");
    }
    if (std::abs(m(1, 2) - m(0, 3)) > 1e-9 * std::max(std::abs(m(1, 2)), std::abs(m(0, 3)))) {
        throw std::domain_error("pack9: J23 != J14, not a valid bearing FIM");
    }
    FimVec9 v;
    v << m(0, 0), m(1, 1), m(2, 2), m(3, 3), m(0, 1), m(0, 2), m(0, 3), m(1, 3), m(2, 3);
    return v;
}

Fim unpack9(const FimVec9& v)
{
    Fim fim;
    Eigen::Matrix4d& m = fim.m;
    m(0, 0) = v[0];
    m(1, 1) = v[1];
    m(2, 2) = v[2];
    m(3, 3) = v[3];
    m(0, 1) = m(1, 0) = v[4];
    m(0, 2) = m(2, 0) = v[5];
    m(0, 3) = m(3, 0) = v[6];
    m(1, 2) = m(2, 1) = v[6];
    m(1, 3) = m(3, 1) = v[7];
    m(2, 3) = m(3, 2) = v[8];
    return fim;
}

FimVec9 weight_vec()
{
    FimVec9 w;
    w << 1, 1, 1, 1, 2, 2, 4, 2, 2;
    return w;
}

void validate_fim(const Fim& fim)
{
    const Eigen::Matrix4d& m = fim.m;
    if (!m.allFinite()) throw std::domain_error("Fim: non-finite entries");
    const double scale = m.cwiseAbs().maxCoeff();
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw std::domain_error("Fim: matrix is not symmetric");
    }
    if (std::abs(m(1, 2) - m(0, 3)) > 1e-9 * std::max(std::abs(m(1, 2)), std::abs(m(0, 3)))) {
        throw std::domain_error("Fim: J23 != J14");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> eig(m, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < -1e-10 * m.trace()) {
        throw std::domain_error("Fim: matrix is not positive semidefinite");
    }
}

}  // namespace platid
