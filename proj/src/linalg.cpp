#include "platid/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>

namespace platid {

namespace {

Eigen::Vector2d canonical_sign(Eigen::Vector2d v)
{
    if (v.x() < 0.0 || (v.x() == 0.0 && v.y() < 0.0)) v = -v;
    return v;
}

}  // namespace

SymEig2 sym_eig2(const Eigen::Matrix2d& m)
{
    const double a = m(0, 0);
    const double b = 0.5 * (m(0, 1) + m(1, 0));
    const double c = m(1, 1);
    const double mean = 0.5 * (a + c);
    const double half_gap = 0.5 * (a - c);
    const double disc = std::hypot(half_gap, b);

    SymEig2 out;
    out.lam_max = mean + disc;
    out.lam_min = mean - disc;
    out.ambiguous = 2.0 * disc <= 1e-12 * (std::abs(out.lam_max) + std::abs(out.lam_min));

    if (disc == 0.0) return out;  // defaults (1,0)/(0,1); flagged ambiguous

    // Two algebraically equivalent eigenvector formulas; take the one with
    // the larger norm for stability.
    const Eigen::Vector2d cand1(b, out.lam_max - a);
    const Eigen::Vector2d cand2(out.lam_max - c, b);
    Eigen::Vector2d v = cand1.norm() >= cand2.norm() ? cand1 : cand2;
    v.normalize();
    out.v_max = canonical_sign(v);
    out.v_min = canonical_sign(Eigen::Vector2d(-out.v_max.y(), out.v_max.x()));
    return out;
}

double sym_cond4(const Eigen::Matrix4d& m)
{
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> eig(m, Eigen::EigenvaluesOnly);
    const double lo = eig.eigenvalues().cwiseAbs().minCoeff();
    const double hi = eig.eigenvalues().cwiseAbs().maxCoeff();
    if (lo == 0.0) return std::numeric_limits<double>::infinity();
    return hi / lo;
}

}  // namespace platid
