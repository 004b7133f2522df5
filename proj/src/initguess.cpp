#include "platid/initguess.hpp"

#include "platid/linalg.hpp"

#include <Eigen/LU>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace platid {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMaxCondition = 1e12;

double alpha_grid_value(const AlphaThetaBounds& b, int m, int n_theta)
{
    return b.min + (b.max - b.min) * (m - 1) / (n_theta - 1);
}

// Position at t_m on the two-leg trajectory {p1, pk, pn}.
Vec2 two_leg_position(const Vec2& p1, const Vec2& pk, const Vec2& pn, const TimeGrid& grid, int i)
{
    const double t = grid.time(i);
    const double tk = grid.turn_time();
    if (t < tk) return p1 + (t - grid.start_time()) / (tk - grid.start_time()) * (pk - p1);
    return pk + (t - tk) / (grid.end_time() - tk) * (pn - pk);
}

}  // namespace

std::pair<double, double> range_estimates(const Fim& j_obs, const TimeGrid& grid, double alpha_theta)
{
    if (!(alpha_theta > 0.0)) throw std::invalid_argument("range_estimates: alpha_theta must be positive");
    double sum1 = 0.0;
    double sumn = 0.0;
    for (int i = 1; i <= grid.size(); ++i) {
        const double a = grid.alpha(i);
        sum1 += (1.0 - a) * (1.0 - a);
        sumn += a * a;
    }
    const FimBlocks b = blocks(j_obs);
    const double tr1 = b.j11.trace();
    const double trn = b.j22.trace();
    if (!(tr1 > 0.0) || !(trn > 0.0)) {
        throw std::domain_error("range_estimates: nonpositive diagonal-block trace, invalid FIM");
    }
    return {std::sqrt(alpha_theta * sum1 / tr1), std::sqrt(alpha_theta * sumn / trn)};
}

std::pair<Eigen::Matrix2d, Eigen::Matrix2d> covariance_blocks(const Fim& j_obs)
{
    const double cond = sym_cond4(j_obs.m);
    if (!(cond < kMaxCondition)) {
        throw std::domain_error(
            "covariance_blocks: observed FIM is near-singular (condition " + std::to_string(cond) +
            "), unobservable geometry");
    }
    const FimBlocks b = blocks(j_obs);
    const Eigen::Matrix2d s1 = b.j11 - b.j12 * b.j22.inverse() * b.j12;
    const Eigen::Matrix2d s2 = b.j22 - b.j12 * b.j11.inverse() * b.j12;
    return {s1.inverse(), s2.inverse()};
}

std::pair<Vec2, Vec2> bearing_axes(const Fim& j_obs)
{
    const auto [c11, c22] = covariance_blocks(j_obs);
    const SymEig2 e1 = sym_eig2(c11);
    const SymEig2 en = sym_eig2(c22);
    if (e1.ambiguous || en.ambiguous) {
        throw std::domain_error("bearing_axes: repeated eigenvalues, uncertainty axis is ambiguous");
    }
    return {e1.v_max, en.v_max};
}

Vec2 perp_unit(const Vec2& v)
{
    const double n = v.norm();
    if (n == 0.0) throw std::invalid_argument("perp_unit: zero vector");
    return Vec2(-v.y(), v.x()) / n;
}

std::array<AxisPair, 2> admissible_pairs(const Vec2& i1, const Vec2& in, const Vec2& target_velocity)
{
    const Vec2 u = perp_unit(target_velocity);
    const double d1 = i1.dot(u);
    const double dn = in.dot(u);
    if (std::abs(d1) <= 1e-12 || std::abs(dn) <= 1e-12) {
        throw std::domain_error(
            "admissible_pairs: bearing axis orthogonal to the target-track normal "
            "(platform lies on the target line)");
    }
    const Vec2 a1 = d1 > 0.0 ? i1 : Vec2(-i1);
    const Vec2 an = dn > 0.0 ? in : Vec2(-in);
    return {AxisPair{a1, an}, AxisPair{-a1, -an}};
}

std::pair<Vec2, Vec2> endpoint_guesses(const TargetState& target, double r1_hat, double rn_hat,
                                       const AxisPair& pair)
{
    return {target.p1 + r1_hat * pair.i1, target.pn + rn_hat * pair.in};
}

int middle_sample(const TimeGrid& grid)
{
    const double t_mid = grid.start_time() + 0.5 * grid.duration();
    int best = 1;
    double best_dist = std::abs(grid.time(1) - t_mid);
    for (int i = 2; i <= grid.size(); ++i) {
        const double d = std::abs(grid.time(i) - t_mid);
        if (d < best_dist) {
            best = i;
            best_dist = d;
        }
    }
    return best;
}

Vec2 midpoint_probe(const Fim& j_obs, const TimeGrid& grid, double alpha_theta,
                    const TargetState& target, const Vec2& i1_resolved, const Vec2& target_velocity)
{
    if (!(alpha_theta > 0.0)) throw std::invalid_argument("midpoint_probe: alpha_theta must be positive");
    const FimBlocks b = blocks(j_obs);
    const double tr = b.j12.trace();
    if (!(tr > 0.0)) throw std::domain_error("midpoint_probe: nonpositive off-diagonal block trace");

    double sum = 0.0;
    for (int i = 1; i <= grid.size(); ++i) {
        const double a = grid.alpha(i);
        sum += a * (1.0 - a);
    }
    const double rm = std::sqrt(alpha_theta * sum / tr);

    const SymEig2 e = sym_eig2(b.j12);
    if (e.ambiguous) {
        throw std::domain_error("midpoint_probe: repeated eigenvalues, range direction is ambiguous");
    }
    Vec2 im = e.v_min;  // no information along the range direction
    const Vec2 u = perp_unit(target_velocity);
    if (im.dot(u) * i1_resolved.dot(u) < 0.0) im = -im;

    return target_position(target, grid, middle_sample(grid)) + rm * im;
}

Waypoints turn_guess(const Vec2& p1_hat, const Vec2& pn_hat, const TimeGrid& grid, const Vec2& probe)
{
    const Vec2 chord = pn_hat - p1_hat;
    const double chord_len = chord.norm();
    if (chord_len == 0.0) throw std::invalid_argument("turn_guess: coincident endpoint guesses");

    const double tau1 = grid.turn_time() - grid.start_time();
    const double tau2 = grid.end_time() - grid.turn_time();
    const double nu = std::atan(tau1 / tau2);
    const double leg1_len = tau1 / tau2 * chord_len * std::cos(nu);  // = chord_len * sin(nu)
    const double psi0 = heading_of(chord);

    const int m = middle_sample(grid);
    Vec2 best_pk{0.0, 0.0};
    double best_dist = 0.0;
    for (const int ell : {-1, +1}) {
        const double psi = psi0 + ell * (kPi / 2.0 - nu);
        const Vec2 pk = p1_hat + leg1_len * heading_unit(psi);
        const double d = (probe - two_leg_position(p1_hat, pk, pn_hat, grid, m)).norm();
        if (ell == -1 || d < best_dist) {
            best_pk = pk;
            best_dist = d;
        }
    }
    return Waypoints{p1_hat, best_pk, pn_hat};
}

GuessSet zone_guesses(const ObservedProducts& obs, const AlphaThetaBounds& bounds, int n_theta)
{
    if (!(bounds.min > 0.0) || !(bounds.min < bounds.max)) {
        throw std::invalid_argument("zone_guesses: need 0 < alpha_min < alpha_max");
    }
    if (n_theta < 3) throw std::invalid_argument("zone_guesses: need at least 3 grid values");

    const Fim j_obs = unpack9(obs.j_obs);
    const TimeGrid& grid = obs.grid;
    const Vec2 vt = obs.target.velocity(grid);

    GuessSet out;
    out.condition_number = sym_cond4(j_obs.m);

    const auto [axis1, axisn] = bearing_axes(j_obs);  // throws on unobservable geometry
    const auto pairs = admissible_pairs(axis1, axisn, vt);

    struct Candidate {
        bool ok = false;
        std::string error;
        Waypoints waypoints;
        double g_value = 0.0;
        double chord_heading = 0.0;
        double alpha = 0.0;
        double r1 = 0.0;
        double rn = 0.0;
    };
    // candidate(m, g) at [m-1][g-1]
    std::vector<std::array<Candidate, 2>> cand(n_theta);

    std::string first_error;
    for (int m = 1; m <= n_theta; ++m) {
        const double alpha = alpha_grid_value(bounds, m, n_theta);
        for (int g = 1; g <= 2; ++g) {
            Candidate& c = cand[m - 1][g - 1];
            c.alpha = alpha;
            try {
                const auto [r1, rn] = range_estimates(j_obs, grid, alpha);
                const auto [p1, pn] = endpoint_guesses(obs.target, r1, rn, pairs[g - 1]);
                const Vec2 probe = midpoint_probe(j_obs, grid, alpha, obs.target, pairs[g - 1].i1, vt);
                c.waypoints = turn_guess(p1, pn, grid, probe);
                c.g_value = reduced_objective_G(obs, state_from_waypoints(c.waypoints, grid));
                c.chord_heading = heading_of(pn - p1);
                c.r1 = r1;
                c.rn = rn;
                c.ok = true;
            } catch (const std::exception& e) {
                c.error = e.what();
                if (first_error.empty()) first_error = c.error;
            }
        }
    }

    // Zone split: find the first chord-heading sign change along the grid.
    int flip_m = 0;
    int flip_g = 0;
    for (int g = 1; g <= 2 && flip_g == 0; ++g) {
        for (int m = 1; m < n_theta; ++m) {
            const Candidate& a = cand[m - 1][g - 1];
            const Candidate& b = cand[m][g - 1];
            if (a.ok && b.ok && (a.chord_heading >= 0.0) != (b.chord_heading >= 0.0)) {
                flip_m = m;
                flip_g = g;
                break;
            }
        }
    }

    struct ZoneSpec {
        std::string label;
        int g = 0;
        int m_lo = 0;
        int m_hi = 0;
    };
    std::vector<ZoneSpec> zone_specs;
    if (flip_g != 0) {
        const int other_g = flip_g == 1 ? 2 : 1;
        zone_specs.push_back({"a", other_g, 1, n_theta});
        zone_specs.push_back({"b", flip_g, 1, flip_m});
        zone_specs.push_back({"c", flip_g, flip_m + 1, n_theta});
    } else {
        zone_specs.push_back({"a", 1, 1, n_theta});
        zone_specs.push_back({"b", 2, 1, n_theta});
        out.zone_c_absent = true;
    }

    for (const ZoneSpec& zs : zone_specs) {
        const Candidate* best = nullptr;
        int best_m = 0;
        for (int m = zs.m_lo; m <= zs.m_hi; ++m) {
            const Candidate& c = cand[m - 1][zs.g - 1];
            if (!c.ok) continue;
            if (best == nullptr || c.g_value > best->g_value) {
                best = &c;
                best_m = m;
            }
        }
        if (best == nullptr) {
            if (zs.label == "c") out.zone_c_absent = true;
            continue;
        }
        out.zones.push_back(ZoneGuess{zs.label, best->waypoints, best->alpha, best_m, zs.g,
                                      best->g_value, best->r1, best->rn});
    }

    if (out.zones.empty()) {
        throw std::runtime_error("zone_guesses: no valid candidate on the grid (" + first_error + ")");
    }
    return out;
}

int n_theta_min(const AlphaThetaBounds& bounds)
{
    if (!(bounds.min > 0.0) || !(bounds.min <= bounds.max)) {
        throw std::invalid_argument("n_theta_min: need 0 < alpha_min <= alpha_max");
    }
    return static_cast<int>(std::ceil(0.5 * (bounds.min + bounds.max) / bounds.min)) + 1;
}

}  // namespace platid
