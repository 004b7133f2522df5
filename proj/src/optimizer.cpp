#include "platid/optimizer.hpp"

#include "platid/observability.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

namespace platid {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Runs fn(0..count-1) on up to `threads` workers. fn must not throw and the
// calls must be independent; results are deterministic regardless of the
// worker count.
void parallel_for(int count, int threads, const std::function<void(int)>& fn)
{
    threads = std::min(threads, count);
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            while (true) {
                const int i = next.fetch_add(1);
                if (i >= count) break;
                fn(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace

void SimplexParams::validate() const
{
    if (!(reflection > 0.0)) throw std::invalid_argument("SimplexParams: reflection must be > 0");
    if (!(expansion > 1.0)) throw std::invalid_argument("SimplexParams: expansion must be > 1");
    if (!(contraction > 0.0 && contraction < 1.0)) {
        throw std::invalid_argument("SimplexParams: contraction must be in (0, 1)");
    }
    if (!(shrink > 0.0 && shrink < 1.0)) throw std::invalid_argument("SimplexParams: shrink must be in (0, 1)");
    if (max_iterations < 1) throw std::invalid_argument("SimplexParams: max_iterations must be >= 1");
    if (!(objective_rel_tol > 0.0) || !(simplex_rel_tol > 0.0)) {
        throw std::invalid_argument("SimplexParams: tolerances must be positive");
    }
    if (!(position_step_fraction > 0.0) || !(speed_step > 0.0) || !(angle_step > 0.0)) {
        throw std::invalid_argument("SimplexParams: step sizes must be positive");
    }
}

NelderMeadResult nelder_mead_maximize(const std::function<double(const Eigen::VectorXd&)>& f,
                                      const Eigen::VectorXd& x0, const Eigen::VectorXd& steps,
                                      const SimplexParams& params)
{
    params.validate();
    const int n = static_cast<int>(x0.size());
    if (steps.size() != n) throw std::invalid_argument("nelder_mead_maximize: steps size mismatch");
    for (int j = 0; j < n; ++j) {
        if (!(steps[j] != 0.0) || !std::isfinite(steps[j])) {
            throw std::invalid_argument("nelder_mead_maximize: initial steps must be finite and nonzero");
        }
    }

    // Initial simplex: evaluation failures here propagate to the caller.
    std::vector<Eigen::VectorXd> verts(n + 1, x0);
    std::vector<double> vals(n + 1);
    for (int j = 0; j < n; ++j) verts[j + 1][j] += steps[j];
    for (int i = 0; i <= n; ++i) {
        vals[i] = f(verts[i]);
        if (!std::isfinite(vals[i])) {
            throw std::domain_error("nelder_mead_maximize: non-finite objective at the initial simplex");
        }
    }

    // Mid-run failures count as -inf and get contracted away.
    auto soft_eval = [&](const Eigen::VectorXd& x) -> double {
        try {
            const double v = f(x);
            return std::isfinite(v) ? v : kNegInf;
        } catch (const std::exception&) {
            return kNegInf;
        }
    };

    auto sort_desc = [&] {
        std::vector<int> order(n + 1);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return vals[a] > vals[b]; });
        std::vector<Eigen::VectorXd> v2(n + 1);
        std::vector<double> f2(n + 1);
        for (int i = 0; i <= n; ++i) {
            v2[i] = std::move(verts[order[i]]);
            f2[i] = vals[order[i]];
        }
        verts = std::move(v2);
        vals = std::move(f2);
    };

    auto converged = [&] {
        const double spread = vals[0] - vals[n];
        const double denom = std::max({std::abs(vals[0]), std::abs(vals[n]), 1e-300});
        if (spread <= params.objective_rel_tol * denom) return true;
        for (int i = 1; i <= n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (std::abs(verts[i][j] - verts[0][j]) > params.simplex_rel_tol * std::max(1.0, std::abs(verts[0][j]))) {
                    return false;
                }
            }
        }
        return true;
    };

    NelderMeadResult res;
    int iter = 0;
    while (true) {
        sort_desc();
        res.trace.push_back({iter, vals[0], verts[0]});
        if (iter >= params.max_iterations || converged()) break;

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (int i = 0; i < n; ++i) centroid += verts[i];
        centroid /= n;

        const Eigen::VectorXd xr = centroid + params.reflection * (centroid - verts[n]);
        const double fr = soft_eval(xr);

        bool shrink_step = false;
        if (fr > vals[0]) {
            const Eigen::VectorXd xe = centroid + params.expansion * (xr - centroid);
            const double fe = soft_eval(xe);
            if (fe > fr) {
                verts[n] = xe;
                vals[n] = fe;
            } else {
                verts[n] = xr;
                vals[n] = fr;
            }
        } else if (fr > vals[n - 1]) {
            verts[n] = xr;
            vals[n] = fr;
        } else if (fr > vals[n]) {
            // Outside contraction.
            const Eigen::VectorXd xc = centroid + params.contraction * (xr - centroid);
            const double fc = soft_eval(xc);
            if (fc >= fr) {
                verts[n] = xc;
                vals[n] = fc;
            } else {
                shrink_step = true;
            }
        } else {
            // Inside contraction.
            const Eigen::VectorXd xc = centroid + params.contraction * (verts[n] - centroid);
            const double fc = soft_eval(xc);
            if (fc > vals[n]) {
                verts[n] = xc;
                vals[n] = fc;
            } else {
                shrink_step = true;
            }
        }
        if (shrink_step) {
            for (int i = 1; i <= n; ++i) {
                verts[i] = verts[0] + params.shrink * (verts[i] - verts[0]);
                vals[i] = soft_eval(verts[i]);
            }
        }
        ++iter;
    }

    res.x = verts[0];
    res.value = vals[0];
    res.iterations = iter;
    return res;
}

double rspe(const ConstrainedPlatformState& candidate, const ConstrainedPlatformState& truth,
            const TimeGrid& grid)
{
    const PlatformStateFree c = free_from_constrained(candidate);
    const PlatformStateFree t = free_from_constrained(truth);
    double sum = 0.0;
    for (int i = 1; i <= grid.size(); ++i) {
        sum += (platform_position(c, grid, i) - platform_position(t, grid, i)).norm();
    }
    return sum / grid.size();
}

double rspe(const Waypoints& candidate, const Waypoints& truth, const TimeGrid& grid)
{
    return rspe(state_from_waypoints(candidate, grid), state_from_waypoints(truth, grid), grid);
}

IdentificationResult identify(const ObservedProducts& obs, const GuessSet& guesses,
                              const SimplexParams& params, const ConstrainedPlatformState* truth,
                              int parallel)
{
    params.validate();
    if (guesses.zones.empty()) throw std::invalid_argument("identify: empty guess set");

    const int n_zones = static_cast<int>(guesses.zones.size());
    std::vector<ZoneOutcome> outcomes(n_zones);

    auto run_zone = [&](int idx) {
        const ZoneGuess& zg = guesses.zones[idx];
        ZoneOutcome& out = outcomes[idx];
        out.zone = zg.zone;
        out.guess = zg;
        try {
            const ConstrainedPlatformState x0 = state_from_waypoints(zg.waypoints, obs.grid);
            const double pos_step = params.position_step_fraction * std::max(zg.r1_hat, zg.rn_hat);
            Eigen::VectorXd steps(5);
            steps << pos_step, pos_step, params.speed_step, params.angle_step, params.angle_step;

            const auto g_of = [&obs](const Eigen::VectorXd& v) {
                return reduced_objective_G(obs, ConstrainedPlatformState::from_vector(v));
            };
            const NelderMeadResult nm = nelder_mead_maximize(g_of, x0.to_vector(), steps, params);

            out.state = ConstrainedPlatformState::from_vector(nm.x).normalized();
            out.g = nm.value;
            out.iterations = nm.iterations;
            out.trace.reserve(nm.trace.size());
            for (const SimplexTracePoint& tp : nm.trace) {
                ZoneTracePoint zp;
                zp.iteration = tp.iteration;
                zp.g = tp.value;
                if (truth != nullptr) {
                    zp.rspe = rspe(ConstrainedPlatformState::from_vector(tp.best), *truth, obs.grid);
                }
                out.trace.push_back(zp);
            }
            if (truth != nullptr) out.rspe = rspe(out.state, *truth, obs.grid);
            out.ok = true;
        } catch (const std::exception& e) {
            out.error = e.what();
        }
    };
    parallel_for(n_zones, std::max(1, parallel), run_zone);

    int best = -1;
    for (int i = 0; i < n_zones; ++i) {
        if (outcomes[i].ok && (best < 0 || outcomes[i].g > outcomes[best].g)) best = i;
    }
    if (best < 0) {
        std::vector<std::pair<std::string, std::string>> causes;
        std::string msg = "identify: all zone optimizations failed:";
        for (const ZoneOutcome& o : outcomes) {
            causes.emplace_back(o.zone, o.error);
            msg += " [zone " + o.zone + ": " + o.error + "]";
        }
        throw IdentifyError(msg, std::move(causes));
    }

    IdentificationResult res;
    res.best_state = outcomes[best].state;
    res.g_best = outcomes[best].g;
    res.zone = outcomes[best].zone;
    res.rspe = outcomes[best].rspe;
    res.alpha_theta_hat = alpha_theta_ls(obs, res.best_state);
    res.zones = std::move(outcomes);

    const PlatformStateFree opt = free_from_constrained(res.best_state);
    const Vec2 vt = obs.target.velocity(obs.grid);
    res.diagnostics.single_leg_degenerate =
        (opt.v1 - opt.v2).norm() <= 1e-9 * (opt.v1.norm() + opt.v2.norm());
    res.diagnostics.stealthy = is_stealthy(opt, vt);
    res.diagnostics.condition_number = guesses.condition_number;
    res.diagnostics.condition_warning = guesses.condition_number > 1e8;
    return res;
}

std::vector<TkSweepEntry> tk_sensitivity(const ObservedProducts& obs,
                                         const std::vector<int>& k_candidates,
                                         const AlphaThetaBounds& bounds, int n_theta,
                                         const SimplexParams& params,
                                         const ConstrainedPlatformState* truth, int parallel)
{
    params.validate();
    const int count = static_cast<int>(k_candidates.size());
    std::vector<TkSweepEntry> entries(count);

    auto run_candidate = [&](int idx) {
        TkSweepEntry& entry = entries[idx];
        entry.k = k_candidates[idx];
        try {
            const ObservedProducts obs_k = obs.with_turn_index(entry.k);
            const GuessSet guesses = zone_guesses(obs_k, bounds, n_theta);
            const IdentificationResult res = identify(obs_k, guesses, params, truth, 1);
            entry.g_best = res.g_best;
            if (truth != nullptr) {
                double best = std::numeric_limits<double>::infinity();
                for (const ZoneOutcome& z : res.zones) {
                    if (z.ok && z.rspe < best) best = z.rspe;
                }
                entry.rspe = best;
            }
            entry.ok = true;
        } catch (const std::exception& e) {
            entry.error = e.what();
        }
    };
    parallel_for(count, std::max(1, parallel), run_candidate);
    return entries;
}

}  // namespace platid
