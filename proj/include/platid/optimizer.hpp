#pragma once

#include "platid/initguess.hpp"
#include "platid/motion.hpp"
#include "platid/objective.hpp"

#include <Eigen/Core>

#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace platid {

/// Nelder-Mead coefficients, stopping rules, and the step rules used to build
/// the initial simplex around a platform-state guess. Coordinates mix meters
/// and radians, so steps are per kind: positions use a fraction of the coarse
/// range estimate, speed and angles use absolute steps.
struct SimplexParams {
    double reflection = 1.0;
    double expansion = 2.0;
    double contraction = 0.5;
    double shrink = 0.5;
    int max_iterations = 20000;
    double objective_rel_tol = 1e-12;  ///< relative best-worst objective spread
    double simplex_rel_tol = 1e-9;     ///< relative per-coordinate simplex diameter

    double position_step_fraction = 0.05;  ///< of max(r1_hat, rn_hat)
    double speed_step = 0.5;               ///< m/s
    double angle_step = 0.05;              ///< rad

    void validate() const;
};

struct SimplexTracePoint {
    int iteration = 0;
    double value = 0.0;
    Eigen::VectorXd best;
};

struct NelderMeadResult {
    Eigen::VectorXd x;
    double value = 0.0;
    int iterations = 0;
    std::vector<SimplexTracePoint> trace;  ///< best vertex per iteration, nondecreasing value
};

/// Derivative-free simplex maximization. Deterministic given (f, x0, steps,
/// params). Evaluation failures or non-finite values at the initial simplex
/// propagate; later ones are treated as -inf, which contracts the simplex
/// back toward the best vertex. Angle-like coordinates are left unwrapped.
NelderMeadResult nelder_mead_maximize(const std::function<double(const Eigen::VectorXd&)>& f,
                                      const Eigen::VectorXd& x0, const Eigen::VectorXd& steps,
                                      const SimplexParams& params);

struct ZoneTracePoint {
    int iteration = 0;
    double g = 0.0;
    double rspe = std::numeric_limits<double>::quiet_NaN();  ///< NaN without truth
};

struct ZoneOutcome {
    std::string zone;
    bool ok = false;
    std::string error;
    ZoneGuess guess;
    ConstrainedPlatformState state;  ///< optimized, headings normalized
    double g = 0.0;
    double rspe = std::numeric_limits<double>::quiet_NaN();
    int iterations = 0;
    std::vector<ZoneTracePoint> trace;
};

struct IdentifyDiagnostics {
    bool stealthy = false;              ///< (v1 - v2) orthogonal to target velocity
    bool single_leg_degenerate = false; ///< v1 = v2 at the optimum
    bool condition_warning = false;
    double condition_number = 0.0;
};

struct IdentificationResult {
    ConstrainedPlatformState best_state;
    double alpha_theta_hat = 0.0;
    double g_best = 0.0;
    std::string zone;  ///< label of the winning zone
    double rspe = std::numeric_limits<double>::quiet_NaN();
    std::vector<ZoneOutcome> zones;
    IdentifyDiagnostics diagnostics;
};

/// Raised when every zone optimization failed; carries per-zone causes.
class IdentifyError : public std::runtime_error {
public:
    IdentifyError(const std::string& msg, std::vector<std::pair<std::string, std::string>> causes)
        : std::runtime_error(msg), causes_(std::move(causes))
    {
    }
    const std::vector<std::pair<std::string, std::string>>& zone_errors() const { return causes_; }

private:
    std::vector<std::pair<std::string, std::string>> causes_;
};

/// Maximize G from every zone guess and keep the best result; alpha_theta is
/// recovered in closed form at the winner. Supplying the true platform state
/// adds an RSPE column to the traces. Zone runs are independent; `parallel`
/// bounds the worker count (results do not depend on it).
IdentificationResult identify(const ObservedProducts& obs, const GuessSet& guesses,
                              const SimplexParams& params,
                              const ConstrainedPlatformState* truth = nullptr, int parallel = 1);

/// Time-averaged root-square position error between two trajectories.
double rspe(const ConstrainedPlatformState& candidate, const ConstrainedPlatformState& truth,
            const TimeGrid& grid);
double rspe(const Waypoints& candidate, const Waypoints& truth, const TimeGrid& grid);

struct TkSweepEntry {
    int k = 0;
    bool ok = false;
    std::string error;
    double g_best = 0.0;
    double rspe = std::numeric_limits<double>::quiet_NaN();  ///< min over zones, with truth
};

/// Grid search over assumed turning indices: one full guess + identify run
/// per candidate. Per-candidate failures are recorded and the sweep continues.
std::vector<TkSweepEntry> tk_sensitivity(const ObservedProducts& obs,
                                         const std::vector<int>& k_candidates,
                                         const AlphaThetaBounds& bounds, int n_theta,
                                         const SimplexParams& params,
                                         const ConstrainedPlatformState* truth = nullptr,
                                         int parallel = 1);

}  // namespace platid
