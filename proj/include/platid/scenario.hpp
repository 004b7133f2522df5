#pragma once

#include "platid/initguess.hpp"
#include "platid/motion.hpp"
#include "platid/optimizer.hpp"

#include <optional>
#include <string>
#include <vector>

namespace platid {

/// A scenario description as read from a `key = value` config file: the
/// sample grid, the intercepted target estimate, optionally the true platform
/// and the true alpha_theta (needed to synthesize intercepted products and to
/// score results), and the eavesdropper-side knowledge driving the
/// identification run.
struct ScenarioConfig {
    // grid.*
    double start_time = 0.0;
    double duration = 0.0;
    double period = 0.0;
    int turn_index = 0;

    // target.*
    Vec2 target_start{0.0, 0.0};
    Vec2 target_velocity{0.0, 0.0};

    // platform.* (the ground truth; optional)
    std::optional<ConstrainedPlatformState> platform;

    // truth.*: alpha_theta directly, or as q2 / sigma_theta_deg^2
    std::optional<double> alpha_theta;
    std::optional<double> q2;
    std::optional<double> sigma_theta_deg;

    // eavesdropper.*
    AlphaThetaBounds alpha_bounds;
    int n_theta = 0;
    bool turn_index_known = true;
    int sweep_lo = 0;
    int sweep_hi = 0;
    int sweep_step = 1;

    // optimizer.*
    SimplexParams optimizer;

    // output.*
    std::string output_directory = "out";

    TimeGrid make_grid() const;
    TargetState make_target() const;

    bool has_truth_alpha() const { return alpha_theta.has_value() || q2.has_value(); }
    /// Resolves the direct form or q2/sigma^2 (sigma given in degrees).
    double true_alpha_theta() const;

    bool has_sweep() const { return sweep_lo > 0; }
    std::vector<int> sweep_candidates() const;

    /// Re-checks every invariant; throws std::invalid_argument naming the field.
    void validate() const;

    bool operator==(const ScenarioConfig& other) const;
};

/// Parse the line-oriented `key = value` format. Blank lines and `#` comments
/// are ignored; unknown or duplicate keys, malformed lines and invariant
/// violations raise std::invalid_argument with the source name and line.
ScenarioConfig parse_config(const std::string& text, const std::string& source_name);
ScenarioConfig load_config(const std::string& path);

/// Canonical emission; load(emit(cfg)) == cfg for every valid config.
std::string emit_config(const ScenarioConfig& cfg);
void save_config(const ScenarioConfig& cfg, const std::string& path);

/// The two bundled demo scenarios (same target track, mirrored first leg).
ScenarioConfig scenario_i();
ScenarioConfig scenario_ii();

}  // namespace platid
