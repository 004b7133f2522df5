#include "platid/scenario.hpp"

#include "platid/io.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace platid {

namespace {

[[noreturn]] void fail(const std::string& what) { throw std::invalid_argument(what); }

struct KeyValue {
    std::string value;
    int line = 0;
    bool used = false;
};

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

class ConfigReader {
public:
    ConfigReader(const std::string& text, std::string source) : source_(std::move(source))
    {
        std::istringstream in(text);
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            line = trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos) {
                fail(source_ + ":" + std::to_string(line_no) + ": expected 'key = value'");
            }
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty()) fail(source_ + ":" + std::to_string(line_no) + ": empty key");
            if (value.empty()) fail(source_ + ":" + std::to_string(line_no) + ": empty value for '" + key + "'");
            if (entries_.count(key) != 0) {
                fail(source_ + ":" + std::to_string(line_no) + ": duplicate key '" + key + "'");
            }
            entries_[key] = KeyValue{value, line_no, false};
        }
    }

    bool has(const std::string& key) const { return entries_.count(key) != 0; }

    double number(const std::string& key)
    {
        const KeyValue& kv = take(key);
        try {
            std::size_t pos = 0;
            const double v = std::stod(kv.value, &pos);
            if (pos != kv.value.size()) throw std::invalid_argument("trailing characters");
            return v;
        } catch (const std::exception&) {
            fail(at(key) + ": '" + kv.value + "' is not a number");
        }
    }

    int integer(const std::string& key)
    {
        const double v = number(key);
        if (v != std::floor(v) || std::abs(v) > 1e9) fail(at(key) + ": expected an integer");
        return static_cast<int>(v);
    }

    bool boolean(const std::string& key)
    {
        const KeyValue& kv = take(key);
        if (kv.value == "true" || kv.value == "1") return true;
        if (kv.value == "false" || kv.value == "0") return false;
        fail(at(key) + ": expected true/false");
    }

    std::string text(const std::string& key) { return take(key).value; }

    double require_number(const std::string& key)
    {
        if (!has(key)) fail(source_ + ": missing required key '" + key + "'");
        return number(key);
    }

    int require_integer(const std::string& key)
    {
        if (!has(key)) fail(source_ + ": missing required key '" + key + "'");
        return integer(key);
    }

    void reject_unused() const
    {
        for (const auto& [key, kv] : entries_) {
            if (!kv.used) {
                fail(source_ + ":" + std::to_string(kv.line) + ": unknown key '" + key + "'");
            }
        }
    }

private:
    const KeyValue& take(const std::string& key)
    {
        auto it = entries_.find(key);
        if (it == entries_.end()) fail(source_ + ": missing key '" + key + "'");
        it->second.used = true;
        return it->second;
    }

    std::string at(const std::string& key) const
    {
        return source_ + ":" + std::to_string(entries_.at(key).line) + ": " + key;
    }

    std::string source_;
    std::map<std::string, KeyValue> entries_;
};

int sample_count(double duration, double period)
{
    const double steps = duration / period;
    const double rounded = std::round(steps);
    if (std::abs(steps - rounded) > 1e-9 * std::max(1.0, steps)) return -1;
    return static_cast<int>(rounded) + 1;
}

}  // namespace

TimeGrid ScenarioConfig::make_grid() const
{
    return TimeGrid::uniform(start_time, duration, period, turn_index);
}

TargetState ScenarioConfig::make_target() const
{
    return TargetState{target_start, target_start + duration * target_velocity};
}

double ScenarioConfig::true_alpha_theta() const
{
    if (alpha_theta.has_value()) return *alpha_theta;
    if (q2.has_value() && sigma_theta_deg.has_value()) {
        const double sigma_rad = *sigma_theta_deg * std::numbers::pi / 180.0;
        return *q2 / (sigma_rad * sigma_rad);
    }
    fail("config has no truth.alpha_theta (or truth.q2 / truth.sigma_theta_deg pair)");
}

std::vector<int> ScenarioConfig::sweep_candidates() const
{
    if (!has_sweep()) fail("config has no eavesdropper.sweep_lo/sweep_hi range");
    std::vector<int> ks;
    for (int k = sweep_lo; k <= sweep_hi; k += sweep_step) ks.push_back(k);
    return ks;
}

void ScenarioConfig::validate() const
{
    if (!(duration > 0.0)) fail("grid.duration must be positive");
    if (!(period > 0.0)) fail("grid.period must be positive");
    const int n = sample_count(duration, period);
    if (n < 0) fail("grid.period does not divide grid.duration");
    if (turn_index <= 1 || turn_index >= n) {
        fail("grid.turn_index must satisfy 1 < k < n (n = " + std::to_string(n) + ")");
    }
    if (!std::isfinite(start_time)) fail("grid.start_time must be finite");
    if (!target_start.allFinite() || !target_velocity.allFinite()) {
        fail("target.* values must be finite");
    }
    if (platform.has_value()) {
        if (!(platform->s > 0.0)) fail("platform.speed must be positive");
    }
    if (alpha_theta.has_value() && (q2.has_value() || sigma_theta_deg.has_value())) {
        fail("give either truth.alpha_theta or the truth.q2 / truth.sigma_theta_deg pair, not both");
    }
    if (q2.has_value() != sigma_theta_deg.has_value()) {
        fail("truth.q2 and truth.sigma_theta_deg must be given together");
    }
    if (has_truth_alpha() && !(true_alpha_theta() > 0.0)) fail("true alpha_theta must be positive");
    if (!(alpha_bounds.min > 0.0) || !(alpha_bounds.min < alpha_bounds.max)) {
        fail("eavesdropper alpha_theta bounds must satisfy 0 < min < max");
    }
    if (n_theta < 3) fail("eavesdropper.n_theta must be at least 3");
    if (sweep_lo != 0 || sweep_hi != 0) {
        if (sweep_step < 1) fail("eavesdropper.sweep_step must be >= 1");
        if (sweep_lo <= 1 || sweep_hi >= n || sweep_lo > sweep_hi) {
            fail("eavesdropper sweep range must satisfy 1 < lo <= hi < n");
        }
    }
    optimizer.validate();
    if (output_directory.empty()) fail("output.directory must not be empty");
}

bool ScenarioConfig::operator==(const ScenarioConfig& o) const
{
    const auto same_platform = [&] {
        if (platform.has_value() != o.platform.has_value()) return false;
        if (!platform.has_value()) return true;
        return platform->xi == o.platform->xi && platform->eta == o.platform->eta &&
               platform->s == o.platform->s && platform->phi1 == o.platform->phi1 &&
               platform->phi2 == o.platform->phi2;
    };
    const SimplexParams& a = optimizer;
    const SimplexParams& b = o.optimizer;
    return start_time == o.start_time && duration == o.duration && period == o.period &&
           turn_index == o.turn_index && target_start == o.target_start &&
           target_velocity == o.target_velocity && same_platform() && alpha_theta == o.alpha_theta &&
           q2 == o.q2 && sigma_theta_deg == o.sigma_theta_deg &&
           alpha_bounds.min == o.alpha_bounds.min && alpha_bounds.max == o.alpha_bounds.max &&
           n_theta == o.n_theta && turn_index_known == o.turn_index_known && sweep_lo == o.sweep_lo &&
           sweep_hi == o.sweep_hi && sweep_step == o.sweep_step &&
           a.reflection == b.reflection && a.expansion == b.expansion &&
           a.contraction == b.contraction && a.shrink == b.shrink &&
           a.max_iterations == b.max_iterations && a.objective_rel_tol == b.objective_rel_tol &&
           a.simplex_rel_tol == b.simplex_rel_tol &&
           a.position_step_fraction == b.position_step_fraction && a.speed_step == b.speed_step &&
           a.angle_step == b.angle_step && output_directory == o.output_directory;
}

ScenarioConfig parse_config(const std::string& text, const std::string& source_name)
{
    ConfigReader reader(text, source_name);
    ScenarioConfig cfg;

    if (reader.has("grid.start_time")) cfg.start_time = reader.number("grid.start_time");
    cfg.duration = reader.require_number("grid.duration");
    cfg.period = reader.require_number("grid.period");
    cfg.turn_index = reader.require_integer("grid.turn_index");

    cfg.target_start.x() = reader.require_number("target.start_xi");
    cfg.target_start.y() = reader.require_number("target.start_eta");
    cfg.target_velocity.x() = reader.require_number("target.velocity_xi");
    cfg.target_velocity.y() = reader.require_number("target.velocity_eta");

    const char* platform_keys[] = {"platform.start_xi", "platform.start_eta", "platform.speed",
                                   "platform.heading1", "platform.heading2"};
    int platform_present = 0;
    for (const char* key : platform_keys) platform_present += reader.has(key) ? 1 : 0;
    if (platform_present == 5) {
        ConstrainedPlatformState p;
        p.xi = reader.number("platform.start_xi");
        p.eta = reader.number("platform.start_eta");
        p.s = reader.number("platform.speed");
        p.phi1 = reader.number("platform.heading1");
        p.phi2 = reader.number("platform.heading2");
        cfg.platform = p.normalized();  // headings live in (-pi, pi]
    } else if (platform_present != 0) {
        fail(source_name + ": platform.* keys must be given all together (5 values) or not at all");
    }

    if (reader.has("truth.alpha_theta")) cfg.alpha_theta = reader.number("truth.alpha_theta");
    if (reader.has("truth.q2")) cfg.q2 = reader.number("truth.q2");
    if (reader.has("truth.sigma_theta_deg")) cfg.sigma_theta_deg = reader.number("truth.sigma_theta_deg");

    cfg.alpha_bounds.min = reader.require_number("eavesdropper.alpha_theta_min");
    cfg.alpha_bounds.max = reader.require_number("eavesdropper.alpha_theta_max");
    cfg.n_theta = reader.require_integer("eavesdropper.n_theta");
    if (reader.has("eavesdropper.turn_index_known")) {
        cfg.turn_index_known = reader.boolean("eavesdropper.turn_index_known");
    }
    if (reader.has("eavesdropper.sweep_lo")) cfg.sweep_lo = reader.integer("eavesdropper.sweep_lo");
    if (reader.has("eavesdropper.sweep_hi")) cfg.sweep_hi = reader.integer("eavesdropper.sweep_hi");
    if (reader.has("eavesdropper.sweep_step")) cfg.sweep_step = reader.integer("eavesdropper.sweep_step");

    SimplexParams& opt = cfg.optimizer;
    if (reader.has("optimizer.reflection")) opt.reflection = reader.number("optimizer.reflection");
    if (reader.has("optimizer.expansion")) opt.expansion = reader.number("optimizer.expansion");
    if (reader.has("optimizer.contraction")) opt.contraction = reader.number("optimizer.contraction");
    if (reader.has("optimizer.shrink")) opt.shrink = reader.number("optimizer.shrink");
    if (reader.has("optimizer.max_iterations")) opt.max_iterations = reader.integer("optimizer.max_iterations");
    if (reader.has("optimizer.objective_rel_tol")) opt.objective_rel_tol = reader.number("optimizer.objective_rel_tol");
    if (reader.has("optimizer.simplex_rel_tol")) opt.simplex_rel_tol = reader.number("optimizer.simplex_rel_tol");
    if (reader.has("optimizer.position_step_fraction")) {
        opt.position_step_fraction = reader.number("optimizer.position_step_fraction");
    }
    if (reader.has("optimizer.speed_step")) opt.speed_step = reader.number("optimizer.speed_step");
    if (reader.has("optimizer.angle_step")) opt.angle_step = reader.number("optimizer.angle_step");

    if (reader.has("output.directory")) cfg.output_directory = reader.text("output.directory");

    reader.reject_unused();
    cfg.validate();
    return cfg;
}

ScenarioConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) fail("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path);
}

std::string emit_config(const ScenarioConfig& cfg)
{
    std::ostringstream out;
    const auto put = [&](const char* key, const std::string& value) { out << key << " = " << value << "\n"; };
    const auto put_num = [&](const char* key, double v) { put(key, format_double(v)); };
    const auto put_int = [&](const char* key, int v) { put(key, std::to_string(v)); };

    put_num("grid.start_time", cfg.start_time);
    put_num("grid.duration", cfg.duration);
    put_num("grid.period", cfg.period);
    put_int("grid.turn_index", cfg.turn_index);
    put_num("target.start_xi", cfg.target_start.x());
    put_num("target.start_eta", cfg.target_start.y());
    put_num("target.velocity_xi", cfg.target_velocity.x());
    put_num("target.velocity_eta", cfg.target_velocity.y());
    if (cfg.platform.has_value()) {
        put_num("platform.start_xi", cfg.platform->xi);
        put_num("platform.start_eta", cfg.platform->eta);
        put_num("platform.speed", cfg.platform->s);
        put_num("platform.heading1", cfg.platform->phi1);
        put_num("platform.heading2", cfg.platform->phi2);
    }
    if (cfg.alpha_theta.has_value()) put_num("truth.alpha_theta", *cfg.alpha_theta);
    if (cfg.q2.has_value()) put_num("truth.q2", *cfg.q2);
    if (cfg.sigma_theta_deg.has_value()) put_num("truth.sigma_theta_deg", *cfg.sigma_theta_deg);
    put_num("eavesdropper.alpha_theta_min", cfg.alpha_bounds.min);
    put_num("eavesdropper.alpha_theta_max", cfg.alpha_bounds.max);
    put_int("eavesdropper.n_theta", cfg.n_theta);
    put("eavesdropper.turn_index_known", cfg.turn_index_known ? "true" : "false");
    if (cfg.sweep_lo != 0 || cfg.sweep_hi != 0) {
        put_int("eavesdropper.sweep_lo", cfg.sweep_lo);
        put_int("eavesdropper.sweep_hi", cfg.sweep_hi);
        put_int("eavesdropper.sweep_step", cfg.sweep_step);
    }
    const SimplexParams& opt = cfg.optimizer;
    put_num("optimizer.reflection", opt.reflection);
    put_num("optimizer.expansion", opt.expansion);
    put_num("optimizer.contraction", opt.contraction);
    put_num("optimizer.shrink", opt.shrink);
    put_int("optimizer.max_iterations", opt.max_iterations);
    put_num("optimizer.objective_rel_tol", opt.objective_rel_tol);
    put_num("optimizer.simplex_rel_tol", opt.simplex_rel_tol);
    put_num("optimizer.position_step_fraction", opt.position_step_fraction);
    put_num("optimizer.speed_step", opt.speed_step);
    put_num("optimizer.angle_step", opt.angle_step);
    put("output.directory", cfg.output_directory);
    return out.str();
}

void save_config(const ScenarioConfig& cfg, const std::string& path)
{
    atomic_write_file(path, emit_config(cfg));
}

namespace {

ScenarioConfig base_scenario()
{
    ScenarioConfig cfg;
    cfg.start_time = 0.0;
    cfg.duration = 800.0;
    cfg.period = 4.0;
    cfg.turn_index = 101;
    cfg.target_start = Vec2(15e3, 35e3);
    cfg.target_velocity = Vec2(-10.0, 5.0);
    cfg.alpha_theta = 2.6580e3;
    cfg.alpha_bounds = AlphaThetaBounds{532.2449, 3206.5};
    cfg.n_theta = 5;
    cfg.turn_index_known = true;
    cfg.sweep_lo = 11;
    cfg.sweep_hi = 191;
    cfg.sweep_step = 10;
    return cfg;
}

}  // namespace

ScenarioConfig scenario_i()
{
    ScenarioConfig cfg = base_scenario();
    cfg.platform = ConstrainedPlatformState{1e4, 2e4, 7.1, 3.0 * std::numbers::pi / 4.0,
                                            std::numbers::pi / 4.0};
    cfg.output_directory = "out/scenario_i";
    return cfg;
}

ScenarioConfig scenario_ii()
{
    ScenarioConfig cfg = base_scenario();
    cfg.platform = ConstrainedPlatformState{1e4, 2e4, 7.1, -std::numbers::pi / 4.0,
                                            std::numbers::pi / 4.0};
    cfg.output_directory = "out/scenario_ii";
    return cfg;
}

}  // namespace platid
