#include "platid/runner.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>

namespace fs = std::filesystem;

namespace {

struct CommonOpts {
    std::string config;
    std::string out;
    std::string products;
    int parallel = 1;
};

fs::path out_dir(const platid::ScenarioConfig& cfg, const CommonOpts& opts)
{
    return opts.out.empty() ? fs::path(cfg.output_directory) : fs::path(opts.out);
}

platid::InterceptedPaths products_paths(const platid::ScenarioConfig& cfg, const CommonOpts& opts)
{
    const fs::path dir = opts.products.empty() ? out_dir(cfg, opts) : fs::path(opts.products);
    return platid::InterceptedPaths{dir / "jobs.csv", dir / "target.csv"};
}

std::array<int, 3> parse_sweep(const std::string& text)
{
    std::array<int, 3> sweep{0, 0, 1};
    const auto first = text.find(':');
    if (first == std::string::npos) throw std::invalid_argument("--k-sweep expects LO:HI[:STEP]");
    const auto second = text.find(':', first + 1);
    sweep[0] = std::stoi(text.substr(0, first));
    sweep[1] = std::stoi(text.substr(first + 1, second == std::string::npos ? std::string::npos
                                                                            : second - first - 1));
    if (second != std::string::npos) sweep[2] = std::stoi(text.substr(second + 1));
    return sweep;
}

void print_identify_summary(const platid::IdentifyRun& run, bool has_truth)
{
    for (const auto& z : run.result.zones) {
        if (!z.ok) {
            std::printf("zone %s: FAILED (%s)\n", z.zone.c_str(), z.error.c_str());
            continue;
        }
        std::printf("zone %s: G = %.12e, %d iterations", z.zone.c_str(), z.g, z.iterations);
        if (has_truth) std::printf(", RSPE = %.6g m", z.rspe);
        std::printf("\n");
    }
    const auto& s = run.result.best_state;
    std::printf("winner: zone %s\n", run.result.zone.c_str());
    std::printf("  state: xi = %.6f m, eta = %.6f m, s = %.6f m/s, phi1 = %.9f rad, phi2 = %.9f rad\n",
                s.xi, s.eta, s.s, s.phi1, s.phi2);
    std::printf("  alpha_theta = %.6f rad^-2, G = %.12e\n", run.result.alpha_theta_hat,
                run.result.g_best);
    if (has_truth) std::printf("  RSPE = %.6g m\n", run.result.rspe);
    if (run.result.diagnostics.stealthy) {
        std::printf("  warning: recovered trajectory is stealthy%s\n",
                    run.result.diagnostics.single_leg_degenerate ? " (single-leg degenerate)" : "");
    }
    if (run.result.diagnostics.condition_warning) {
        std::printf("  warning: observed FIM condition number %.3e\n",
                    run.result.diagnostics.condition_number);
    }
    std::printf("outputs: %s\n", run.result_csv.parent_path().string().c_str());
}

int run_demo(const std::string& out, int parallel)
{
    const fs::path base = out.empty() ? fs::path("out") : fs::path(out);
    for (const auto& [name, cfg] : {std::pair{"scenario_i", platid::scenario_i()},
                                    std::pair{"scenario_ii", platid::scenario_ii()}}) {
        platid::ScenarioConfig scenario = cfg;
        const fs::path dir = base / name;
        scenario.output_directory = dir.string();
        platid::save_config(scenario, (dir / "scenario.cfg").string());
        std::printf("=== %s ===\n", name);
        const platid::SynthRun synth = platid::run_synth(scenario, dir);
        if (!synth.warning.empty()) std::printf("warning: %s\n", synth.warning.c_str());
        const platid::IdentifyRun run = platid::run_identify(scenario, synth.paths, dir, parallel);
        print_identify_summary(run, true);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Two-leg observer identification from intercepted target-estimation products"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string k_sweep;

    auto add_common = [&](CLI::App* cmd, bool needs_config) {
        auto* config = cmd->add_option("--config", opts.config, "scenario config file");
        if (needs_config) config->required();
        cmd->add_option("--out", opts.out, "output directory (default: output.directory from config)");
        cmd->add_option("--parallel", opts.parallel, "worker threads for independent runs")
            ->check(CLI::PositiveNumber);
    };

    CLI::App* synth = app.add_subcommand("synth", "synthesize intercepted products from ground truth");
    add_common(synth, true);

    CLI::App* identify = app.add_subcommand("identify", "run the identification pipeline");
    add_common(identify, true);
    identify->add_option("--products", opts.products, "directory holding jobs.csv/target.csv");

    CLI::App* sensitivity = app.add_subcommand("sensitivity", "turning-index grid search");
    add_common(sensitivity, true);
    sensitivity->add_option("--products", opts.products, "directory holding jobs.csv/target.csv");
    sensitivity->add_option("--k-sweep", k_sweep, "sweep range LO:HI[:STEP] (default: config range)");

    CLI::App* demo = app.add_subcommand("demo", "run both bundled scenarios end to end");
    add_common(demo, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (demo->parsed()) return run_demo(opts.out, opts.parallel);

        const platid::ScenarioConfig cfg = platid::load_config(opts.config);
        if (synth->parsed()) {
            const platid::SynthRun run = platid::run_synth(cfg, out_dir(cfg, opts));
            if (!run.warning.empty()) std::fprintf(stderr, "warning: %s\n", run.warning.c_str());
            std::printf("wrote %s and %s\n", run.paths.jobs.string().c_str(),
                        run.paths.target.string().c_str());
        } else if (identify->parsed()) {
            if (!cfg.turn_index_known) {
                std::fprintf(stderr,
                             "note: config marks the turning index as unknown; identify trusts "
                             "grid.turn_index = %d (use the sensitivity subcommand to sweep it)\n",
                             cfg.turn_index);
            }
            const platid::IdentifyRun run =
                platid::run_identify(cfg, products_paths(cfg, opts), out_dir(cfg, opts), opts.parallel);
            print_identify_summary(run, cfg.platform.has_value());
        } else if (sensitivity->parsed()) {
            std::optional<std::array<int, 3>> sweep;
            if (!k_sweep.empty()) sweep = parse_sweep(k_sweep);
            const platid::SensitivityRun run = platid::run_sensitivity(
                cfg, products_paths(cfg, opts), out_dir(cfg, opts), opts.parallel, sweep);
            int failures = 0;
            const platid::TkSweepEntry* best = nullptr;
            for (const auto& e : run.entries) {
                if (!e.ok) {
                    ++failures;
                    continue;
                }
                if (best == nullptr || (!std::isnan(e.rspe) && e.rspe < best->rspe)) best = &e;
            }
            if (best != nullptr) {
                std::printf("best k = %d (RSPE = %.6g m, G = %.12e)\n", best->k, best->rspe,
                            best->g_best);
            }
            if (failures > 0) std::printf("%d candidate(s) failed; see error column\n", failures);
            std::printf("wrote %s\n", run.csv.string().c_str());
        }
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
