#include "platid/runner.hpp"

#include "platid/linalg.hpp"

#include <stdexcept>

namespace platid {

namespace fs = std::filesystem;

SynthRun run_synth(const ScenarioConfig& cfg, const fs::path& outdir)
{
    cfg.validate();
    if (!cfg.platform.has_value()) {
        throw std::invalid_argument("synth: config has no platform.* ground truth");
    }
    const TimeGrid grid = cfg.make_grid();
    const TargetState target = cfg.make_target();
    const Fim j_obs = synthesize_observed(target, *cfg.platform, grid, cfg.true_alpha_theta());

    SynthRun run;
    run.paths = InterceptedPaths{outdir / "jobs.csv", outdir / "target.csv"};
    write_products(run.paths, j_obs, target, grid);
    const double cond = sym_cond4(j_obs.m);
    if (!(cond < 1e12)) {
        run.warning = "observed FIM is near-singular (condition " + format_double(cond) +
                      "): single-leg or otherwise unobservable geometry";
    }
    return run;
}

IdentifyRun run_identify(const ScenarioConfig& cfg, const InterceptedPaths& products,
                         const fs::path& outdir, int parallel)
{
    cfg.validate();
    const LoadedProducts loaded = read_products(products);
    const ConstrainedPlatformState* truth = cfg.platform.has_value() ? &*cfg.platform : nullptr;

    IdentifyRun run;
    run.guesses = zone_guesses(loaded.obs, cfg.alpha_bounds, cfg.n_theta);
    run.result = identify(loaded.obs, run.guesses, cfg.optimizer, truth, parallel);

    run.result_csv = outdir / "result.csv";
    run.trajectory_csv = outdir / "trajectory.csv";
    run.rspe_trace_csv = outdir / "rspe_trace.csv";
    run.guesses_csv = outdir / "guesses.csv";
    write_result_csv(run.result_csv, run.result, truth != nullptr);
    write_trajectory_csv(run.trajectory_csv, run.result, loaded.obs, truth);
    write_rspe_trace_csv(run.rspe_trace_csv, run.result, truth != nullptr);
    write_guesses_csv(run.guesses_csv, run.guesses);
    return run;
}

SensitivityRun run_sensitivity(const ScenarioConfig& cfg, const InterceptedPaths& products,
                               const fs::path& outdir, int parallel,
                               const std::optional<std::array<int, 3>>& sweep_override)
{
    cfg.validate();
    const LoadedProducts loaded = read_products(products);
    const ConstrainedPlatformState* truth = cfg.platform.has_value() ? &*cfg.platform : nullptr;

    std::vector<int> candidates;
    if (sweep_override.has_value()) {
        const auto [lo, hi, step] = *sweep_override;
        if (step < 1 || lo > hi) throw std::invalid_argument("sensitivity: bad sweep range");
        for (int k = lo; k <= hi; k += step) candidates.push_back(k);
    } else {
        candidates = cfg.sweep_candidates();
    }

    SensitivityRun run;
    run.entries = tk_sensitivity(loaded.obs, candidates, cfg.alpha_bounds, cfg.n_theta,
                                 cfg.optimizer, truth, parallel);
    run.csv = outdir / "sensitivity.csv";
    write_sensitivity_csv(run.csv, run.entries, truth != nullptr);
    return run;
}

}  // namespace platid
