#pragma once

#include "platid/io.hpp"
#include "platid/scenario.hpp"

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace platid {

struct SynthRun {
    InterceptedPaths paths;
    std::string warning;  ///< non-empty for near-singular geometries
};

/// Synthesize the intercepted products of a scenario (requires the true
/// platform and true alpha_theta) into <outdir>/jobs.csv and <outdir>/target.csv.
SynthRun run_synth(const ScenarioConfig& cfg, const std::filesystem::path& outdir);

struct IdentifyRun {
    IdentificationResult result;
    GuessSet guesses;
    std::filesystem::path result_csv;
    std::filesystem::path trajectory_csv;
    std::filesystem::path rspe_trace_csv;
    std::filesystem::path guesses_csv;
};

/// Load intercepted products, run the guess pipeline and the multistart
/// optimization, and write result/trajectory/trace/guess CSVs into outdir.
IdentifyRun run_identify(const ScenarioConfig& cfg, const InterceptedPaths& products,
                         const std::filesystem::path& outdir, int parallel = 1);

struct SensitivityRun {
    std::vector<TkSweepEntry> entries;
    std::filesystem::path csv;
};

/// Turning-index grid search; candidates come from the config sweep range
/// unless overridden by {lo, hi, step}. Rows are written in ascending k.
SensitivityRun run_sensitivity(const ScenarioConfig& cfg, const InterceptedPaths& products,
                               const std::filesystem::path& outdir, int parallel = 1,
                               const std::optional<std::array<int, 3>>& sweep_override = std::nullopt);

}  // namespace platid
