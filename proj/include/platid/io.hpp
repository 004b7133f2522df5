#pragma once

#include "platid/fim.hpp"
#include "platid/initguess.hpp"
#include "platid/objective.hpp"
#include "platid/optimizer.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace platid {

/// Shortest decimal string that parses back to exactly the same double
/// (at least 15 significant digits when needed).
std::string format_double(double v);

/// Write via a temp file in the same directory, then rename over the target.
void atomic_write_file(const std::filesystem::path& path, const std::string& content);

struct InterceptedPaths {
    std::filesystem::path jobs;    ///< jobs.csv: FimVec9 + full 4x4, one row
    std::filesystem::path target;  ///< target.csv: per-sample grid and target track
};

/// Emit the intercepted products. jobs.csv columns: j11..j34 (the 9
/// independent entries) then m11..m44 (the full matrix, row-major).
/// target.csv columns: i,t,xi,eta,is_turn.
void write_products(const InterceptedPaths& paths, const Fim& j_obs, const TargetState& target,
                    const TimeGrid& grid);

struct LoadedProducts {
    ObservedProducts obs;
    Fim full;
};

/// Re-read and re-validate intercepted products (FIM invariants included).
LoadedProducts read_products(const InterceptedPaths& paths);

void write_result_csv(const std::filesystem::path& path, const IdentificationResult& result,
                      bool has_truth);
void write_trajectory_csv(const std::filesystem::path& path, const IdentificationResult& result,
                          const ObservedProducts& obs, const ConstrainedPlatformState* truth);
void write_rspe_trace_csv(const std::filesystem::path& path, const IdentificationResult& result,
                          bool has_truth);
void write_guesses_csv(const std::filesystem::path& path, const GuessSet& guesses);
void write_sensitivity_csv(const std::filesystem::path& path, const std::vector<TkSweepEntry>& entries,
                           bool has_truth);

}  // namespace platid
