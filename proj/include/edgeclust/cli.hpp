#pragma once

#include "edgeclust/config.hpp"
#include "edgeclust/kpi.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

namespace edgeclust {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitIo = 2;

struct RunOptions {
    std::optional<std::filesystem::path> config_path;  // defaults when absent
    std::optional<std::uint64_t> seed;                 // overrides the file
    std::filesystem::path out_dir = ".";
    std::vector<std::uint32_t> sweep = {10, 20, 30, 40, 50, 60};
    std::uint32_t reps = 100;
};

/// Loads the config (or defaults), applies the seed override, validates.
/// Throws ConfigError.
[[nodiscard]] ScenarioConfig resolve_config(const RunOptions& opts);

/// Trains a fresh agent at every sweep point (device_count = point), then
/// evaluates it and the random baseline over `reps` replications. Rows are
/// ordered by policy name, then sweep point.
[[nodiscard]] std::vector<KpiRecord> compare_policies(const ScenarioConfig& cfg,
                                                      const std::vector<std::uint32_t>& sweep, std::uint32_t reps);

/// Writes qtable.csv and training_trace.csv into out_dir.
int cmd_train(const RunOptions& opts, std::ostream& out, std::ostream& err);

/// Writes kpi.csv, kpi_replications.csv, kpi_model_constants.txt and the
/// sweep_clusters.csv, sweep_utilization.csv, sweep_delayed.csv plot data.
int cmd_compare(const RunOptions& opts, std::ostream& out, std::ostream& err);

/// Trains, then writes batch.csv and episode_log.csv for one greedy
/// evaluation replication.
int cmd_episode(const RunOptions& opts, std::ostream& out, std::ostream& err);

/// Command-line front end: `train`, `compare`, `episode` subcommands.
int run_cli(int argc, char** argv);

}  // namespace edgeclust
