#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ttc/aggregate/coverage.hpp"
#include "ttc/aggregate/render.hpp"
#include "ttc/core/solver.hpp"
#include "ttc/core/task.hpp"
#include "ttc/methods/methods.hpp"

namespace ttc::cli {

/// Run configuration, read from JSON:
///   {
///     "solvers": [{"id": "...", "kind": "scripted", "params": {...}}],
///     "methods": ["zero_shot", {"method": "best_of_n", "n": 4}],
///     "tasks": "tasks.json" | [ {...}, ... ],
///     "out": "runs", "parallel": 1, "seed": 0,
///     "layout": "solvers_as_rows" | "tasks_as_rows",
///     "curve": "individual_desc" | "greedy_marginal"
///   }
/// Relative paths resolve against the config file's directory. API keys never appear
/// here: http-model solvers name the environment variable holding theirs.
struct RunConfig {
  std::vector<SolverBinding> solvers;
  std::vector<MethodConfig> methods;
  nlohmann::json tasks;  // path string or inline array
  std::filesystem::path out_dir = "runs";
  int parallel = 1;
  std::uint64_t seed = 0;
  TableLayout layout = TableLayout::solvers_as_rows;
  CurveOrdering curve = CurveOrdering::individual_desc;
  std::filesystem::path base_dir;
};

/// Throws ConfigError on missing or inconsistent fields.
RunConfig config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& file);

/// Snapshot stored with a run: everything that determines results (not the output dir or parallelism).
nlohmann::json snapshot(const RunConfig& config);

/// Task file formats: a JSON array of task objects, one ARC task object, or a directory
/// of ARC task files. Task objects follow graph::task_from_value.
std::vector<Task> load_tasks(const nlohmann::json& source, const std::filesystem::path& base_dir);
/// The same tasks as raw values (for graph runs), with ids filled in.
std::vector<std::pair<std::string, nlohmann::json>> load_task_values(const nlohmann::json& source,
                                                                     const std::filesystem::path& base_dir);

}  // namespace ttc::cli
