#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ttc/arc/grid.hpp"

namespace ttc::arc {

struct TrainPair {
  Grid input;
  Grid output;
  friend bool operator==(const TrainPair&, const TrainPair&) = default;
};

struct TestPair {
  Grid input;
  std::optional<Grid> output;
  friend bool operator==(const TestPair&, const TestPair&) = default;
};

struct ArcTask {
  std::string id;
  std::vector<TrainPair> train;  // non-empty
  std::vector<TestPair> test;
  friend bool operator==(const ArcTask&, const ArcTask&) = default;
};

/// Parses the public ARC interchange object {"train": [...], "test": [...]}.
/// Throws GridError / std::invalid_argument with the reason on malformed input.
ArcTask task_from_json(const std::string& id, const nlohmann::json& j);
nlohmann::json task_to_json(const ArcTask& task);

struct LoadFailure {
  std::string task_id;
  std::string reason;
};

struct LoadReport {
  std::vector<ArcTask> tasks;
  std::vector<LoadFailure> failures;
};

/// Loads one .json file or every .json file in a directory (sorted by name).
/// Invalid files are reported and skipped; the task id is the file stem.
/// Throws std::runtime_error if the path does not exist.
LoadReport load_tasks(const std::filesystem::path& path);

void save_task(const ArcTask& task, const std::filesystem::path& file);

}  // namespace ttc::arc
