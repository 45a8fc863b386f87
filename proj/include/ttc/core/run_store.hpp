#pragma once

#include <filesystem>
#include <mutex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ttc/core/candidate.hpp"
#include "ttc/core/verdict.hpp"

namespace ttc {

/// One (task, solver) cell of a run.
struct RunCell {
  std::string task_id;
  std::string solver_id;
  Candidate candidate;
  Verdict verdict;
  nlohmann::json trace = nlohmann::json::array();

  friend bool operator==(const RunCell&, const RunCell&) = default;
};

struct RunRecord {
  std::string run_id;
  nlohmann::json config = nlohmann::json::object();
  std::vector<RunCell> cells;
  std::string started_at;   // ISO-8601 UTC, kept in meta.json
  std::string finished_at;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

/// Line serialization of a cell as written to record.jsonl.
std::string serialize_cell(const RunCell& cell);
RunCell parse_cell(const std::string& line, std::size_t line_offset);

/// Directory-per-run store:
///   <root>/<run_id>/record.jsonl   one JSON object per cell, in record order
///   <root>/<run_id>/config.json    configuration snapshot
///   <root>/<run_id>/meta.json      run_id, cell count, wall-clock timestamps
/// record.jsonl and config.json depend only on the run's inputs; timestamps live in meta.json.
/// Writes go through one mutex so a store instance is a single writer.
class RunStore {
 public:
  explicit RunStore(std::filesystem::path root);

  /// Writes the record and returns its run id. An existing directory is never
  /// overwritten; a numeric suffix is appended instead. Throws std::runtime_error
  /// if the storage root cannot be written.
  std::string record_run(const RunRecord& record);
  /// Throws ParseError (with byte offset) on corrupt or truncated files.
  RunRecord load_run(const std::string& run_id) const;

  std::filesystem::path run_dir(const std::string& run_id) const { return root_ / run_id; }
  const std::filesystem::path& root() const { return root_; }

 private:
  std::filesystem::path root_;
  mutable std::mutex mutex_;
};

/// Current UTC time as ISO-8601.
std::string utc_timestamp();

}  // namespace ttc
