#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ttc/graph/ops.hpp"

namespace ttc::graph {

struct TraceEntry {
  std::string node;
  std::string op;
  std::string inputs_digest;  // sha256 of the input ports as canonical JSON
  std::string output_digest;  // empty when the node failed
  std::uint64_t elapsed_ms = 0;
  std::optional<std::string> error;
  Value info = Value::object();
};

/// Entries in canonical topological order, whatever order nodes actually ran in.
struct Trace {
  std::vector<TraceEntry> entries;
  std::vector<std::string> skipped;  // downstream of a failed node, never run

  const TraceEntry* find(const std::string& node) const;
};

struct ExecutionResult {
  std::map<std::string, Value> outputs;  // declared outputs whose source ran
  std::vector<std::string> missing;      // declared outputs lost to a failure
  Trace trace;

  bool ok() const { return missing.empty(); }
};

struct ExecuteOptions {
  const SolverRegistry* solvers = nullptr;
  const OpRegistry* ops = nullptr;  // builtin when null
  std::uint64_t seed = 0;           // node seed: derive_seed(seed, node id)
  int parallel = 1;                 // ready nodes run concurrently up to this many
  ExecOptions exec;
};

/// Validates the graph, then evaluates nodes in dependency order. A failing node
/// halts its dependents only. Throws GraphError on an invalid graph or when the
/// supplied inputs differ from the declared ones.
ExecutionResult execute(const PipelineGraph& g, const std::map<std::string, Value>& inputs,
                        const ExecuteOptions& options = {});

nlohmann::json to_json(const Trace& trace, bool with_timing = true);

/// Digest of a value's canonical JSON serialization.
std::string value_digest(const Value& v);

}  // namespace ttc::graph
