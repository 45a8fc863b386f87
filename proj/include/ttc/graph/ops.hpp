#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ttc/adapters/solver_factory.hpp"
#include "ttc/core/task.hpp"
#include "ttc/graph/pipeline.hpp"
#include "ttc/methods/methods.hpp"

namespace ttc::graph {

using Value = nlohmann::json;

struct OpContext {
  const SolverRegistry* solvers = nullptr;
  std::uint64_t seed = 0;  // per node: derive_seed(run seed, node id)
  ExecOptions exec;
};

struct OpOutcome {
  std::map<std::string, Value> outputs;
  Value info = Value::object();  // recorded in the trace
};

struct OpDef {
  std::string name;
  std::vector<std::string> inputs;  // ignored when variadic: any port name, at least one fed
  std::vector<std::string> outputs;
  bool variadic = false;
  bool prompt_node = false;  // accepts the "instruction" parameter and data snippets
  std::set<std::string> params;  // allowed keys
  /// Extra parameter checks; throws GraphError. `solvers` is null when unknown.
  std::function<void(const Node&, const SolverRegistry* solvers)> check;
  std::function<OpOutcome(const Node&, const std::map<std::string, Value>& in, const OpContext&)> run;
};

class OpRegistry {
 public:
  void add(OpDef def);
  const OpDef* find(const std::string& name) const;
  const OpDef& at(const std::string& name) const;  // throws GraphError
  std::vector<std::string> names() const;

  /// passthrough, join, format_prompt, sample, method, verify, stub, external.
  static const OpRegistry& builtin();

 private:
  std::map<std::string, OpDef> ops_;
};

/// The node's instruction and data snippets followed by `prompt`, blank-line separated.
std::string decorate_prompt(const Node& node, const std::string& prompt);

/// Task values: an ARC object {"id"?, "train", "test"} becomes an ARC program task;
/// otherwise {"id", "prompt", "answer_kind"?, "reference"?, "category"?}.
Task task_from_value(const Value& v);

/// Checks the graph invariants: unique ids, known ops and ports, every node input fed
/// by exactly one edge, declared outputs resolvable, no cycle, valid parameters.
/// Throws GraphError with the first violation.
void validate(const PipelineGraph& g, const OpRegistry& ops = OpRegistry::builtin(),
              const SolverRegistry* solvers = nullptr);

}  // namespace ttc::graph
