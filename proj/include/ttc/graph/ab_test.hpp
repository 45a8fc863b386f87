#pragma once

#include "ttc/aggregate/result_matrix.hpp"
#include "ttc/graph/revision.hpp"

namespace ttc::graph {

/// One task for graph evaluation; `input` is bound to the graph input "task".
struct GraphTask {
  std::string id;
  Value input;
};

struct Variant {
  std::string name;
  PipelineGraph graph;
};

/// A run counts as solved when its "verdict" output has status "pass".
bool solved(const ExecutionResult& r);

/// Runs every variant on every task; one matrix column per variant. Task t runs with
/// seed derive_seed(options.seed, t.id) in every variant. Failed executions count as
/// unsolved. Throws ConfigError with fewer than 2 variants, duplicate names or no
/// tasks; GraphError when a variant is invalid.
ResultMatrix ab_test(const std::vector<Variant>& variants, const std::vector<GraphTask>& tasks,
                     const ExecuteOptions& options = {});

struct RevisionDecision {
  bool kept = false;
  double baseline_rate = 0.0;
  double variant_rate = 0.0;
  RevisionProposal proposal;
  std::vector<Mutation> applied;
  std::vector<std::string> warnings;  // proposals that failed on the evolving graph
  PipelineGraph graph;                // the kept graph: variant if kept, else baseline
};

/// One revision round: run the baseline, show the judge the first task's trace and
/// the success rate, apply the proposed mutations in order, A/B test, and keep the
/// variant only if its success rate is strictly higher.
RevisionDecision revise_and_test(const PipelineGraph& g, const std::vector<GraphTask>& tasks, const Solver& judge,
                                 const ExecuteOptions& options = {});

nlohmann::json to_json(const RevisionDecision& d);

}  // namespace ttc::graph
