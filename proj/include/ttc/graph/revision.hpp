#pragma once

#include <optional>

#include "ttc/core/solver.hpp"
#include "ttc/graph/execute.hpp"
#include "ttc/graph/mutation.hpp"

namespace ttc::graph {

struct RevisionProposal {
  std::vector<Mutation> mutations;   // each valid against the original graph
  std::vector<std::string> warnings;  // dropped lines with reasons
  std::optional<std::string> error;  // judge failure
  std::string raw;                   // judge output
};

/// Prompt shown to the judge: the graph text, the trace and the result, followed by
/// the expected reply format (one "KIND target payload" line per mutation).
std::string revision_prompt(const PipelineGraph& g, const Trace& trace, const Value& result);

/// Asks the judge (role "judge") for revisions. Unparseable or invalid lines are
/// dropped with a warning; a judge error gives an empty proposal with `error` set.
RevisionProposal propose_revision(const PipelineGraph& g, const Trace& trace, const Value& result,
                                  const Solver& judge, std::uint64_t seed,
                                  const OpRegistry& ops = OpRegistry::builtin(),
                                  const SolverRegistry* solvers = nullptr);

nlohmann::json to_json(const RevisionProposal& p);

}  // namespace ttc::graph
