#include "ttc/graph/revision.hpp"

#include <sstream>

#include "ttc/graph/graph_io.hpp"

namespace ttc::graph {

std::string revision_prompt(const PipelineGraph& g, const Trace& trace, const Value& result) {
  std::ostringstream out;
  out << "Pipeline:\n" << print_graph(g) << "\nTrace:\n";
  for (const auto& e : trace.entries) {
    out << "- " << e.node << " (" << e.op << ")";
    if (e.error) out << " failed: " << *e.error;
    out << "\n";
  }
  for (const auto& s : trace.skipped) out << "- " << s << " skipped\n";
  out << "\nResult:\n" << result.dump() << "\n\n"
      << "Propose revisions, one per line, as: KIND target payload\n"
      << "KIND is one of edit_param, add_node, remove_node, add_edge, remove_edge, edit_prompt, add_data, "
         "remove_data.\n";
  return out.str();
}

RevisionProposal propose_revision(const PipelineGraph& g, const Trace& trace, const Value& result,
                                  const Solver& judge, std::uint64_t seed, const OpRegistry& ops,
                                  const SolverRegistry* solvers) {
  RevisionProposal p;
  Task query_task;
  query_task.id = g.name.empty() ? "graph" : g.name;
  query_task.category = "revision";
  query_task.prompt = revision_prompt(g, trace, result);
  const auto completion = judge.complete(Query{&query_task, "judge", query_task.prompt}, seed);
  if (completion.error) {
    p.error = *completion.error;
    return p;
  }
  p.raw = completion.text;
  std::istringstream in(completion.text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      auto m = parse_mutation(line);
      mutate(g, m, ops, solvers);
      p.mutations.push_back(std::move(m));
    } catch (const std::exception& e) {
      p.warnings.push_back("line " + std::to_string(lineno) + " dropped: " + e.what());
    }
  }
  return p;
}

nlohmann::json to_json(const RevisionProposal& p) {
  auto muts = nlohmann::json::array();
  for (const auto& m : p.mutations) muts.push_back(to_string(m));
  return {{"mutations", muts},
          {"warnings", p.warnings},
          {"error", p.error ? nlohmann::json(*p.error) : nlohmann::json(nullptr)}};
}

}  // namespace ttc::graph
