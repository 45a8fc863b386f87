#include "ttc/graph/pipeline.hpp"

#include <algorithm>
#include <set>

namespace ttc::graph {

std::string to_string(const PortRef& ref) { return ref.is_graph_input() ? ref.node : ref.node + "." + ref.port; }

const Node* PipelineGraph::find(const std::string& id) const {
  const auto it = std::find_if(nodes.begin(), nodes.end(), [&](const Node& n) { return n.id == id; });
  return it == nodes.end() ? nullptr : &*it;
}

Node* PipelineGraph::find(const std::string& id) {
  const auto it = std::find_if(nodes.begin(), nodes.end(), [&](const Node& n) { return n.id == id; });
  return it == nodes.end() ? nullptr : &*it;
}

std::vector<std::string> predecessors(const PipelineGraph& g, const std::string& id) {
  std::set<std::string> out;
  for (const auto& e : g.edges)
    if (e.to.node == id && !e.from.is_graph_input()) out.insert(e.from.node);
  return {out.begin(), out.end()};
}

std::vector<std::string> topological_order(const PipelineGraph& g) {
  std::map<std::string, std::set<std::string>> succ;
  std::map<std::string, int> indegree;
  for (const auto& n : g.nodes) indegree[n.id];
  for (const auto& e : g.edges) {
    if (e.from.is_graph_input()) continue;
    if (!indegree.count(e.from.node) || !indegree.count(e.to.node)) continue;
    if (succ[e.from.node].insert(e.to.node).second) ++indegree[e.to.node];
  }
  std::set<std::string> ready;
  for (const auto& [id, d] : indegree)
    if (d == 0) ready.insert(id);
  std::vector<std::string> order;
  while (!ready.empty()) {
    const auto id = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(id);
    for (const auto& s : succ[id])
      if (--indegree[s] == 0) ready.insert(s);
  }
  if (order.size() != indegree.size()) {
    for (const auto& [id, d] : indegree)
      if (d > 0) throw GraphError("cycle through node '" + id + "'");
  }
  return order;
}

bool has_cycle(const PipelineGraph& g) {
  try {
    topological_order(g);
    return false;
  } catch (const GraphError&) {
    return true;
  }
}

}  // namespace ttc::graph
