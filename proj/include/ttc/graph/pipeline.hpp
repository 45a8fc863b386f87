#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ttc::graph {

using Params = std::map<std::string, std::string>;

struct Node {
  std::string id;
  std::string op;
  Params params;
  std::vector<std::string> data;  // few-shot snippets prepended to prompts

  friend bool operator==(const Node&, const Node&) = default;
};

/// A node output port, or a graph input when `port` is empty (then `node` is the input name).
struct PortRef {
  std::string node;
  std::string port;

  bool is_graph_input() const { return port.empty(); }
  friend auto operator<=>(const PortRef&, const PortRef&) = default;
};

std::string to_string(const PortRef& ref);

struct Edge {
  PortRef from;
  PortRef to;  // always a node input port
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct GraphOutput {
  std::string name;
  PortRef from;
  friend bool operator==(const GraphOutput&, const GraphOutput&) = default;
};

/// Invalid graph structure; the message states the reason.
class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PipelineGraph {
  std::string name;
  std::vector<std::string> inputs;
  std::vector<Node> nodes;
  std::vector<Edge> edges;
  std::vector<GraphOutput> outputs;

  const Node* find(const std::string& id) const;
  Node* find(const std::string& id);

  friend bool operator==(const PipelineGraph&, const PipelineGraph&) = default;
};

/// Node ids in dependency order; ready nodes are taken smallest id first.
/// Throws GraphError naming a node on a cycle.
std::vector<std::string> topological_order(const PipelineGraph& g);
bool has_cycle(const PipelineGraph& g);

/// Node ids feeding `id` directly.
std::vector<std::string> predecessors(const PipelineGraph& g, const std::string& id);

}  // namespace ttc::graph
