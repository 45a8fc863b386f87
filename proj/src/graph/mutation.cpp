#include "ttc/graph/mutation.hpp"

#include <algorithm>
#include <array>

#include "ttc/graph/graph_io.hpp"

namespace ttc::graph {

namespace {

constexpr std::array<std::pair<MutationKind, std::string_view>, 8> kNames{{
    {MutationKind::edit_param, "edit_param"},
    {MutationKind::add_node, "add_node"},
    {MutationKind::remove_node, "remove_node"},
    {MutationKind::add_edge, "add_edge"},
    {MutationKind::remove_edge, "remove_edge"},
    {MutationKind::edit_prompt, "edit_prompt"},
    {MutationKind::add_data, "add_data"},
    {MutationKind::remove_data, "remove_data"},
}};

Node& node_of(PipelineGraph& g, const std::string& id) {
  Node* n = g.find(id);
  if (!n) throw GraphError("no node '" + id + "'");
  return *n;
}

PortRef node_port(const std::string& text) {
  const auto ref = parse_port_ref(text);
  if (ref.is_graph_input()) throw GraphError("'" + text + "' is not a node port");
  return ref;
}

std::vector<std::string> tokens(const std::string& payload) {
  try {
    return tokenize_line(payload);
  } catch (const GraphSyntaxError& e) {
    throw GraphError(std::string("bad payload: ") + e.what());
  }
}

}  // namespace

std::string_view to_string(MutationKind kind) {
  for (const auto& [k, name] : kNames)
    if (k == kind) return name;
  return "?";
}

MutationKind mutation_kind_from_string(std::string_view name) {
  for (const auto& [k, n] : kNames)
    if (n == name) return k;
  throw GraphError("unknown mutation kind '" + std::string(name) + "'");
}

Mutation parse_mutation(const std::string& line) {
  auto begin = line.find_first_not_of(" \t");
  if (begin == std::string::npos) throw GraphError("empty mutation");
  auto end = line.find_first_of(" \t", begin);
  Mutation m;
  m.kind = mutation_kind_from_string(line.substr(begin, end - begin));
  begin = end == std::string::npos ? end : line.find_first_not_of(" \t", end);
  if (begin == std::string::npos) throw GraphError("mutation without target");
  end = line.find_first_of(" \t", begin);
  m.target = line.substr(begin, end - begin);
  if (end != std::string::npos) {
    const auto p = line.find_first_not_of(" \t", end);
    if (p != std::string::npos) {
      m.payload = line.substr(p);
      while (!m.payload.empty() && (m.payload.back() == ' ' || m.payload.back() == '\t' || m.payload.back() == '\r')) {
        m.payload.pop_back();
      }
    }
  }
  return m;
}

std::string to_string(const Mutation& m) {
  std::string out = std::string(to_string(m.kind)) + " " + m.target;
  if (!m.payload.empty()) out += " " + m.payload;
  return out;
}

PipelineGraph mutate(const PipelineGraph& g, const Mutation& m, const OpRegistry& ops, const SolverRegistry* solvers) {
  PipelineGraph out = g;
  switch (m.kind) {
    case MutationKind::edit_param: {
      auto& n = node_of(out, m.target);
      const auto t = tokens(m.payload);
      if (t.size() != 1) throw GraphError("edit_param expects key=value");
      const auto eq = t[0].find('=');
      if (eq == std::string::npos || eq == 0) throw GraphError("edit_param expects key=value");
      const auto key = t[0].substr(0, eq), value = t[0].substr(eq + 1);
      if (value.empty()) n.params.erase(key);
      else n.params[key] = value;
      break;
    }
    case MutationKind::add_node: {
      if (out.find(m.target)) throw GraphError("node '" + m.target + "' already exists");
      const auto t = tokens(m.payload);
      if (t.empty()) throw GraphError("add_node expects an operation");
      Node n{m.target, t[0], {}, {}};
      std::vector<Edge> wiring;
      for (std::size_t i = 1; i < t.size(); ++i) {
        if (const auto arrow = t[i].find("<-"); arrow != std::string::npos) {
          wiring.push_back({parse_port_ref(t[i].substr(arrow + 2)), {m.target, t[i].substr(0, arrow)}});
        } else if (const auto eq = t[i].find('='); eq != std::string::npos && eq > 0) {
          n.params[t[i].substr(0, eq)] = t[i].substr(eq + 1);
        } else {
          throw GraphError("add_node: unexpected token '" + t[i] + "'");
        }
      }
      out.nodes.push_back(std::move(n));
      out.edges.insert(out.edges.end(), wiring.begin(), wiring.end());
      break;
    }
    case MutationKind::remove_node: {
      node_of(out, m.target);
      for (const auto& e : out.edges)
        if (e.from.node == m.target && !e.from.is_graph_input()) {
          throw GraphError("node '" + m.target + "' still feeds '" + to_string(e.to) + "'");
        }
      for (const auto& o : out.outputs)
        if (o.from.node == m.target && !o.from.is_graph_input()) {
          throw GraphError("node '" + m.target + "' still feeds output '" + o.name + "'");
        }
      std::erase_if(out.edges, [&](const Edge& e) { return e.to.node == m.target; });
      std::erase_if(out.nodes, [&](const Node& n) { return n.id == m.target; });
      break;
    }
    case MutationKind::add_edge: {
      const auto to = node_port(m.payload);
      std::erase_if(out.edges, [&](const Edge& e) { return e.to == to; });
      out.edges.push_back({parse_port_ref(m.target), to});
      break;
    }
    case MutationKind::remove_edge: {
      const Edge e{parse_port_ref(m.target), node_port(m.payload)};
      const auto it = std::find(out.edges.begin(), out.edges.end(), e);
      if (it == out.edges.end()) throw GraphError("no edge " + m.target + " -> " + m.payload);
      out.edges.erase(it);
      break;
    }
    case MutationKind::edit_prompt: {
      auto& n = node_of(out, m.target);
      if (m.payload.empty()) n.params.erase("instruction");
      else n.params["instruction"] = m.payload;
      break;
    }
    case MutationKind::add_data: {
      if (m.payload.empty()) throw GraphError("add_data expects text");
      node_of(out, m.target).data.push_back(m.payload);
      break;
    }
    case MutationKind::remove_data: {
      auto& n = node_of(out, m.target);
      std::size_t idx = 0;
      try {
        std::size_t used = 0;
        idx = std::stoul(m.payload, &used);
        if (used != m.payload.size()) throw std::invalid_argument(m.payload);
      } catch (const std::exception&) {
        throw GraphError("remove_data expects an index");
      }
      if (idx >= n.data.size()) throw GraphError("node '" + n.id + "' has no data item " + m.payload);
      n.data.erase(n.data.begin() + static_cast<std::ptrdiff_t>(idx));
      break;
    }
  }
  validate(out, ops, solvers);
  return out;
}

}  // namespace ttc::graph
