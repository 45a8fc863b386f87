#include "ttc/graph/graph_io.hpp"

#include <fstream>
#include <sstream>

namespace ttc::graph {

std::vector<std::string> tokenize_line(const std::string& line, std::vector<int>* columns) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
      ++i;
      continue;
    }
    if (line[i] == '#') break;
    const int start = static_cast<int>(i) + 1;
    std::string tok;
    bool quoted = false;
    while (i < line.size() && (quoted || (line[i] != ' ' && line[i] != '\t' && line[i] != '\r'))) {
      const char c = line[i];
      if (c == '"') {
        quoted = !quoted;
        ++i;
      } else if (quoted && c == '\\' && i + 1 < line.size()) {
        const char e = line[i + 1];
        tok += e == 'n' ? '\n' : e == 't' ? '\t' : e;
        i += 2;
      } else if (!quoted && c == '#') {
        break;
      } else {
        tok += c;
        ++i;
      }
    }
    if (quoted) throw GraphSyntaxError("unterminated quote", 0, start);
    out.push_back(std::move(tok));
    if (columns) columns->push_back(start);
    if (i < line.size() && line[i] == '#') break;
  }
  return out;
}

std::string quote_if_needed(const std::string& value) {
  const bool plain = !value.empty() && value.find_first_of(" \t\r\n\"#\\") == std::string::npos;
  if (plain) return value;
  std::string out = "\"";
  for (char c : value) {
    if (c == '"' || c == '\\') out += '\\', out += c;
    else if (c == '\n') out += "\\n";
    else if (c == '\t') out += "\\t";
    else out += c;
  }
  return out + "\"";
}

PortRef parse_port_ref(const std::string& text) {
  const auto dot = text.find('.');
  if (dot == std::string::npos) return {text, ""};
  return {text.substr(0, dot), text.substr(dot + 1)};
}

namespace {

bool valid_ident(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')) return false;
  return true;
}

}  // namespace

PipelineGraph parse_graph(const std::string& text) {
  PipelineGraph g;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::vector<int> cols;
    std::vector<std::string> t;
    try {
      t = tokenize_line(line, &cols);
    } catch (const GraphSyntaxError& e) {
      throw GraphSyntaxError("unterminated quote", lineno, e.column());
    }
    if (t.empty()) continue;
    auto fail = [&](const std::string& msg, std::size_t tok) -> GraphSyntaxError {
      const int col = tok < cols.size() ? cols[tok] : static_cast<int>(line.size()) + 1;
      return GraphSyntaxError(msg, lineno, col);
    };
    auto ident = [&](std::size_t k, const char* what) {
      if (k >= t.size()) throw fail(std::string("missing ") + what, k);
      if (!valid_ident(t[k])) throw fail(std::string("invalid ") + what + " '" + t[k] + "'", k);
      return t[k];
    };
    auto port = [&](std::size_t k, bool node_port) {
      if (k >= t.size()) throw fail("missing port reference", k);
      const auto ref = parse_port_ref(t[k]);
      if (!valid_ident(ref.node) || (t[k].find('.') != std::string::npos && !valid_ident(ref.port)) ||
          (node_port && ref.is_graph_input())) {
        throw fail("invalid port reference '" + t[k] + "'", k);
      }
      return ref;
    };
    const auto& kw = t[0];
    if (kw == "graph") {
      g.name = ident(1, "graph name");
      if (t.size() > 2) throw fail("unexpected token", 2);
    } else if (kw == "input") {
      g.inputs.push_back(ident(1, "input name"));
      if (t.size() > 2) throw fail("unexpected token", 2);
    } else if (kw == "node") {
      Node n;
      n.id = ident(1, "node id");
      n.op = ident(2, "operation");
      for (std::size_t k = 3; k < t.size(); ++k) {
        const auto eq = t[k].find('=');
        if (eq == std::string::npos || eq == 0) throw fail("expected key=value", k);
        const auto key = t[k].substr(0, eq);
        if (n.params.count(key)) throw fail("duplicate parameter '" + key + "'", k);
        n.params[key] = t[k].substr(eq + 1);
      }
      g.nodes.push_back(std::move(n));
    } else if (kw == "data") {
      const auto id = ident(1, "node id");
      if (t.size() != 3) throw fail("expected: data <node> <text>", std::min<std::size_t>(t.size(), 3));
      Node* n = g.find(id);
      if (!n) throw fail("data for undeclared node '" + id + "'", 1);
      n->data.push_back(t[2]);
    } else if (kw == "edge") {
      const auto from = port(1, false);
      if (t.size() < 3 || t[2] != "->") throw fail("expected '->'", 2);
      const auto to = port(3, true);
      if (t.size() > 4) throw fail("unexpected token", 4);
      g.edges.push_back({from, to});
    } else if (kw == "output") {
      const auto name = ident(1, "output name");
      if (t.size() < 3 || t[2] != "<-") throw fail("expected '<-'", 2);
      const auto from = port(3, false);
      if (t.size() > 4) throw fail("unexpected token", 4);
      g.outputs.push_back({name, from});
    } else {
      throw fail("unknown statement '" + kw + "'", 0);
    }
  }
  return g;
}

PipelineGraph load_graph(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read graph file " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_graph(ss.str());
}

std::string print_graph(const PipelineGraph& g) {
  std::ostringstream out;
  if (!g.name.empty()) out << "graph " << g.name << "\n";
  for (const auto& i : g.inputs) out << "input " << i << "\n";
  for (const auto& n : g.nodes) {
    out << "node " << n.id << " " << n.op;
    for (const auto& [k, v] : n.params) out << " " << quote_if_needed(k + "=" + v);
    out << "\n";
  }
  for (const auto& n : g.nodes)
    for (const auto& d : n.data) out << "data " << n.id << " " << quote_if_needed(d) << "\n";
  for (const auto& e : g.edges) out << "edge " << to_string(e.from) << " -> " << to_string(e.to) << "\n";
  for (const auto& o : g.outputs) out << "output " << o.name << " <- " << to_string(o.from) << "\n";
  return out.str();
}

}  // namespace ttc::graph
