#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "ttc/graph/pipeline.hpp"

namespace ttc::graph {

/// Syntax error in a graph file; line and column are 1-based.
class GraphSyntaxError : public std::runtime_error {
 public:
  GraphSyntaxError(const std::string& msg, int line, int column)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_, column_;
};

/// Line format, '#' starts a comment:
///   graph <name>
///   input <name>
///   node <id> <op> [key=value ...]
///   data <node> <text>
///   edge <src> -> <node>.<port>        src is <node>.<port> or a graph input
///   output <name> <- <src>
/// Values may be double-quoted with \" \\ \n escapes. Structure is not validated here.
PipelineGraph parse_graph(const std::string& text);
PipelineGraph load_graph(const std::filesystem::path& file);

/// Canonical text; parse_graph(print_graph(g)) == g.
std::string print_graph(const PipelineGraph& g);

/// Splits a line into tokens, honoring double quotes. `columns` receives the 1-based
/// start column of each token. Throws GraphSyntaxError (line 0) on an open quote.
std::vector<std::string> tokenize_line(const std::string& line, std::vector<int>* columns = nullptr);
/// Quotes a value when it is empty or contains blanks, quotes, '#' or newlines.
std::string quote_if_needed(const std::string& value);

PortRef parse_port_ref(const std::string& text);

}  // namespace ttc::graph
