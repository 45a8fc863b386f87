#pragma once

#include <string>
#include <string_view>

#include "ttc/graph/ops.hpp"

namespace ttc::graph {

enum class MutationKind { edit_param, add_node, remove_node, add_edge, remove_edge, edit_prompt, add_data, remove_data };

std::string_view to_string(MutationKind kind);
/// Throws GraphError for unknown names.
MutationKind mutation_kind_from_string(std::string_view name);

/// Payload by kind:
///   edit_param  <node>  key=value        (empty value removes the key)
///   add_node    <id>    op [key=value ...] [port<-source ...]
///   remove_node <id>                      edges into the node go with it
///   add_edge    <src>   <node>.<port>     replaces an existing feed of that port
///   remove_edge <src>   <node>.<port>
///   edit_prompt <node>  text              sets the instruction
///   add_data    <node>  text
///   remove_data <node>  index
struct Mutation {
  MutationKind kind = MutationKind::edit_param;
  std::string target;
  std::string payload;

  friend bool operator==(const Mutation&, const Mutation&) = default;
};

/// One line "KIND target payload". Throws GraphError.
Mutation parse_mutation(const std::string& line);
std::string to_string(const Mutation& m);

/// Returns the mutated copy, or throws GraphError with the reason; `g` is untouched
/// and the result always satisfies validate().
PipelineGraph mutate(const PipelineGraph& g, const Mutation& m, const OpRegistry& ops = OpRegistry::builtin(),
                     const SolverRegistry* solvers = nullptr);

}  // namespace ttc::graph
