#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "ttc/core/task.hpp"

namespace ttc {

/// One request to a solver. `role` names the stage of a method that asks:
/// "answer", "prefix", "plan", "principles", "forward", "backward", "verify", "judge".
struct Query {
  const Task* task = nullptr;
  std::string role = "answer";
  std::string prompt;
};

struct Completion {
  std::string text;
  std::uint64_t elapsed_ms = 0;
  std::optional<std::string> error;
};

/// A black-box sampler p(y | x). Implementations are immutable after construction
/// and callable from many threads.
class Solver {
 public:
  virtual ~Solver() = default;
  virtual const std::string& id() const = 0;
  virtual Completion complete(const Query& query, std::uint64_t seed) const = 0;
};

enum class SolverKind { scripted, http_model, composite };

struct SolverBinding {
  std::string id;
  SolverKind kind = SolverKind::scripted;
  std::map<std::string, std::string> params;
};

}  // namespace ttc
