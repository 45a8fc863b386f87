#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ttc/core/answer.hpp"

namespace ttc {

/// A solver's proposed answer. Exactly one of `answer` / `error` is set.
struct Candidate {
  std::optional<AnswerValue> answer;
  std::optional<std::string> rationale;  // raw solver output
  std::string solver_id;
  std::string method_id;
  std::uint64_t seed = 0;
  std::uint64_t elapsed_ms = 0;
  std::optional<std::string> error;

  bool ok() const { return answer.has_value() && !error; }

  static Candidate failed(std::string solver_id, std::string method_id, std::uint64_t seed,
                          std::string error) {
    Candidate c;
    c.solver_id = std::move(solver_id);
    c.method_id = std::move(method_id);
    c.seed = seed;
    c.error = std::move(error);
    return c;
  }

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

}  // namespace ttc
