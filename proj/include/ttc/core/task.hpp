#pragma once

#include <memory>
#include <optional>
#include <string>

#include "ttc/core/answer.hpp"
#include "ttc/core/candidate.hpp"
#include "ttc/core/verdict.hpp"

namespace ttc {

struct Task;

/// A perfect checker bound to a task (ARC train pairs, exact game solvers).
class Verifier {
 public:
  virtual ~Verifier() = default;
  virtual std::string name() const = 0;
  virtual bool accepts(AnswerKind kind) const = 0;
  virtual Verdict check(const Task& task, const Candidate& candidate) const = 0;
  /// True when check() runs in bounded time without external processes;
  /// unbounded verifiers are run under the verify() watchdog.
  virtual bool bounded() const { return false; }
};

struct Task {
  std::string id;
  std::string category;
  std::string prompt;
  AnswerKind answer_kind = AnswerKind::text;
  std::optional<AnswerValue> reference;
  std::shared_ptr<const Verifier> verifier;
};

/// Throws ConfigError when the verifier does not accept the task's answer kind
/// or the reference has a different kind.
void validate_task(const Task& task);

}  // namespace ttc
