#include "ttc/core/verify.hpp"

#include <future>
#include <memory>
#include <thread>

#include "ttc/core/errors.hpp"

namespace ttc {

void validate_task(const Task& task) {
  if (task.id.empty()) throw ConfigError("task id must be non-empty");
  if (task.verifier && !task.verifier->accepts(task.answer_kind)) {
    throw ConfigError("verifier '" + task.verifier->name() + "' does not accept " +
                      std::string(to_string(task.answer_kind)) + " answers (task " + task.id + ")");
  }
  if (task.reference && task.reference->kind() != task.answer_kind) {
    throw ConfigError("reference answer kind differs from task answer kind (task " + task.id + ")");
  }
}

namespace {

Verdict check_reference(const Task& task, const Candidate& candidate) {
  const auto& ref = *task.reference;
  const auto& got = *candidate.answer;
  Check c{"reference", got == ref, {}};
  if (!c.passed) c.detail = "expected " + ref.canonical() + ", got " + got.canonical();
  return Verdict::from_checks({std::move(c)});
}

Verdict run_guarded(const Verifier& verifier, const Task& task, const Candidate& candidate) {
  try {
    return verifier.check(task, candidate);
  } catch (const std::exception& e) {
    return Verdict::error("crash", e.what());
  }
}

Verdict run_with_watchdog(const Task& task, const Candidate& candidate,
                          std::chrono::milliseconds timeout) {
  // The worker owns copies so an abandoned check never touches caller state.
  auto owned_task = std::make_shared<const Task>(task);
  auto owned_candidate = std::make_shared<const Candidate>(candidate);
  auto promise = std::make_shared<std::promise<Verdict>>();
  auto future = promise->get_future();
  std::thread([owned_task, owned_candidate, promise] {
    promise->set_value(run_guarded(*owned_task->verifier, *owned_task, *owned_candidate));
  }).detach();
  if (future.wait_for(timeout) != std::future_status::ready) {
    return Verdict::error("timeout", "verifier '" + task.verifier->name() + "' exceeded " +
                                         std::to_string(timeout.count()) + " ms");
  }
  return future.get();
}

}  // namespace

Verdict verify(const Task& task, const Candidate& candidate, const VerifyOptions& options) {
  if (!task.verifier && !task.reference) {
    return Verdict::error("unverifiable", "task " + task.id + " has no verifier and no reference");
  }
  if (candidate.error) {
    const std::string prefix = "malformed output: ";
    if (candidate.error->rfind(prefix, 0) == 0) {
      return Verdict::error("malformed output", candidate.error->substr(prefix.size()));
    }
    return Verdict::error("solver error", *candidate.error);
  }
  if (!candidate.answer) return Verdict::error("malformed output", "candidate has no answer");
  if (task.verifier) {
    if (!task.verifier->accepts(candidate.answer->kind())) {
      return Verdict::error("malformed output",
                            "verifier does not accept " +
                                std::string(to_string(candidate.answer->kind())) + " answers");
    }
    if (task.verifier->bounded()) return run_guarded(*task.verifier, task, candidate);
    return run_with_watchdog(task, candidate, options.timeout);
  }
  if (candidate.answer->kind() != task.reference->kind()) {
    return Verdict::from_checks({{"reference", false, "answer kind mismatch"}});
  }
  return check_reference(task, candidate);
}

}  // namespace ttc
