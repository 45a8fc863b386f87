#pragma once

#include <chrono>

#include "ttc/core/task.hpp"

namespace ttc {

struct VerifyOptions {
  std::chrono::milliseconds timeout{10'000};
};

/// Pure and deterministic. Bound verifier takes precedence over the reference answer.
/// No verifier and no reference -> error "unverifiable"; watchdog expiry -> error "timeout".
Verdict verify(const Task& task, const Candidate& candidate, const VerifyOptions& options = {});

}  // namespace ttc
