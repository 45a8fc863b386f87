#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "ttc/arc/dsl.hpp"
#include "ttc/arc/external_program.hpp"
#include "ttc/arc/task.hpp"
#include "ttc/core/task.hpp"

namespace ttc::arc {

using Program = std::variant<DslProgram, ExternalProgram>;

/// Runs a program on one grid; DslEvalError / ExternalProgramError propagate.
Grid run_program(const Program& program, const Grid& input);

/// Describes where two grids differ: shape mismatch, or up to 8 differing coordinates.
std::string describe_mismatch(const Grid& expected, const Grid& actual);

/// Exact match on every train pair, one check per pair ("pair <i>").
/// Program failures yield an error verdict (timeout / crash / malformed output).
Verdict verify_program(const Program& program, const ArcTask& task);

class UnverifiedProgramError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Applies the program to every test input. Unless `unsafe`, the program must first
/// pass verify_program (UnverifiedProgramError otherwise). No partial output on failure.
std::vector<Grid> predict(const Program& program, const ArcTask& task, bool unsafe = false);

/// Verifier for tasks whose candidates are programs in text form: DSL source, or
/// "!cmd <command line>" for an external program.
class ArcProgramVerifier final : public Verifier {
 public:
  explicit ArcProgramVerifier(ArcTask task,
                              std::chrono::milliseconds external_timeout = std::chrono::seconds(10));
  std::string name() const override { return "arc-program"; }
  bool accepts(AnswerKind kind) const override { return kind == AnswerKind::text; }
  Verdict check(const Task& task, const Candidate& candidate) const override;
  bool bounded() const override { return true; }

  const ArcTask& arc_task() const { return task_; }

 private:
  ArcTask task_;
  std::chrono::milliseconds external_timeout_;
};

/// Parses candidate text into a program (see ArcProgramVerifier). Throws DslSyntaxError.
Program parse_program_text(const std::string& text, std::chrono::milliseconds external_timeout);

/// Wraps an ARC task as a core Task: the prompt is the program-style prompt, answers are program text.
Task make_arc_task(const ArcTask& task);

}  // namespace ttc::arc
