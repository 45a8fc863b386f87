#include "ttc/arc/verify.hpp"

#include <sstream>

#include "ttc/arc/prompt.hpp"

namespace ttc::arc {

Grid run_program(const Program& program, const Grid& input) {
  if (const auto* dsl = std::get_if<DslProgram>(&program)) return eval_dsl(*dsl, input);
  return run_external(std::get<ExternalProgram>(program), input);
}

std::string describe_mismatch(const Grid& expected, const Grid& actual) {
  if (expected.height() != actual.height() || expected.width() != actual.width()) {
    return "shape mismatch: expected " + std::to_string(expected.height()) + "x" +
           std::to_string(expected.width()) + ", got " + std::to_string(actual.height()) + "x" +
           std::to_string(actual.width());
  }
  std::ostringstream s;
  int shown = 0, total = 0;
  for (int r = 0; r < expected.height(); ++r)
    for (int c = 0; c < expected.width(); ++c) {
      if (expected.at(r, c) == actual.at(r, c)) continue;
      if (shown < 8) {
        s << (shown ? " " : "cells differ at ") << "(" << r << "," << c << ")";
        ++shown;
      }
      ++total;
    }
  if (total == 0) return "";
  if (total > shown) s << " and " << (total - shown) << " more";
  return s.str();
}

namespace {

Verdict program_failure(const std::exception& e) {
  if (const auto* ext = dynamic_cast<const ExternalProgramError*>(&e)) {
    return Verdict::error(ext->cause_name(), ext->what());
  }
  return Verdict::error("crash", e.what());
}

}  // namespace

Verdict verify_program(const Program& program, const ArcTask& task) {
  std::vector<Check> checks;
  try {
    for (std::size_t i = 0; i < task.train.size(); ++i) {
      const auto& pair = task.train[i];
      const Grid out = run_program(program, pair.input);
      const auto diff = describe_mismatch(pair.output, out);
      checks.push_back({"pair " + std::to_string(i), diff.empty(), diff});
    }
  } catch (const DslEvalError& e) {
    return program_failure(e);
  } catch (const ExternalProgramError& e) {
    return program_failure(e);
  } catch (const GridError& e) {
    return program_failure(e);
  }
  return Verdict::from_checks(std::move(checks));
}

std::vector<Grid> predict(const Program& program, const ArcTask& task, bool unsafe) {
  if (!unsafe) {
    const auto verdict = verify_program(program, task);
    if (!verdict.passed()) {
      std::string why;
      for (const auto& c : verdict.checks())
        if (!c.passed) {
          why = c.name + ": " + c.detail;
          break;
        }
      throw UnverifiedProgramError("program does not pass the train pairs of " + task.id + " (" + why + ")");
    }
  }
  std::vector<Grid> out;
  out.reserve(task.test.size());
  for (const auto& t : task.test) out.push_back(run_program(program, t.input));
  return out;
}

Program parse_program_text(const std::string& text, std::chrono::milliseconds external_timeout) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text.compare(first, 5, "!cmd ") == 0) {
    ExternalProgram p{split_command_line(text.substr(first + 5)), external_timeout};
    if (p.argv.empty()) throw DslSyntaxError("empty external command", 1, static_cast<int>(first) + 6);
    return p;
  }
  return parse_dsl(text);
}

ArcProgramVerifier::ArcProgramVerifier(ArcTask task, std::chrono::milliseconds external_timeout)
    : task_(std::move(task)), external_timeout_(external_timeout) {}

Verdict ArcProgramVerifier::check(const Task&, const Candidate& candidate) const {
  // The raw output keeps line breaks and case that text normalization folds away.
  const std::string text = candidate.rationale ? *candidate.rationale : candidate.answer->as_string();
  Program program;
  try {
    program = parse_program_text(text, external_timeout_);
  } catch (const std::exception& e) {
    return Verdict::error("malformed output", e.what());
  }
  return verify_program(program, task_);
}

Task make_arc_task(const ArcTask& task) {
  Task t;
  t.id = task.id;
  t.category = "arc";
  t.prompt = format_prompt(task, PromptStyle::program);
  t.answer_kind = AnswerKind::text;
  t.verifier = std::make_shared<ArcProgramVerifier>(task);
  return t;
}

}  // namespace ttc::arc
