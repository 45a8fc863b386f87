#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "ttc/aggregate/result_matrix.hpp"
#include "ttc/cli/config.hpp"
#include "ttc/core/run_store.hpp"

namespace ttc::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitConfigError = 2,
  kExitInternalError = 3,
};

struct EvalOutcome {
  std::string run_id;
  std::filesystem::path run_dir;
  RunRecord record;
  ResultMatrix matrix;
};

/// Column label of a (solver, method) pair: the method id with one solver, the solver
/// id with one method, "solver/method" otherwise.
std::string column_id(const RunConfig& config, const std::string& solver, const std::string& method);

/// Full sweep over tasks × solvers × methods. Cell seeds derive from the root seed,
/// the column label and the task id, so results do not depend on parallelism.
/// Writes the record plus table.txt, curve.csv and matrix.json into the run directory.
EvalOutcome run_eval(const RunConfig& config);

/// Entry point; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ttc::cli
