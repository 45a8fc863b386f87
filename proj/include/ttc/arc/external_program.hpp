#pragma once

#include <chrono>
#include <stdexcept>
#include <string>
#include <vector>

#include "ttc/arc/grid.hpp"

namespace ttc::arc {

/// A transform run as a child process. Wire protocol: the input grid is written to
/// stdin as digit rows followed by one blank line; the program writes the output grid
/// to stdout in the same form and exits 0.
struct ExternalProgram {
  std::vector<std::string> argv;
  std::chrono::milliseconds timeout{10'000};
};

class ExternalProgramError : public std::runtime_error {
 public:
  enum class Cause { timeout, crash, malformed_output };
  ExternalProgramError(Cause cause, const std::string& what)
      : std::runtime_error(what), cause_(cause) {}
  Cause cause() const { return cause_; }
  /// "timeout", "crash" or "malformed output".
  std::string cause_name() const;

 private:
  Cause cause_;
};

/// Encodes a grid in the wire format (rows, '\n', blank line).
std::string encode_wire_grid(const Grid& g);
/// Throws ExternalProgramError(malformed_output) on anything but one valid grid.
Grid decode_wire_grid(const std::string& text);

/// Runs argv in its own process group with `input` on stdin and returns stdout.
/// Stderr is discarded, output is capped at 1 MiB, the group is killed on timeout.
/// Throws ExternalProgramError (timeout, crash, or malformed output on overflow).
std::string run_process(const std::vector<std::string>& argv, const std::string& input,
                        std::chrono::milliseconds timeout);

/// Runs the program on one grid. Throws ExternalProgramError; never terminates the caller.
Grid run_external(const ExternalProgram& program, const Grid& input);

/// Splits a command line on whitespace, honoring single and double quotes.
std::vector<std::string> split_command_line(const std::string& command);

}  // namespace ttc::arc
