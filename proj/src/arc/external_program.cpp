#include "ttc/arc/external_program.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

namespace ttc::arc {

std::string ExternalProgramError::cause_name() const {
  switch (cause_) {
    case Cause::timeout:
      return "timeout";
    case Cause::crash:
      return "crash";
    case Cause::malformed_output:
      return "malformed output";
  }
  return "crash";
}

std::string encode_wire_grid(const Grid& g) { return g.to_text() + "\n\n"; }

Grid decode_wire_grid(const std::string& text) {
  using Cause = ExternalProgramError::Cause;
  std::vector<std::vector<int>> rows;
  std::size_t start = 0;
  bool ended = false;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(start, end - start);
    start = end + 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) {
      if (!rows.empty()) ended = true;
      continue;
    }
    if (ended) throw ExternalProgramError(Cause::malformed_output, "output continues after blank line");
    std::vector<int> row;
    for (char ch : line) {
      if (ch >= '0' && ch <= '9') {
        row.push_back(ch - '0');
      } else if (ch != ' ' && ch != '\t') {
        throw ExternalProgramError(Cause::malformed_output,
                                   std::string("unexpected character '") + ch + "' in output grid");
      }
    }
    rows.push_back(std::move(row));
  }
  try {
    return Grid::from_rows(rows);
  } catch (const GridError& e) {
    throw ExternalProgramError(Cause::malformed_output, std::string("output grid: ") + e.what());
  }
}

namespace {

struct Fd {
  int fd = -1;
  Fd() = default;
  explicit Fd(int f) : fd(f) {}
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;
  ~Fd() { reset(); }
  void reset() {
    if (fd >= 0) ::close(fd);
    fd = -1;
  }
};

void make_pipe(Fd& read_end, Fd& write_end) {
  int fds[2];
  if (::pipe2(fds, O_CLOEXEC) != 0) {
    throw ExternalProgramError(ExternalProgramError::Cause::crash,
                               std::string("pipe: ") + std::strerror(errno));
  }
  read_end.fd = fds[0];
  write_end.fd = fds[1];
}

constexpr std::size_t kMaxOutput = 1 << 20;

}  // namespace

std::string run_process(const std::vector<std::string>& argv, const std::string& payload,
                        std::chrono::milliseconds timeout) {
  using Cause = ExternalProgramError::Cause;
  if (argv.empty()) throw ExternalProgramError(Cause::crash, "empty command");

  Fd in_r, in_w, out_r, out_w;
  make_pipe(in_r, in_w);
  make_pipe(out_r, out_w);

  std::vector<char*> args;
  for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
  args.push_back(nullptr);

  const pid_t pid = ::fork();
  if (pid < 0) throw ExternalProgramError(Cause::crash, std::string("fork: ") + std::strerror(errno));
  if (pid == 0) {
    ::dup2(in_r.fd, STDIN_FILENO);
    ::dup2(out_w.fd, STDOUT_FILENO);
    const int devnull = ::open("/dev/null", O_WRONLY);
    if (devnull >= 0) ::dup2(devnull, STDERR_FILENO);
    ::setpgid(0, 0);
    ::execvp(args[0], args.data());
    ::_exit(127);
  }
  in_r.reset();
  out_w.reset();

  std::size_t written = 0;
  std::string output;
  bool timed_out = false;
  bool overflow = false;
  const auto deadline = std::chrono::steady_clock::now() + timeout;
  ::fcntl(in_w.fd, F_SETFL, O_NONBLOCK);
  ::signal(SIGPIPE, SIG_IGN);

  while (out_r.fd >= 0) {
    const auto now = std::chrono::steady_clock::now();
    if (now >= deadline) {
      timed_out = true;
      break;
    }
    const auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count();
    pollfd fds[2];
    nfds_t n = 0;
    fds[n++] = {out_r.fd, POLLIN, 0};
    if (in_w.fd >= 0) fds[n++] = {in_w.fd, POLLOUT, 0};
    const int rc = ::poll(fds, n, static_cast<int>(std::max<long long>(1, remaining)));
    if (rc < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (n == 2 && (fds[1].revents & (POLLOUT | POLLERR | POLLHUP))) {
      const auto w = ::write(in_w.fd, payload.data() + written, payload.size() - written);
      if (w > 0) written += static_cast<std::size_t>(w);
      if (w < 0 && errno != EAGAIN) in_w.reset();
      if (written == payload.size()) in_w.reset();
    }
    if (fds[0].revents & (POLLIN | POLLHUP | POLLERR)) {
      char buf[4096];
      const auto r = ::read(out_r.fd, buf, sizeof buf);
      if (r > 0) {
        output.append(buf, static_cast<std::size_t>(r));
        if (output.size() > kMaxOutput) {
          overflow = true;
          break;
        }
      } else if (r == 0 || errno != EAGAIN) {
        out_r.reset();
      }
    }
  }

  int status = 0;
  if (timed_out || overflow) {
    ::kill(-pid, SIGKILL);
    ::kill(pid, SIGKILL);
    ::waitpid(pid, &status, 0);
    if (timed_out) {
      throw ExternalProgramError(Cause::timeout, "program exceeded " +
                                                     std::to_string(timeout.count()) + " ms");
    }
    throw ExternalProgramError(Cause::malformed_output, "output larger than 1 MiB");
  }
  // stdout closed; give the process the remaining budget to exit.
  for (;;) {
    const pid_t w = ::waitpid(pid, &status, WNOHANG);
    if (w == pid) break;
    if (std::chrono::steady_clock::now() >= deadline) {
      ::kill(-pid, SIGKILL);
      ::kill(pid, SIGKILL);
      ::waitpid(pid, &status, 0);
      throw ExternalProgramError(Cause::timeout, "program exceeded " +
                                                     std::to_string(timeout.count()) + " ms");
    }
    ::usleep(1000);
  }
  if (WIFSIGNALED(status)) {
    throw ExternalProgramError(Cause::crash, "killed by signal " + std::to_string(WTERMSIG(status)));
  }
  if (WEXITSTATUS(status) == 127) throw ExternalProgramError(Cause::crash, "command not found: " + argv[0]);
  if (WEXITSTATUS(status) != 0) {
    throw ExternalProgramError(Cause::crash, "exit status " + std::to_string(WEXITSTATUS(status)));
  }
  return output;
}

Grid run_external(const ExternalProgram& program, const Grid& input) {
  return decode_wire_grid(run_process(program.argv, encode_wire_grid(input), program.timeout));
}

std::vector<std::string> split_command_line(const std::string& command) {
  std::vector<std::string> out;
  std::string current;
  bool have = false;
  char quote = 0;
  for (char ch : command) {
    if (quote) {
      if (ch == quote) {
        quote = 0;
      } else {
        current.push_back(ch);
      }
    } else if (ch == '\'' || ch == '"') {
      quote = ch;
      have = true;
    } else if (ch == ' ' || ch == '\t' || ch == '\n') {
      if (have) out.push_back(std::move(current));
      current.clear();
      have = false;
    } else {
      current.push_back(ch);
      have = true;
    }
  }
  if (quote) throw std::invalid_argument("unterminated quote in command line");
  if (have) out.push_back(std::move(current));
  return out;
}

}  // namespace ttc::arc
