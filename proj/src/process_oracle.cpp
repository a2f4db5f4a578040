#include "vstar/process_oracle.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <thread>

#include "vstar/error.hpp"
#include "vstar/text.hpp"

namespace vstar {

namespace {

using Clock = std::chrono::steady_clock;

class TempFile {
 public:
  explicit TempFile(std::string_view content) {
    std::string pattern = (std::filesystem::temp_directory_path() / "vstar-query-XXXXXX").string();
    int fd = ::mkstemp(pattern.data());
    if (fd < 0) throw OracleError("cannot create temporary input file", std::string(content));
    path_ = pattern;
    std::size_t written = 0;
    while (written < content.size()) {
      ssize_t n = ::write(fd, content.data() + written, content.size() - written);
      if (n < 0) {
        if (errno == EINTR) continue;
        ::close(fd);
        throw OracleError("cannot write temporary input file", std::string(content));
      }
      written += static_cast<std::size_t>(n);
    }
    ::close(fd);
  }
  ~TempFile() { ::unlink(path_.c_str()); }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

int remaining_ms(Clock::time_point deadline) {
  auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now()).count();
  return left > 0 ? static_cast<int>(left) : 0;
}

void kill_and_reap(pid_t pid) {
  ::kill(pid, SIGKILL);
  int status = 0;
  while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
}

}  // namespace

ExternalProcessOracle::ExternalProcessOracle(ExternalProcessSpec spec) : spec_(std::move(spec)) {
  if (spec_.command.empty()) throw DomainError("external oracle command is empty");
  if (spec_.timeout_ms <= 0) throw DomainError("external oracle timeout must be positive");
  // A child that exits without reading its stdin must not kill us.
  ::signal(SIGPIPE, SIG_IGN);
}

bool ExternalProcessOracle::query(std::string_view s) {
  std::optional<TempFile> file;
  std::vector<std::string> args = spec_.command;
  if (spec_.input_mode == InputMode::File) {
    file.emplace(s);
    for (auto& a : args) {
      if (a == "{}") a = file->path();
    }
  }
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  argv.push_back(nullptr);

  int in_pipe[2] = {-1, -1};
  if (spec_.input_mode == InputMode::Stdin && ::pipe2(in_pipe, O_CLOEXEC) != 0) {
    throw OracleError("pipe failed: " + std::string(std::strerror(errno)), std::string(s));
  }
  // Reports exec failure from the child.
  int err_pipe[2];
  if (::pipe2(err_pipe, O_CLOEXEC) != 0) {
    throw OracleError("pipe failed: " + std::string(std::strerror(errno)), std::string(s));
  }

  pid_t pid = ::fork();
  if (pid < 0) throw OracleError("fork failed: " + std::string(std::strerror(errno)), std::string(s));
  if (pid == 0) {
    int devnull = ::open("/dev/null", O_RDWR);
    if (spec_.input_mode == InputMode::Stdin) {
      ::dup2(in_pipe[0], STDIN_FILENO);
    } else {
      ::dup2(devnull, STDIN_FILENO);
    }
    ::dup2(devnull, STDOUT_FILENO);
    ::dup2(devnull, STDERR_FILENO);
    ::execvp(argv[0], argv.data());
    int code = errno;
    ssize_t ignored = ::write(err_pipe[1], &code, sizeof code);
    (void)ignored;
    ::_exit(127);
  }

  ::close(err_pipe[1]);
  auto deadline = Clock::now() + std::chrono::milliseconds(spec_.timeout_ms);

  if (spec_.input_mode == InputMode::Stdin) {
    ::close(in_pipe[0]);
    int fd = in_pipe[1];
    ::fcntl(fd, F_SETFL, ::fcntl(fd, F_GETFL) | O_NONBLOCK);
    std::size_t written = 0;
    while (written < s.size()) {
      pollfd p{fd, POLLOUT, 0};
      int ready = ::poll(&p, 1, remaining_ms(deadline));
      if (ready == 0) {
        ::close(fd);
        kill_and_reap(pid);
        ::close(err_pipe[0]);
        throw OracleError("external oracle timed out", std::string(s));
      }
      if (ready < 0 && errno == EINTR) continue;
      ssize_t n = ::write(fd, s.data() + written, s.size() - written);
      if (n < 0) {
        if (errno == EAGAIN || errno == EINTR) continue;
        break;  // EPIPE: the child stopped reading, its exit status decides
      }
      written += static_cast<std::size_t>(n);
    }
    ::close(fd);
  }

  int exec_errno = 0;
  ssize_t got = ::read(err_pipe[0], &exec_errno, sizeof exec_errno);
  ::close(err_pipe[0]);
  if (got == static_cast<ssize_t>(sizeof exec_errno)) {
    kill_and_reap(pid);
    throw OracleError("cannot execute " + spec_.command[0] + ": " + std::strerror(exec_errno), std::string(s));
  }

  int status = 0;
  auto pause = std::chrono::microseconds(50);
  while (true) {
    pid_t r = ::waitpid(pid, &status, WNOHANG);
    if (r == pid) break;
    if (r < 0 && errno != EINTR) throw OracleError("waitpid failed", std::string(s));
    if (Clock::now() >= deadline) {
      kill_and_reap(pid);
      throw OracleError("external oracle timed out", std::string(s));
    }
    std::this_thread::sleep_for(pause);
    pause = std::min(pause * 2, std::chrono::microseconds(5000));
  }
  if (WIFSIGNALED(status)) {
    throw OracleError("external oracle killed by signal " + std::to_string(WTERMSIG(status)), std::string(s));
  }
  return WEXITSTATUS(status) == spec_.accept_on;
}

ExternalProcessSpec parse_command_spec(std::string_view words) {
  ExternalProcessSpec spec;
  spec.command = split_shell_words(words);
  if (spec.command.empty()) throw DomainError("empty oracle command");
  for (const auto& a : spec.command) {
    if (a == "{}") spec.input_mode = InputMode::File;
  }
  if (const char* env = std::getenv("VSTAR_ORACLE_TIMEOUT_MS")) {
    try {
      spec.timeout_ms = std::stoi(env);
    } catch (const std::exception&) {
      throw DomainError("VSTAR_ORACLE_TIMEOUT_MS must be an integer");
    }
    if (spec.timeout_ms <= 0) throw DomainError("VSTAR_ORACLE_TIMEOUT_MS must be positive");
  }
  return spec;
}

}  // namespace vstar
