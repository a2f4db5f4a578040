#pragma once

#include <string>
#include <vector>

#include "vstar/oracle.hpp"

namespace vstar {

enum class InputMode { Stdin, File };

struct ExternalProcessSpec {
  /// argv; in File mode every argument equal to "{}" is replaced by the path
  /// of a temporary file holding the candidate.
  std::vector<std::string> command;
  InputMode input_mode = InputMode::Stdin;
  int accept_on = 0;
  int timeout_ms = 10000;
};

/// Runs a program per query and compares its exit status with accept_on.
/// Timeouts, signals and exec failures raise OracleError.
class ExternalProcessOracle final : public MembershipOracle {
 public:
  explicit ExternalProcessOracle(ExternalProcessSpec spec);
  bool query(std::string_view s) override;

  const ExternalProcessSpec& spec() const noexcept { return spec_; }

 private:
  ExternalProcessSpec spec_;
};

/// Parses `<shell-words>` into a spec; File mode is chosen when an argument is "{}".
/// VSTAR_ORACLE_TIMEOUT_MS overrides the timeout when set.
ExternalProcessSpec parse_command_spec(std::string_view words);

}  // namespace vstar
