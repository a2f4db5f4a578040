#pragma once

#include <stdexcept>
#include <string>

namespace vstar {

/// Input violates a documented domain (unknown character, malformed grammar, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A caller-side precondition did not hold (e.g. a seed rejected by the oracle).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Broken internal invariant; indicates a bug or a nondeterministic oracle.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The membership backend failed to produce an answer for `input`.
class OracleError : public std::runtime_error {
 public:
  OracleError(const std::string& what, std::string input)
      : std::runtime_error(what), input_(std::move(input)) {}

  const std::string& input() const noexcept { return input_; }

 private:
  std::string input_;
};

}  // namespace vstar
