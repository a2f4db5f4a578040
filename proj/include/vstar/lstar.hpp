#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vstar/dfa.hpp"

namespace vstar {

using MemberFn = std::function<bool(std::string_view)>;
/// Returns a word on which the hypothesis is wrong, or nullopt to accept it.
using DfaTeacher = std::function<std::optional<std::string>(const Dfa&)>;

struct LstarBudget {
  std::size_t max_rounds = 64;
  std::size_t max_states = 64;
};

struct LstarResult {
  Dfa dfa;
  bool converged = false;
  std::size_t rounds = 0;
  std::size_t membership_queries = 0;  // distinct words asked
};

/// Angluin's L*: prefix-closed access set, suffix-closed test set, all
/// prefixes of each counterexample added to the access set.
LstarResult lstar_learn(const MemberFn& member, std::string alphabet, const DfaTeacher& teacher,
                        LstarBudget budget = {});

/// Teacher that checks a fixed list of words in order.
DfaTeacher finite_test_teacher(const MemberFn& member, std::vector<std::string> tests);

}  // namespace vstar
