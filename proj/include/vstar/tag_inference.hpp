#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "vstar/nesting.hpp"
#include "vstar/oracle.hpp"
#include "vstar/tagged.hpp"

namespace vstar {

/// Some pair of t has an unmatched call inside t(x) and an unmatched return
/// of the same pair inside t(y), both read within t(seed).
bool is_compatible_tagging(const Tagging& t, const NestingPattern& p);

struct TagInferenceOptions {
  NestingLimits nesting;
  std::size_t max_search_nodes = 1000000;  // per bound K
};

struct TagInferenceResult {
  std::optional<Tagging> tagging;
  std::vector<NestingPattern> patterns;  // candidates at the final bound
  std::size_t K = 0;
  std::size_t search_nodes = 0;
};

/// Backtracking search for a tagging compatible with all candidate nesting
/// patterns, raising the pumping bound until one is found or the cap is hit.
/// Throws PreconditionError if the oracle rejects a seed.
TagInferenceResult tag_infer(MembershipOracle& o, const std::vector<std::string>& seeds,
                             const TagInferenceOptions& options = {});

}  // namespace vstar
