#include "vstar/tag_inference.hpp"

#include <algorithm>
#include <set>

#include "vstar/error.hpp"
#include "vstar/text.hpp"

namespace vstar {

bool is_compatible_tagging(const Tagging& t, const NestingPattern& p) {
  if (t.empty()) return false;
  TaggedString ts = apply_tagging(t, p.seed);
  auto px = unmatched_profile(ts, p.x_begin(), p.x_end());
  if (px.pending_calls.empty()) return false;
  auto py = unmatched_profile(ts, p.y_begin(), p.y_end());
  for (auto pair : px.pending_calls) {
    if (std::find(py.pending_returns.begin(), py.pending_returns.end(), pair) != py.pending_returns.end()) {
      return true;
    }
  }
  return false;
}

namespace {

class TagSearch {
 public:
  TagSearch(const std::vector<std::string>& seeds, const std::vector<NestingPattern>& patterns, std::size_t budget)
      : seeds_(seeds), patterns_(patterns), budget_(budget) {}

  std::optional<Tagging> run() { return search(0, Tagging{}); }
  std::size_t nodes() const noexcept { return nodes_; }

 private:
  std::optional<Tagging> search(std::size_t idx, const Tagging& t) {
    if (++nodes_ > budget_) return std::nullopt;
    if (idx == patterns_.size()) return t;
    const NestingPattern& p = patterns_[idx];
    if (is_compatible_tagging(t, p)) return search(idx + 1, t);
    const std::string x = p.x(), y = p.y();
    std::set<std::pair<char, char>> tried;
    for (char a : x) {
      for (auto it = y.rbegin(); it != y.rend(); ++it) {
        char b = *it;
        if (a == b || t.uses(a) || t.uses(b) || !tried.emplace(a, b).second) continue;
        Tagging next = t.with(a, b);
        if (!seeds_well_matched(next) || !covers_prefix(next, idx)) continue;
        if (auto found = search(idx + 1, next)) return found;
        if (nodes_ > budget_) return std::nullopt;
      }
    }
    return std::nullopt;
  }

  bool seeds_well_matched(const Tagging& t) const {
    return std::all_of(seeds_.begin(), seeds_.end(),
                       [&](const std::string& s) { return is_well_matched(apply_tagging(t, s)); });
  }

  // Patterns 0..idx are N_done plus the current one.
  bool covers_prefix(const Tagging& t, std::size_t idx) const {
    for (std::size_t i = 0; i <= idx; ++i) {
      if (!is_compatible_tagging(t, patterns_[i])) return false;
    }
    return true;
  }

  const std::vector<std::string>& seeds_;
  const std::vector<NestingPattern>& patterns_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
};

}  // namespace

TagInferenceResult tag_infer(MembershipOracle& o, const std::vector<std::string>& seeds,
                             const TagInferenceOptions& options) {
  for (const auto& s : seeds) {
    if (!o.query(s)) throw PreconditionError("seed rejected by the oracle: " + escape_bytes(s));
  }
  const auto& lim = options.nesting;
  if (lim.k_start < 2 || lim.k_cap < lim.k_start) throw DomainError("invalid pumping bound schedule");
  TagInferenceResult result;
  for (std::size_t K = lim.k_start; K <= lim.k_cap; ++K) {
    result.patterns = K == lim.k_start ? candidate_nesting(o, seeds, K, lim) : refine_nesting(o, result.patterns, K);
    result.K = K;
    TagSearch search(seeds, result.patterns, options.max_search_nodes);
    result.tagging = search.run();
    result.search_nodes += search.nodes();
    if (result.tagging) break;
  }
  return result;
}

}  // namespace vstar
