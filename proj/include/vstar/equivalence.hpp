#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vstar/interpretation.hpp"
#include "vstar/oracle.hpp"
#include "vstar/sevpa.hpp"

namespace vstar {

struct Counterexample {
  std::string raw;
  TaggedString tagged;
  bool verdict_oracle = false;
  bool verdict_hypothesis = false;
};

class EquivalenceStrategy {
 public:
  virtual ~EquivalenceStrategy() = default;
  virtual std::optional<Counterexample> find_counterexample(const Sevpa& hypothesis) = 0;
};

/// Hypothesis verdict on a raw string: its image must exist, be well-matched
/// and be accepted.
bool hypothesis_accepts(const Sevpa& m, Interpretation& interp, std::string_view raw);

/// Exhaustive comparison against a reference oracle over all raw strings up
/// to max_len, in length-then-lexicographic order. Reference queries are not
/// meant to be counted, so pass an uncached oracle.
class PerfectTeacher final : public EquivalenceStrategy {
 public:
  PerfectTeacher(MembershipOracle& reference, Interpretation& interp, std::size_t max_len);
  std::optional<Counterexample> find_counterexample(const Sevpa& hypothesis) override;

  /// Disagreements whose image is not well-matched (no learner word can express them).
  std::size_t unrepresentable() const noexcept { return unrepresentable_; }

 private:
  MembershipOracle& reference_;
  Interpretation& interp_;
  std::size_t max_len_;
  std::size_t unrepresentable_ = 0;
};

struct CorpusLimits {
  std::size_t max_fragment = 20;
  std::size_t max_corpus = 100000;
  std::size_t infixes = 1;  // 0..2 infixes between prefix and suffix
  std::size_t max_candidates = 2000000;
};

struct TestCorpus {
  std::vector<std::string> strings;  // length-then-lexicographic
  std::vector<TaggedString> images;
  std::vector<bool> from_seed;
  std::size_t candidates_examined = 0;

  std::size_t size() const noexcept { return strings.size(); }
};

/// Seeds plus u·x·v combinations of seed prefixes, infixes and suffixes whose
/// images are well-matched.
TestCorpus build_corpus(const std::vector<std::string>& seeds, Interpretation& interp, const CorpusLimits& limits);

class SeedCombinationTeacher final : public EquivalenceStrategy {
 public:
  SeedCombinationTeacher(TestCorpus corpus, MembershipOracle& oracle);
  std::optional<Counterexample> find_counterexample(const Sevpa& hypothesis) override;
  const TestCorpus& corpus() const noexcept { return corpus_; }

 private:
  TestCorpus corpus_;
  MembershipOracle& oracle_;
};

struct HypothesisSampling {
  std::size_t samples = 200;  // words drawn per round; 0 disables the check
  std::size_t max_depth = 6;
  std::uint64_t seed = 1;
};

/// Asks `inner` first. When it finds nothing, draws words from the
/// hypothesis grammar and reports the shortest one `member` rejects. Catches
/// over-acceptance the inner strategy cannot reach, e.g. token-mode words that
/// no string tokenizes to.
class HypothesisSamplingTeacher final : public EquivalenceStrategy {
 public:
  HypothesisSamplingTeacher(EquivalenceStrategy& inner, std::function<bool(const TaggedString&)> member,
                            HypothesisSampling options);
  std::optional<Counterexample> find_counterexample(const Sevpa& hypothesis) override;

 private:
  EquivalenceStrategy& inner_;
  std::function<bool(const TaggedString&)> member_;
  HypothesisSampling options_;
  std::uint64_t round_ = 0;
};

}  // namespace vstar
