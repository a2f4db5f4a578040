#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "vstar/equivalence.hpp"
#include "vstar/interpretation.hpp"
#include "vstar/oracle.hpp"
#include "vstar/sevpa.hpp"

namespace vstar {

/// χ̂ over learner words: false for non-well-matched or non-canonical words,
/// otherwise the oracle's verdict on the source string. Memoized; `queries`
/// counts distinct words whose verdict needed the oracle.
class TaggedMembership {
 public:
  TaggedMembership(MembershipOracle& oracle, Interpretation& interp) : oracle_(oracle), interp_(interp) {}

  bool query(const TaggedString& word);
  std::size_t queries() const noexcept { return queries_; }
  Interpretation& interpretation() noexcept { return interp_; }

 private:
  MembershipOracle& oracle_;
  Interpretation& interp_;
  std::unordered_map<TaggedString, bool, TaggedStringHash> memo_;
  std::size_t queries_ = 0;
};

/// Test word of a module: the access word is placed between prefix and suffix.
/// Module 0 tests have an empty prefix; module j+1 tests have prefixes ending
/// with the call symbol of pair j.
struct TestContext {
  TaggedString prefix;
  TaggedString suffix;

  bool operator==(const TestContext&) const = default;
};

struct ModuleTable {
  std::vector<TaggedString> access;
  std::vector<TestContext> tests;
};

class ObservationStructure {
 public:
  /// Q_i = {ε}, C_0 = {(ε, ε)}, C_{j+1} = {(⟨a_j, b⟩) | every return b}.
  ObservationStructure(TaggedMembership& member, TaggedAlphabet alphabet);

  std::size_t k() const noexcept { return alphabet_.pair_count(); }
  const TaggedAlphabet& alphabet() const noexcept { return alphabet_; }
  const std::vector<ModuleTable>& modules() const noexcept { return modules_; }
  std::size_t access_count() const;
  /// Macro-symbols used for closedness: plain symbols, then nested words ⟨a_j q b_j⟩.
  const std::vector<TaggedString>& sigma_m() const noexcept { return sigma_; }

  std::vector<bool> row(std::size_t module, const TaggedString& word);
  bool c_equivalent(std::size_t module, const TaggedString& q1, const TaggedString& q2);

  /// Worklist closure; afterwards every extension q·m matches some access row.
  void close();
  Sevpa construct();
  /// Adds one access word and one test; returns the queries spent locating the
  /// breakpoint (the counterexample itself plus the binary search).
  std::size_t process_counterexample(const Sevpa& hypothesis, const TaggedString& ce);

  bool separable();
  bool closed();

 private:
  struct ModuleIndex {
    std::map<std::vector<bool>, std::size_t> by_row;
    bool valid = false;
  };

  void add_access(std::size_t module, TaggedString word);
  void add_test(std::size_t module, TestContext test);
  std::optional<std::size_t> lookup(std::size_t module, const TaggedString& word);
  ModuleIndex& index(std::size_t module);
  TaggedString nested(std::size_t pair, const TaggedString& inner) const;

  TaggedMembership& member_;
  TaggedAlphabet alphabet_;
  std::vector<ModuleTable> modules_;
  std::vector<TaggedString> sigma_;
  std::vector<std::unordered_map<TaggedString, std::vector<bool>, TaggedStringHash>> row_cache_;
  std::vector<ModuleIndex> index_;
  // Global state id -> (module, access index) for the last constructed hypothesis.
  std::vector<std::pair<std::size_t, std::size_t>> state_words_;
};

struct LearnOptions {
  std::size_t max_rounds = 500;
  std::size_t max_states = 2000;
  /// Re-check separability and closedness after every step (tests).
  bool audit = false;
};

struct RoundRecord {
  std::size_t round = 0;
  std::vector<std::size_t> access_sizes;
  std::vector<std::size_t> test_sizes;
  std::size_t unique_queries = 0;
  std::optional<std::string> counterexample;
  std::size_t counterexample_length = 0;  // in learner symbols
  std::size_t counterexample_queries = 0;
};

struct LearnResult {
  Sevpa machine;
  bool converged = false;
  std::size_t rounds = 0;
  std::size_t learner_queries = 0;
  std::size_t max_counterexample_length = 0;
  std::vector<RoundRecord> trace;
};

LearnResult learn(TaggedMembership& member, EquivalenceStrategy& eq, const LearnOptions& options = {});

nlohmann::json to_json(const RoundRecord& r);
std::string trace_jsonl(const std::vector<RoundRecord>& trace);

}  // namespace vstar
