#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "vstar/lstar.hpp"
#include "vstar/nesting.hpp"
#include "vstar/oracle.hpp"
#include "vstar/tokenizer.hpp"

namespace vstar {

/// Occurrence of a candidate token: [begin, end) in the seed itself, or in
/// u·x²·z·y²·v when `pumped` is set.
struct TokenSpan {
  bool pumped = false;
  std::size_t begin = 0;
  std::size_t end = 0;

  bool operator==(const TokenSpan&) const = default;
};

/// Call-side candidates: spans inside x, then spans of x² that cross the
/// copy boundary. Longest first, leftmost first among equal lengths.
std::vector<TokenSpan> call_spans(const NestingPattern& p);
/// Return-side candidates from y and y², longest first, rightmost first.
std::vector<TokenSpan> return_spans(const NestingPattern& p);

struct TokenLearnOptions {
  LstarBudget lstar;
  std::size_t max_teacher_tests = 10000;
};

/// Lexical rule for the token at `span`: L* over λw. w starts and ends like
/// the span and χ(context around the span with w in its place), with
/// equivalence simulated by prefix·suffix combinations of the fragment (x, x²,
/// y or y²) holding the span. nullopt if L* does not converge, the language
/// is empty or misses the span itself.
std::optional<Dfa> learn_token(MembershipOracle& o, const NestingPattern& p, const TokenSpan& span, bool call_side,
                               const std::string& alphabet, const TokenLearnOptions& options = {});

/// Both lexical rules; nullopt if either fails or the two languages overlap.
std::optional<TokenPair> learn_token_pair(MembershipOracle& o, const NestingPattern& p, const TokenSpan& call,
                                          const TokenSpan& ret, const std::string& alphabet,
                                          const TokenLearnOptions& options = {});

/// Some pair i has an unmatched ◁_i in conv(x) and an unmatched ▷_i in
/// conv(y), both read within conv(seed); failing that, the same holds for x²
/// and y² within conv(u·x²·z·y²·v). Tokenization probes use `o`.
bool is_compatible_tokenizer(const PartialTokenizer& d, const NestingPattern& p, MembershipOracle& o);

struct TokenInferenceOptions {
  NestingLimits nesting;
  TokenLearnOptions learn;
  std::size_t k_rep = 2;
  std::size_t max_search_nodes = 100000;  // per bound K
};

struct TokenInferenceResult {
  std::optional<PartialTokenizer> tokenizer;
  std::vector<NestingPattern> patterns;
  std::size_t K = 0;
  std::size_t search_nodes = 0;
  std::size_t lstar_runs = 0;
  /// Assumption checks that failed on the seeds and the learned tokenizer.
  std::vector<std::string> warnings;
};

/// Backtracking search for a partial tokenizer compatible with the seeds.
/// A candidate is also dropped when, on some seed, a token look-alike hidden
/// inside an emitted token is not k-repeatable. Throws PreconditionError if the oracle rejects a seed.
TokenInferenceResult token_infer(MembershipOracle& o, const std::vector<std::string>& seeds,
                                 const TokenInferenceOptions& options = {});

/// Separation, Exclusivity, Tokenization Consistency and k-Repetition spot
/// checks. Each violation yields one message.
std::vector<std::string> validate_token_assumptions(const PartialTokenizer& d, const std::vector<std::string>& seeds,
                                                    MembershipOracle& o);

}  // namespace vstar
