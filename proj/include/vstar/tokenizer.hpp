#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "vstar/dfa.hpp"
#include "vstar/oracle.hpp"
#include "vstar/tagged.hpp"

namespace vstar {

struct TokenPair {
  Dfa call;
  Dfa ret;
};

/// Call/return token recognizers only; plain tokens are left to the automaton.
/// Pair i owns the artificial bracket symbols (◁_i, ▷_i).
struct PartialTokenizer {
  std::vector<TokenPair> pairs;
  std::size_t k_rep = 2;

  std::size_t size() const noexcept { return pairs.size(); }
  bool empty() const noexcept { return pairs.empty(); }

  nlohmann::json to_json() const;
  static PartialTokenizer from_json(const nlohmann::json& j);
};

enum class TokenSide { Call, Return };

struct TokenMatch {
  std::size_t pair = 0;
  TokenSide side = TokenSide::Call;
  std::size_t start = 0;  // 1-based, inclusive
  std::size_t end = 0;    // 1-based, inclusive

  bool operator==(const TokenMatch&) const = default;
};

/// Surrounding text used when probing k-repeatability.
struct ProbeContext {
  std::string prefix;
  std::string suffix;
};

/// Left-to-right scan: at each position the first match (pair order, call
/// side before return side, longest lexeme per recognizer) is emitted unless
/// repeating it k_rep times in place keeps the string in the language.
std::vector<TokenMatch> tokenize(const PartialTokenizer& d, std::string_view s, MembershipOracle& oracle,
                                 const ProbeContext& ctx = {});

/// Inserts ◁_i before each call match and ▷_i after each return match.
TaggedString conv(std::string_view s, const std::vector<TokenMatch>& matches);

/// Removes artificial brackets. Plain symbols only are expected otherwise.
std::string erase_brackets(const TaggedString& s);

/// Learning alphabet for token mode: the given characters as plain symbols and
/// one artificial pair per token pair.
TaggedAlphabet make_token_alphabet(const std::string& plain_chars, const PartialTokenizer& d);

}  // namespace vstar
