#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace vstar {

/// Complete DFA over a sorted character set; state 0 is initial. Characters
/// outside the set lead to rejection.
struct Dfa {
  std::string alphabet;
  std::vector<std::vector<int>> trans;  // [state][symbol index]
  std::vector<bool> accepting;

  std::size_t size() const noexcept { return trans.size(); }
  int symbol_index(char c) const;
  /// -1 when c is outside the alphabet.
  int step(int state, char c) const;
  bool accepts(std::string_view s) const;

  /// Longest prefix of s[pos..] in the language; its length, or nullopt if none (ε excluded).
  std::optional<std::size_t> longest_match(std::string_view s, std::size_t pos) const;

  bool language_empty() const;
  /// Shortest accepted word, ties broken lexicographically.
  std::optional<std::string> shortest_word() const;
  /// Accepted words of length <= max_len, length-then-lexicographic, at most `limit`.
  std::vector<std::string> words_up_to(std::size_t max_len, std::size_t limit) const;

  void validate() const;
  nlohmann::json to_json() const;
  static Dfa from_json(const nlohmann::json& j);
};

/// Shortest word accepted by both (over the union of alphabets), if any.
std::optional<std::string> intersection_witness(const Dfa& a, const Dfa& b);

}  // namespace vstar
