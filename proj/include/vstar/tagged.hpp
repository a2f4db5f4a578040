#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace vstar {

/// Sorted, duplicate-free, non-empty set of characters (bytes).
class Alphabet {
 public:
  explicit Alphabet(std::string_view chars);

  /// Union of all characters occurring in `strings`; throws if that is empty.
  static Alphabet of_strings(const std::vector<std::string>& strings);

  bool contains(char c) const noexcept { return member_[static_cast<unsigned char>(c)]; }
  const std::string& chars() const noexcept { return chars_; }
  std::size_t size() const noexcept { return chars_.size(); }

  bool operator==(const Alphabet& other) const noexcept { return chars_ == other.chars_; }

 private:
  std::string chars_;
  std::array<bool, 256> member_{};
};

enum class SymbolKind : std::uint8_t { Plain, Call, Return };

/// One symbol of a tagged string. Calls and returns carry the index of the
/// bracket pair they belong to; artificial brackets (inserted by token
/// conversion) have no source character.
struct TaggedSymbol {
  SymbolKind kind = SymbolKind::Plain;
  std::uint16_t pair = 0;
  char ch = 0;
  bool artificial = false;

  static constexpr TaggedSymbol plain(char c) { return {SymbolKind::Plain, 0, c, false}; }

  bool is_plain() const noexcept { return kind == SymbolKind::Plain; }
  bool is_call() const noexcept { return kind == SymbolKind::Call; }
  bool is_return() const noexcept { return kind == SymbolKind::Return; }

  auto operator<=>(const TaggedSymbol&) const = default;
};

using TaggedString = std::vector<TaggedSymbol>;

struct TaggedStringHash {
  std::size_t operator()(const TaggedString& s) const noexcept;
};

TaggedString concat(const TaggedString& a, const TaggedString& b);
TaggedString concat(const TaggedString& a, const TaggedString& b, const TaggedString& c);

/// Drops artificial brackets and returns the source characters.
std::string untag(const TaggedString& s);

/// Debug rendering: calls as "<c", returns as "c>", artificial brackets as "<#i" / "#i>".
std::string to_display(const TaggedString& s);

/// Character-level call/return pairs obeying Unique Pairing: no character
/// occurs in two pairs or on both sides. Pair order defines pair indices.
class Tagging {
 public:
  Tagging() { call_index_.fill(-1); return_index_.fill(-1); }
  explicit Tagging(std::vector<std::pair<char, char>> pairs);

  const std::vector<std::pair<char, char>>& pairs() const noexcept { return pairs_; }
  std::size_t size() const noexcept { return pairs_.size(); }
  bool empty() const noexcept { return pairs_.empty(); }

  /// Pair index of `c` as a call (resp. return) character, or -1.
  int call_index(char c) const noexcept { return call_index_[static_cast<unsigned char>(c)]; }
  int return_index(char c) const noexcept { return return_index_[static_cast<unsigned char>(c)]; }
  bool uses(char c) const noexcept { return call_index(c) >= 0 || return_index(c) >= 0; }

  /// Returns a copy with one more pair; throws DomainError on a Unique Pairing conflict.
  Tagging with(char call, char ret) const;

  /// Throws DomainError if a tagged character is outside `alphabet`.
  void validate_against(const Alphabet& alphabet) const;

  bool operator==(const Tagging& other) const noexcept { return pairs_ == other.pairs_; }

 private:
  std::vector<std::pair<char, char>> pairs_;
  std::array<int, 256> call_index_{};
  std::array<int, 256> return_index_{};
};

nlohmann::json to_json(const Tagging& t);
Tagging tagging_from_json(const nlohmann::json& j);

TaggedString apply_tagging(const Tagging& t, std::string_view s);
/// Same as above but rejects characters outside `alphabet` with DomainError.
TaggedString apply_tagging(const Alphabet& alphabet, const Tagging& t, std::string_view s);

bool is_well_matched(const TaggedString& s);

struct UnmatchedProfile {
  std::vector<std::uint16_t> pending_calls;    // in order of occurrence
  std::vector<std::uint16_t> pending_returns;  // in order of occurrence

  bool empty() const noexcept { return pending_calls.empty() && pending_returns.empty(); }
};

/// Unmatched call and return pair indices. A return that cannot close the
/// innermost pending call counts as unmatched.
UnmatchedProfile unmatched_profile(const TaggedString& s);
UnmatchedProfile unmatched_profile(const TaggedString& s, std::size_t begin, std::size_t end);

/// Lexical form of one bracket pair of a learning alphabet or grammar.
/// Character-level pairs have one-character literals; artificial pairs have none.
struct BracketPair {
  std::string open;
  std::string close;
  bool artificial = false;

  bool operator==(const BracketPair&) const = default;
};

/// The symbols a learner works over: plain characters plus k bracket pairs.
struct TaggedAlphabet {
  std::string plain;  // sorted
  std::vector<BracketPair> pairs;

  std::size_t pair_count() const noexcept { return pairs.size(); }
  TaggedSymbol call(std::size_t i) const;
  TaggedSymbol ret(std::size_t i) const;
  /// Total number of distinct tagged symbols (plain + calls + returns).
  std::size_t symbol_count() const noexcept { return plain.size() + 2 * pairs.size(); }

  bool operator==(const TaggedAlphabet&) const = default;
};

nlohmann::json to_json(const TaggedAlphabet& a);
TaggedAlphabet tagged_alphabet_from_json(const nlohmann::json& j);

/// Learning alphabet for character mode: every character of `alphabet` not
/// used by `t` is plain; each pair of `t` becomes a bracket pair.
TaggedAlphabet make_tagged_alphabet(const Alphabet& alphabet, const Tagging& t);

}  // namespace vstar
