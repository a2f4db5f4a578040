#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "vstar/oracle.hpp"
#include "vstar/tagged.hpp"

namespace vstar {

enum class RuleForm : std::uint8_t { Empty, Linear, Matching };

/// One well-matched production: L -> ε | c L1 | <a L1 b> L2.
struct VpgRule {
  RuleForm form = RuleForm::Empty;
  TaggedSymbol lead{};   // plain symbol (Linear) or call symbol (Matching)
  TaggedSymbol trail{};  // return symbol (Matching)
  int inner = -1;        // L1 of a matching rule
  int next = -1;         // L1 of a linear rule, L2 of a matching rule

  static VpgRule empty() { return {}; }
  static VpgRule linear(TaggedSymbol c, int next) { return {RuleForm::Linear, c, {}, -1, next}; }
  static VpgRule matching(TaggedSymbol call, int inner, TaggedSymbol ret, int next) {
    return {RuleForm::Matching, call, ret, inner, next};
  }

  auto operator<=>(const VpgRule&) const = default;
};

/// Well-matched visibly pushdown grammar. Bracket pairs double as the lexicon
/// used to turn raw strings into tagged strings.
class Vpg {
 public:
  int add_nonterminal(std::string name);
  void add_rule(int nonterminal, VpgRule rule);
  void set_start(int nonterminal) { start_ = nonterminal; }
  /// Registers a bracket pair and returns its index (existing index if equal).
  std::size_t add_bracket(BracketPair pair);

  int start() const noexcept { return start_; }
  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(int nt) const { return names_.at(static_cast<std::size_t>(nt)); }
  int find(std::string_view name) const;
  const std::vector<VpgRule>& rules(int nt) const { return rules_.at(static_cast<std::size_t>(nt)); }
  const std::vector<BracketPair>& brackets() const noexcept { return brackets_; }
  std::size_t rule_count() const;

  /// Throws DomainError unless every reference is declared and symbols fit the form.
  void validate() const;

  /// Nonterminals deriving at least one finite string.
  std::vector<bool> productive() const;
  /// Copy without unproductive or unreachable nonterminals (start is kept).
  Vpg pruned() const;

  bool recognize(const TaggedString& s) const;

  /// Raw string -> tagged string: at each position the longest bracket literal
  /// wins; everything else is a plain character.
  TaggedString lex(std::string_view raw) const;
  /// Inverse of lex: bracket literals for calls/returns, nothing for artificial brackets.
  std::string render(const TaggedString& s) const;

  /// Text form: `Name -> alt | alt`, one rule per line.
  static Vpg parse(std::string_view text);
  std::string to_text() const;

  nlohmann::json to_json() const;
  static Vpg from_json(const nlohmann::json& j);

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<VpgRule>> rules_;
  std::vector<BracketPair> brackets_;
  int start_ = -1;
};

/// Random derivation sampling: uniform over productive rules until a path
/// reaches max_depth, then only rules of minimal derivation height.
std::vector<TaggedString> sample_vpg(const Vpg& g, std::size_t n, std::size_t max_depth, std::uint64_t seed);

/// Membership oracle backed by a reference grammar: lex, well-matchedness, recognize.
class VpgOracle final : public MembershipOracle {
 public:
  explicit VpgOracle(Vpg grammar);
  bool query(std::string_view s) override;
  const Vpg& grammar() const noexcept { return grammar_; }

 private:
  Vpg grammar_;
};

}  // namespace vstar
