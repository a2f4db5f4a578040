#include "vstar/vpg.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <unordered_map>

#include "vstar/error.hpp"
#include "vstar/text.hpp"

namespace vstar {

namespace {

TaggedSymbol bracket_symbol(const std::vector<BracketPair>& brackets, std::size_t pair, SymbolKind kind) {
  const auto& b = brackets.at(pair);
  const std::string& lit = kind == SymbolKind::Call ? b.open : b.close;
  return {kind, static_cast<std::uint16_t>(pair), b.artificial ? '\0' : lit.at(0), b.artificial};
}

std::string quote(std::string_view raw) {
  std::string out = "'";
  for (char c : escape_bytes(raw)) {
    if (c == '\'') out += '\\';
    out += c;
  }
  return out + "'";
}

}  // namespace

int Vpg::add_nonterminal(std::string name) {
  if (find(name) >= 0) throw DomainError("duplicate nonterminal " + name);
  names_.push_back(std::move(name));
  rules_.emplace_back();
  return static_cast<int>(names_.size() - 1);
}

void Vpg::add_rule(int nonterminal, VpgRule rule) {
  auto& list = rules_.at(static_cast<std::size_t>(nonterminal));
  if (std::find(list.begin(), list.end(), rule) == list.end()) list.push_back(rule);
}

std::size_t Vpg::add_bracket(BracketPair pair) {
  if (!pair.artificial) {
    if (pair.open.empty() || pair.close.empty()) throw DomainError("bracket literals must be non-empty");
    for (std::size_t i = 0; i < brackets_.size(); ++i) {
      if (brackets_[i] == pair) return i;
    }
  }
  brackets_.push_back(std::move(pair));
  return brackets_.size() - 1;
}

int Vpg::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<int>(i);
  }
  return -1;
}

std::size_t Vpg::rule_count() const {
  std::size_t n = 0;
  for (const auto& r : rules_) n += r.size();
  return n;
}

void Vpg::validate() const {
  auto valid_nt = [&](int nt) { return nt >= 0 && static_cast<std::size_t>(nt) < names_.size(); };
  if (!valid_nt(start_)) throw DomainError("grammar has no start nonterminal");
  for (std::size_t a = 0; a < brackets_.size(); ++a) {
    for (std::size_t b = a + 1; b < brackets_.size(); ++b) {
      if (brackets_[a].artificial || brackets_[b].artificial) continue;
      const auto& x = brackets_[a];
      const auto& y = brackets_[b];
      if (x.open == y.open || x.open == y.close || x.close == y.open || x.close == y.close) {
        throw DomainError("bracket literals must be unique across pairs");
      }
    }
    if (!brackets_[a].artificial && brackets_[a].open == brackets_[a].close) {
      throw DomainError("call and return literal of a pair must differ");
    }
  }
  for (std::size_t nt = 0; nt < rules_.size(); ++nt) {
    for (const auto& r : rules_[nt]) {
      switch (r.form) {
        case RuleForm::Empty: break;
        case RuleForm::Linear:
          if (!r.lead.is_plain() || r.lead.artificial || !valid_nt(r.next)) {
            throw DomainError("malformed linear rule in " + names_[nt]);
          }
          break;
        case RuleForm::Matching:
          if (!r.lead.is_call() || !r.trail.is_return() || r.lead.pair != r.trail.pair ||
              r.lead.pair >= brackets_.size() || !valid_nt(r.inner) || !valid_nt(r.next)) {
            throw DomainError("malformed matching rule in " + names_[nt]);
          }
          break;
      }
    }
  }
}

std::vector<bool> Vpg::productive() const {
  std::vector<bool> prod(names_.size(), false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t nt = 0; nt < rules_.size(); ++nt) {
      if (prod[nt]) continue;
      for (const auto& r : rules_[nt]) {
        bool ok = r.form == RuleForm::Empty || (r.form == RuleForm::Linear && prod[static_cast<std::size_t>(r.next)]) ||
                  (r.form == RuleForm::Matching && prod[static_cast<std::size_t>(r.inner)] &&
                   prod[static_cast<std::size_t>(r.next)]);
        if (ok) {
          prod[nt] = true;
          changed = true;
          break;
        }
      }
    }
  }
  return prod;
}

Vpg Vpg::pruned() const {
  auto prod = productive();
  auto rule_ok = [&](const VpgRule& r) {
    if (r.form == RuleForm::Empty) return true;
    if (r.form == RuleForm::Linear) return static_cast<bool>(prod[static_cast<std::size_t>(r.next)]);
    return prod[static_cast<std::size_t>(r.inner)] && prod[static_cast<std::size_t>(r.next)];
  };
  std::vector<bool> reach(names_.size(), false);
  std::vector<int> work;
  if (start_ >= 0) {
    reach[static_cast<std::size_t>(start_)] = true;
    work.push_back(start_);
  }
  while (!work.empty()) {
    int nt = work.back();
    work.pop_back();
    for (const auto& r : rules_[static_cast<std::size_t>(nt)]) {
      if (!rule_ok(r)) continue;
      for (int target : {r.inner, r.next}) {
        if (target >= 0 && !reach[static_cast<std::size_t>(target)]) {
          reach[static_cast<std::size_t>(target)] = true;
          work.push_back(target);
        }
      }
    }
  }
  Vpg out;
  out.brackets_ = brackets_;
  std::vector<int> remap(names_.size(), -1);
  for (std::size_t nt = 0; nt < names_.size(); ++nt) {
    if (reach[nt] && (prod[nt] || static_cast<int>(nt) == start_)) remap[nt] = out.add_nonterminal(names_[nt]);
  }
  for (std::size_t nt = 0; nt < names_.size(); ++nt) {
    if (remap[nt] < 0) continue;
    for (const auto& r : rules_[nt]) {
      if (!rule_ok(r)) continue;
      VpgRule copy = r;
      if (copy.inner >= 0) copy.inner = remap[static_cast<std::size_t>(copy.inner)];
      if (copy.next >= 0) copy.next = remap[static_cast<std::size_t>(copy.next)];
      out.add_rule(remap[nt], copy);
    }
  }
  out.start_ = start_ >= 0 ? remap[static_cast<std::size_t>(start_)] : -1;
  return out;
}

bool Vpg::recognize(const TaggedString& s) const {
  if (start_ < 0) throw DomainError("grammar has no start nonterminal");
  if (!is_well_matched(s)) return false;
  // A level set holds (entry, current) pairs: the derivation of the enclosing
  // matching rule's inner nonterminal `entry` has reached nonterminal `current`.
  using Level = std::vector<std::uint64_t>;
  auto pack = [](int entry, int current) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(entry)) << 32) | static_cast<std::uint32_t>(current);
  };
  auto entry_of = [](std::uint64_t p) { return static_cast<int>(p >> 32); };
  auto current_of = [](std::uint64_t p) { return static_cast<int>(p & 0xffffffffu); };
  auto normalize = [](Level& l) {
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
  };
  auto nullable = [&](int nt) {
    for (const auto& r : rules_[static_cast<std::size_t>(nt)]) {
      if (r.form == RuleForm::Empty) return true;
    }
    return false;
  };

  Level cur{pack(start_, start_)};
  std::vector<Level> stack;
  for (const auto& sym : s) {
    Level next;
    if (sym.is_plain()) {
      for (auto p : cur) {
        for (const auto& r : rules_[static_cast<std::size_t>(current_of(p))]) {
          if (r.form == RuleForm::Linear && r.lead.ch == sym.ch && !sym.artificial) {
            next.push_back(pack(entry_of(p), r.next));
          }
        }
      }
    } else if (sym.is_call()) {
      for (auto p : cur) {
        for (const auto& r : rules_[static_cast<std::size_t>(current_of(p))]) {
          if (r.form == RuleForm::Matching && r.lead.pair == sym.pair) next.push_back(pack(r.inner, r.inner));
        }
      }
      stack.push_back(std::move(cur));
    } else {
      Level outer = std::move(stack.back());
      stack.pop_back();
      std::vector<int> finished;
      for (auto p : cur) {
        if (nullable(current_of(p))) finished.push_back(entry_of(p));
      }
      std::sort(finished.begin(), finished.end());
      for (auto p : outer) {
        for (const auto& r : rules_[static_cast<std::size_t>(current_of(p))]) {
          if (r.form == RuleForm::Matching && r.trail.pair == sym.pair &&
              std::binary_search(finished.begin(), finished.end(), r.inner)) {
            next.push_back(pack(entry_of(p), r.next));
          }
        }
      }
    }
    normalize(next);
    cur = std::move(next);
    if (cur.empty()) return false;
  }
  for (auto p : cur) {
    if (entry_of(p) == start_ && nullable(current_of(p))) return true;
  }
  return false;
}

TaggedString Vpg::lex(std::string_view raw) const {
  TaggedString out;
  std::size_t i = 0;
  while (i < raw.size()) {
    std::size_t best_len = 0;
    TaggedSymbol best{};
    for (std::size_t p = 0; p < brackets_.size(); ++p) {
      const auto& b = brackets_[p];
      if (b.artificial) continue;
      if (b.open.size() > best_len && raw.substr(i, b.open.size()) == b.open) {
        best_len = b.open.size();
        best = bracket_symbol(brackets_, p, SymbolKind::Call);
      }
      if (b.close.size() > best_len && raw.substr(i, b.close.size()) == b.close) {
        best_len = b.close.size();
        best = bracket_symbol(brackets_, p, SymbolKind::Return);
      }
    }
    if (best_len == 0) {
      out.push_back(TaggedSymbol::plain(raw[i]));
      ++i;
    } else {
      out.push_back(best);
      i += best_len;
    }
  }
  return out;
}

std::string Vpg::render(const TaggedString& s) const {
  std::string out;
  for (const auto& sym : s) {
    if (sym.artificial) continue;
    if (sym.is_plain()) {
      out += sym.ch;
    } else {
      const auto& b = brackets_.at(sym.pair);
      out += sym.is_call() ? b.open : b.close;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text format

namespace {

enum class TokKind { Ident, Arrow, Bar, Less, Greater, Dollar, Quoted, Class, End };

struct Tok {
  TokKind kind;
  std::string text;  // identifier, unescaped literal, class member set
  std::size_t number = 0;
  int line = 0;
};

[[noreturn]] void syntax_error(int line, const std::string& what) {
  throw DomainError("grammar line " + std::to_string(line) + ": " + what);
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '#'; }

char read_escaped(std::string_view text, std::size_t& i, int line) {
  if (text[i] != '\\') return text[i++];
  std::size_t start = i;
  if (i + 1 >= text.size()) syntax_error(line, "dangling backslash");
  std::size_t len = text[i + 1] == 'x' ? 4 : 2;
  if (start + len > text.size()) syntax_error(line, "truncated escape");
  std::string decoded = unescape_bytes(text.substr(start, len));
  i += len;
  return decoded.at(0);
}

std::vector<Tok> lex_grammar(std::string_view text) {
  std::vector<Tok> toks;
  int line = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      toks.push_back({TokKind::Arrow, "->", 0, line});
      i += 2;
    } else if (c == '|') {
      toks.push_back({TokKind::Bar, "|", 0, line});
      ++i;
    } else if (c == '<') {
      toks.push_back({TokKind::Less, "<", 0, line});
      ++i;
    } else if (c == '>') {
      toks.push_back({TokKind::Greater, ">", 0, line});
      ++i;
    } else if (c == '$') {
      std::size_t j = i + 1;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j == i + 1) syntax_error(line, "expected digits after $");
      toks.push_back({TokKind::Dollar, std::string(text.substr(i, j - i)), std::stoul(std::string(text.substr(i + 1, j - i - 1))), line});
      i = j;
    } else if (c == '\'') {
      std::string lit;
      ++i;
      while (i < text.size() && text[i] != '\'') {
        if (text[i] == '\n') syntax_error(line, "unterminated literal");
        lit += read_escaped(text, i, line);
      }
      if (i >= text.size()) syntax_error(line, "unterminated literal");
      ++i;
      if (lit.empty()) syntax_error(line, "empty literal");
      toks.push_back({TokKind::Quoted, lit, 0, line});
    } else if (c == '[') {
      std::string members;
      ++i;
      while (i < text.size() && text[i] != ']') {
        if (text[i] == '\n') syntax_error(line, "unterminated character class");
        char lo = read_escaped(text, i, line);
        if (i + 1 < text.size() && text[i] == '-' && text[i + 1] != ']') {
          ++i;
          char hi = read_escaped(text, i, line);
          if (static_cast<unsigned char>(hi) < static_cast<unsigned char>(lo)) syntax_error(line, "empty range");
          for (int b = static_cast<unsigned char>(lo); b <= static_cast<unsigned char>(hi); ++b) {
            members += static_cast<char>(b);
          }
        } else {
          members += lo;
        }
      }
      if (i >= text.size()) syntax_error(line, "unterminated character class");
      ++i;
      std::sort(members.begin(), members.end(),
                [](char a, char b) { return static_cast<unsigned char>(a) < static_cast<unsigned char>(b); });
      members.erase(std::unique(members.begin(), members.end()), members.end());
      if (members.empty()) syntax_error(line, "empty character class");
      toks.push_back({TokKind::Class, members, 0, line});
    } else if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      toks.push_back({TokKind::Ident, std::string(text.substr(i, j - i)), 0, line});
      i = j;
    } else {
      syntax_error(line, std::string("unexpected character '") + escape_bytes(std::string(1, c)) + "'");
    }
  }
  toks.push_back({TokKind::End, "", 0, line});
  return toks;
}

struct Unit {
  bool bracket = false;
  std::string chars;  // plain alternatives
  std::size_t pair = 0;
  int inner = -1;
};

class GrammarParser {
 public:
  explicit GrammarParser(std::string_view text) : toks_(lex_grammar(text)) {}

  Vpg run() {
    for (std::size_t i = 0; i + 1 < toks_.size(); ++i) {
      if (toks_[i].kind == TokKind::Ident && toks_[i + 1].kind == TokKind::Arrow) {
        if (g_.find(toks_[i].text) >= 0) syntax_error(toks_[i].line, "nonterminal " + toks_[i].text + " defined twice");
        g_.add_nonterminal(toks_[i].text);
      }
    }
    if (g_.size() == 0) throw DomainError("grammar has no rules");
    g_.set_start(0);
    while (peek().kind != TokKind::End) parse_rule();
    g_.validate();
    return g_;
  }

 private:
  const Tok& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  const Tok& take() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

  bool at_rule_end() const {
    const Tok& t = peek();
    return t.kind == TokKind::End || t.kind == TokKind::Bar ||
           (t.kind == TokKind::Ident && peek(1).kind == TokKind::Arrow);
  }

  int lookup(const Tok& t) {
    int nt = g_.find(t.text);
    if (nt < 0) syntax_error(t.line, "undefined nonterminal " + t.text);
    return nt;
  }

  int epsilon_nonterminal() {
    if (eps_ < 0) {
      eps_ = g_.add_nonterminal("Eps#");
      g_.add_rule(eps_, VpgRule::empty());
    }
    return eps_;
  }

  int fresh(int owner) {
    std::string base = g_.name(owner);
    int& counter = fresh_counter_[owner];
    std::string name;
    do {
      name = base + "#" + std::to_string(++counter);
    } while (g_.find(name) >= 0);
    return g_.add_nonterminal(name);
  }

  std::size_t bracket_for(const Tok& open, const Tok& close) {
    if (open.kind != close.kind) syntax_error(open.line, "mixed artificial and literal bracket");
    if (open.kind == TokKind::Dollar) {
      if (open.number != close.number) syntax_error(open.line, "artificial bracket indices differ");
      while (g_.brackets().size() <= open.number) g_.add_bracket({"", "", true});
      if (!g_.brackets()[open.number].artificial) syntax_error(open.line, "pair index already used by a literal pair");
      return open.number;
    }
    return g_.add_bracket({open.text, close.text, false});
  }

  void parse_rule() {
    const Tok& head = take();
    if (head.kind != TokKind::Ident || take().kind != TokKind::Arrow) syntax_error(head.line, "expected `Name ->`");
    int lhs = lookup(head);
    while (true) {
      parse_alternative(lhs, head.line);
      if (peek().kind == TokKind::Bar) {
        take();
        continue;
      }
      break;
    }
  }

  void parse_alternative(int lhs, int line) {
    std::vector<Unit> units;
    int tail = -1;
    bool saw_eps = false;
    while (!at_rule_end()) {
      const Tok& t = take();
      if (tail >= 0 || saw_eps) syntax_error(t.line, "nothing may follow a trailing nonterminal or eps");
      switch (t.kind) {
        case TokKind::Quoted:
          for (char c : t.text) units.push_back({false, std::string(1, c), 0, -1});
          break;
        case TokKind::Class:
          units.push_back({false, t.text, 0, -1});
          break;
        case TokKind::Less: {
          const Tok& open = take();
          if (open.kind != TokKind::Quoted && open.kind != TokKind::Dollar) syntax_error(open.line, "expected bracket literal");
          int inner = -1;
          if (peek().kind == TokKind::Ident) inner = lookup(take());
          const Tok& close = take();
          if (close.kind != TokKind::Quoted && close.kind != TokKind::Dollar) syntax_error(close.line, "expected bracket literal");
          if (take().kind != TokKind::Greater) syntax_error(close.line, "expected `>`");
          std::size_t pair = bracket_for(open, close);
          units.push_back({true, "", pair, inner < 0 ? epsilon_nonterminal() : inner});
          break;
        }
        case TokKind::Ident:
          if (t.text == "eps") {
            if (!units.empty()) syntax_error(t.line, "eps must stand alone");
            saw_eps = true;
          } else {
            tail = lookup(t);
          }
          break;
        default:
          syntax_error(t.line, "unexpected token " + t.text);
      }
    }
    if (units.empty()) {
      if (tail >= 0) syntax_error(line, "unit rules are not well-matched productions");
      g_.add_rule(lhs, VpgRule::empty());
      return;
    }
    int current = tail >= 0 ? tail : epsilon_nonterminal();
    for (std::size_t i = units.size(); i-- > 1;) {
      int x = fresh(lhs);
      emit(x, units[i], current);
      current = x;
    }
    emit(lhs, units[0], current);
  }

  void emit(int owner, const Unit& u, int next) {
    if (u.bracket) {
      const auto& b = g_.brackets();
      g_.add_rule(owner, VpgRule::matching(bracket_symbol(b, u.pair, SymbolKind::Call), u.inner,
                                           bracket_symbol(b, u.pair, SymbolKind::Return), next));
    } else {
      for (char c : u.chars) g_.add_rule(owner, VpgRule::linear(TaggedSymbol::plain(c), next));
    }
  }

  std::vector<Tok> toks_;
  std::size_t pos_ = 0;
  Vpg g_;
  int eps_ = -1;
  std::map<int, int> fresh_counter_;
};

}  // namespace

Vpg Vpg::parse(std::string_view text) { return GrammarParser(text).run(); }

std::string Vpg::to_text() const {
  std::string out;
  auto bracket_lit = [&](std::size_t pair, bool open) {
    const auto& b = brackets_.at(pair);
    if (b.artificial) return "$" + std::to_string(pair);
    return quote(open ? b.open : b.close);
  };
  std::vector<int> order;
  if (start_ >= 0) order.push_back(start_);
  for (int nt = 0; nt < static_cast<int>(names_.size()); ++nt) {
    if (nt != start_) order.push_back(nt);
  }
  for (int nt : order) {
    const auto& list = rules_[static_cast<std::size_t>(nt)];
    if (list.empty()) continue;
    out += names_[static_cast<std::size_t>(nt)] + " ->";
    for (std::size_t i = 0; i < list.size(); ++i) {
      const auto& r = list[i];
      out += i == 0 ? " " : " | ";
      switch (r.form) {
        case RuleForm::Empty: out += "eps"; break;
        case RuleForm::Linear: out += quote(std::string(1, r.lead.ch)) + " " + names_[static_cast<std::size_t>(r.next)]; break;
        case RuleForm::Matching:
          out += "<" + bracket_lit(r.lead.pair, true) + " " + names_[static_cast<std::size_t>(r.inner)] + " " +
                 bracket_lit(r.lead.pair, false) + "> " + names_[static_cast<std::size_t>(r.next)];
          break;
      }
    }
    out += '\n';
  }
  return out;
}

nlohmann::json Vpg::to_json() const {
  nlohmann::json brackets = nlohmann::json::array();
  for (const auto& b : brackets_) {
    if (b.artificial) {
      brackets.push_back({{"artificial", true}});
    } else {
      brackets.push_back({{"call", escape_bytes(b.open)}, {"return", escape_bytes(b.close)}});
    }
  }
  nlohmann::json nts = nlohmann::json::array();
  for (std::size_t nt = 0; nt < names_.size(); ++nt) {
    nlohmann::json rules = nlohmann::json::array();
    for (const auto& r : rules_[nt]) {
      switch (r.form) {
        case RuleForm::Empty: rules.push_back({{"form", "empty"}}); break;
        case RuleForm::Linear:
          rules.push_back({{"form", "linear"}, {"symbol", escape_bytes(std::string(1, r.lead.ch))},
                           {"next", names_[static_cast<std::size_t>(r.next)]}});
          break;
        case RuleForm::Matching:
          rules.push_back({{"form", "matching"}, {"pair", r.lead.pair},
                           {"inner", names_[static_cast<std::size_t>(r.inner)]},
                           {"next", names_[static_cast<std::size_t>(r.next)]}});
          break;
      }
    }
    nts.push_back({{"name", names_[nt]}, {"rules", rules}});
  }
  return {{"start", start_ >= 0 ? names_[static_cast<std::size_t>(start_)] : ""},
          {"brackets", brackets},
          {"nonterminals", nts}};
}

Vpg Vpg::from_json(const nlohmann::json& j) {
  Vpg g;
  for (const auto& b : j.at("brackets")) {
    if (b.value("artificial", false)) {
      g.brackets_.push_back({"", "", true});
    } else {
      g.brackets_.push_back({unescape_bytes(b.at("call").get<std::string>()),
                             unescape_bytes(b.at("return").get<std::string>()), false});
    }
  }
  for (const auto& nt : j.at("nonterminals")) g.add_nonterminal(nt.at("name").get<std::string>());
  auto resolve = [&](const nlohmann::json& name) {
    int nt = g.find(name.get<std::string>());
    if (nt < 0) throw DomainError("undefined nonterminal " + name.get<std::string>());
    return nt;
  };
  int index = 0;
  for (const auto& nt : j.at("nonterminals")) {
    for (const auto& r : nt.at("rules")) {
      std::string form = r.at("form").get<std::string>();
      if (form == "empty") {
        g.add_rule(index, VpgRule::empty());
      } else if (form == "linear") {
        std::string sym = unescape_bytes(r.at("symbol").get<std::string>());
        if (sym.size() != 1) throw DomainError("linear rule symbol must be one character");
        g.add_rule(index, VpgRule::linear(TaggedSymbol::plain(sym[0]), resolve(r.at("next"))));
      } else if (form == "matching") {
        auto pair = r.at("pair").get<std::size_t>();
        if (pair >= g.brackets_.size()) throw DomainError("matching rule refers to unknown pair");
        g.add_rule(index, VpgRule::matching(bracket_symbol(g.brackets_, pair, SymbolKind::Call), resolve(r.at("inner")),
                                            bracket_symbol(g.brackets_, pair, SymbolKind::Return),
                                            resolve(r.at("next"))));
      } else {
        throw DomainError("unknown rule form " + form);
      }
    }
    ++index;
  }
  g.start_ = resolve(j.at("start"));
  g.validate();
  return g;
}

// ---------------------------------------------------------------------------
// Sampling

std::vector<TaggedString> sample_vpg(const Vpg& g, std::size_t n, std::size_t max_depth, std::uint64_t seed) {
  g.validate();
  constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();
  const std::size_t count = g.size();
  // Minimal derivation-tree height per nonterminal.
  std::vector<std::size_t> height(count, kInf);
  auto rule_height = [&](const VpgRule& r) -> std::size_t {
    switch (r.form) {
      case RuleForm::Empty: return 1;
      case RuleForm::Linear: {
        auto h = height[static_cast<std::size_t>(r.next)];
        return h == kInf ? kInf : h + 1;
      }
      case RuleForm::Matching: {
        auto a = height[static_cast<std::size_t>(r.inner)];
        auto b = height[static_cast<std::size_t>(r.next)];
        return a == kInf || b == kInf ? kInf : std::max(a, b) + 1;
      }
    }
    return kInf;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t nt = 0; nt < count; ++nt) {
      for (const auto& r : g.rules(static_cast<int>(nt))) {
        auto h = rule_height(r);
        if (h < height[nt]) {
          height[nt] = h;
          changed = true;
        }
      }
    }
  }
  if (height[static_cast<std::size_t>(g.start())] == kInf) {
    throw DomainError("grammar start symbol derives no finite string");
  }

  std::vector<std::vector<const VpgRule*>> usable(count), shortest(count);
  for (std::size_t nt = 0; nt < count; ++nt) {
    for (const auto& r : g.rules(static_cast<int>(nt))) {
      auto h = rule_height(r);
      if (h == kInf) continue;
      usable[nt].push_back(&r);
      if (h == height[nt]) shortest[nt].push_back(&r);
    }
  }

  std::mt19937_64 rng(seed);
  struct Work {
    bool emit;
    TaggedSymbol symbol;
    int nt;
    std::size_t depth;
  };
  std::vector<TaggedString> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    TaggedString s;
    std::vector<Work> stack{{false, {}, g.start(), 0}};
    while (!stack.empty()) {
      Work w = stack.back();
      stack.pop_back();
      if (w.emit) {
        s.push_back(w.symbol);
        continue;
      }
      const auto& pool = w.depth >= max_depth ? shortest[static_cast<std::size_t>(w.nt)]
                                              : usable[static_cast<std::size_t>(w.nt)];
      std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
      const VpgRule& r = *pool[pick(rng)];
      switch (r.form) {
        case RuleForm::Empty: break;
        case RuleForm::Linear:
          s.push_back(r.lead);
          stack.push_back({false, {}, r.next, w.depth + 1});
          break;
        case RuleForm::Matching:
          s.push_back(r.lead);
          stack.push_back({false, {}, r.next, w.depth + 1});
          stack.push_back({true, r.trail, -1, 0});
          stack.push_back({false, {}, r.inner, w.depth + 1});
          break;
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

VpgOracle::VpgOracle(Vpg grammar) : grammar_(std::move(grammar)) { grammar_.validate(); }

bool VpgOracle::query(std::string_view s) {
  TaggedString t = grammar_.lex(s);
  return is_well_matched(t) && grammar_.recognize(t);
}

}  // namespace vstar
