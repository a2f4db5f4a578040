#include "vstar/tagged.hpp"

#include <algorithm>

#include "vstar/error.hpp"
#include "vstar/text.hpp"

namespace vstar {

Alphabet::Alphabet(std::string_view chars) {
  for (char c : chars) member_[static_cast<unsigned char>(c)] = true;
  for (int b = 0; b < 256; ++b) {
    if (member_[b]) chars_ += static_cast<char>(b);
  }
  if (chars_.empty()) throw DomainError("alphabet must not be empty");
}

Alphabet Alphabet::of_strings(const std::vector<std::string>& strings) {
  std::string all;
  for (const auto& s : strings) all += s;
  return Alphabet(all);
}

std::size_t TaggedStringHash::operator()(const TaggedString& s) const noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  for (const auto& sym : s) {
    std::uint64_t packed = static_cast<std::uint64_t>(sym.kind) |
                           (static_cast<std::uint64_t>(sym.artificial) << 2) |
                           (static_cast<std::uint64_t>(static_cast<unsigned char>(sym.ch)) << 3) |
                           (static_cast<std::uint64_t>(sym.pair) << 11);
    h ^= packed;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

TaggedString concat(const TaggedString& a, const TaggedString& b) {
  TaggedString out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

TaggedString concat(const TaggedString& a, const TaggedString& b, const TaggedString& c) {
  TaggedString out;
  out.reserve(a.size() + b.size() + c.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  out.insert(out.end(), c.begin(), c.end());
  return out;
}

std::string untag(const TaggedString& s) {
  std::string out;
  out.reserve(s.size());
  for (const auto& sym : s) {
    if (!sym.artificial) out += sym.ch;
  }
  return out;
}

std::string to_display(const TaggedString& s) {
  std::string out;
  for (const auto& sym : s) {
    std::string ch = sym.artificial ? "#" + std::to_string(sym.pair) : escape_bytes(std::string(1, sym.ch));
    switch (sym.kind) {
      case SymbolKind::Plain: out += ch; break;
      case SymbolKind::Call: out += "<" + ch; break;
      case SymbolKind::Return: out += ch + ">"; break;
    }
  }
  return out;
}

Tagging::Tagging(std::vector<std::pair<char, char>> pairs) : Tagging() {
  for (auto [a, b] : pairs) *this = with(a, b);
}

Tagging Tagging::with(char call, char ret) const {
  if (call == ret) throw DomainError("a character cannot be both call and return");
  if (uses(call) || uses(ret)) throw DomainError("tagging violates unique pairing");
  Tagging out = *this;
  int index = static_cast<int>(out.pairs_.size());
  out.pairs_.emplace_back(call, ret);
  out.call_index_[static_cast<unsigned char>(call)] = index;
  out.return_index_[static_cast<unsigned char>(ret)] = index;
  return out;
}

void Tagging::validate_against(const Alphabet& alphabet) const {
  for (auto [a, b] : pairs_) {
    if (!alphabet.contains(a) || !alphabet.contains(b)) {
      throw DomainError("tagged character outside the alphabet");
    }
  }
}

namespace {

std::string char_to_json(char c) { return escape_bytes(std::string(1, c)); }

char char_from_json(const nlohmann::json& j) {
  std::string raw = unescape_bytes(j.get<std::string>());
  if (raw.size() != 1) throw DomainError("expected a single character, got \"" + j.get<std::string>() + "\"");
  return raw[0];
}

}  // namespace

nlohmann::json to_json(const Tagging& t) {
  nlohmann::json pairs = nlohmann::json::array();
  for (auto [a, b] : t.pairs()) pairs.push_back({char_to_json(a), char_to_json(b)});
  return {{"pairs", pairs}};
}

Tagging tagging_from_json(const nlohmann::json& j) {
  std::vector<std::pair<char, char>> pairs;
  for (const auto& p : j.at("pairs")) {
    if (!p.is_array() || p.size() != 2) throw DomainError("tagging pair must be a two-element array");
    pairs.emplace_back(char_from_json(p[0]), char_from_json(p[1]));
  }
  return Tagging(std::move(pairs));
}

TaggedString apply_tagging(const Tagging& t, std::string_view s) {
  TaggedString out;
  out.reserve(s.size());
  for (char c : s) {
    if (int i = t.call_index(c); i >= 0) {
      out.push_back({SymbolKind::Call, static_cast<std::uint16_t>(i), c, false});
    } else if (int r = t.return_index(c); r >= 0) {
      out.push_back({SymbolKind::Return, static_cast<std::uint16_t>(r), c, false});
    } else {
      out.push_back(TaggedSymbol::plain(c));
    }
  }
  return out;
}

TaggedString apply_tagging(const Alphabet& alphabet, const Tagging& t, std::string_view s) {
  for (char c : s) {
    if (!alphabet.contains(c)) {
      throw DomainError("character '" + escape_bytes(std::string(1, c)) + "' is outside the alphabet");
    }
  }
  return apply_tagging(t, s);
}

bool is_well_matched(const TaggedString& s) {
  std::vector<std::uint16_t> open;
  for (const auto& sym : s) {
    if (sym.kind == SymbolKind::Call) {
      open.push_back(sym.pair);
    } else if (sym.kind == SymbolKind::Return) {
      if (open.empty() || open.back() != sym.pair) return false;
      open.pop_back();
    }
  }
  return open.empty();
}

UnmatchedProfile unmatched_profile(const TaggedString& s) { return unmatched_profile(s, 0, s.size()); }

UnmatchedProfile unmatched_profile(const TaggedString& s, std::size_t begin, std::size_t end) {
  UnmatchedProfile profile;
  for (std::size_t i = begin; i < end; ++i) {
    const auto& sym = s[i];
    if (sym.kind == SymbolKind::Call) {
      profile.pending_calls.push_back(sym.pair);
    } else if (sym.kind == SymbolKind::Return) {
      if (!profile.pending_calls.empty() && profile.pending_calls.back() == sym.pair) {
        profile.pending_calls.pop_back();
      } else {
        profile.pending_returns.push_back(sym.pair);
      }
    }
  }
  return profile;
}

TaggedSymbol TaggedAlphabet::call(std::size_t i) const {
  const auto& p = pairs.at(i);
  return {SymbolKind::Call, static_cast<std::uint16_t>(i), p.artificial ? '\0' : p.open.at(0), p.artificial};
}

TaggedSymbol TaggedAlphabet::ret(std::size_t i) const {
  const auto& p = pairs.at(i);
  return {SymbolKind::Return, static_cast<std::uint16_t>(i), p.artificial ? '\0' : p.close.at(0), p.artificial};
}

nlohmann::json to_json(const TaggedAlphabet& a) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& p : a.pairs) {
    if (p.artificial) {
      pairs.push_back({{"artificial", true}});
    } else {
      pairs.push_back({{"call", escape_bytes(p.open)}, {"return", escape_bytes(p.close)}});
    }
  }
  return {{"plain", escape_bytes(a.plain)}, {"pairs", pairs}};
}

TaggedAlphabet tagged_alphabet_from_json(const nlohmann::json& j) {
  TaggedAlphabet a;
  a.plain = unescape_bytes(j.at("plain").get<std::string>());
  if (!std::is_sorted(a.plain.begin(), a.plain.end(),
                      [](char x, char y) { return static_cast<unsigned char>(x) < static_cast<unsigned char>(y); })) {
    throw DomainError("plain alphabet must be sorted");
  }
  for (const auto& p : j.at("pairs")) {
    BracketPair bp;
    if (p.value("artificial", false)) {
      bp.artificial = true;
    } else {
      bp.open = unescape_bytes(p.at("call").get<std::string>());
      bp.close = unescape_bytes(p.at("return").get<std::string>());
      if (bp.open.size() != 1 || bp.close.size() != 1) {
        throw DomainError("character bracket pairs need one-character literals");
      }
    }
    a.pairs.push_back(std::move(bp));
  }
  return a;
}

TaggedAlphabet make_tagged_alphabet(const Alphabet& alphabet, const Tagging& t) {
  TaggedAlphabet out;
  for (char c : alphabet.chars()) {
    if (!t.uses(c)) out.plain += c;
  }
  for (auto [a, b] : t.pairs()) out.pairs.push_back({std::string(1, a), std::string(1, b), false});
  return out;
}

}  // namespace vstar
