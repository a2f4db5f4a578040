#include "vstar/tokenizer.hpp"

#include <algorithm>

#include "vstar/error.hpp"

namespace vstar {

nlohmann::json PartialTokenizer::to_json() const {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& p : pairs) list.push_back({{"call", p.call.to_json()}, {"ret", p.ret.to_json()}});
  return {{"pairs", list}, {"k_rep", k_rep}};
}

PartialTokenizer PartialTokenizer::from_json(const nlohmann::json& j) {
  PartialTokenizer d;
  for (const auto& p : j.at("pairs")) {
    TokenPair pair{Dfa::from_json(p.at("call")), Dfa::from_json(p.at("ret"))};
    if (pair.call.language_empty() || pair.ret.language_empty()) throw DomainError("token language must be non-empty");
    d.pairs.push_back(std::move(pair));
  }
  d.k_rep = j.value("k_rep", std::size_t{2});
  if (d.k_rep < 2) throw DomainError("k_rep must be at least 2");
  return d;
}

std::vector<TokenMatch> tokenize(const PartialTokenizer& d, std::string_view s, MembershipOracle& oracle,
                                 const ProbeContext& ctx) {
  std::vector<TokenMatch> out;
  std::size_t i = 0;
  while (i < s.size()) {
    std::optional<TokenMatch> found;
    for (std::size_t p = 0; p < d.pairs.size() && !found; ++p) {
      for (TokenSide side : {TokenSide::Call, TokenSide::Return}) {
        const Dfa& rec = side == TokenSide::Call ? d.pairs[p].call : d.pairs[p].ret;
        if (auto len = rec.longest_match(s, i)) {
          found = TokenMatch{p, side, i + 1, i + *len};
          break;
        }
      }
    }
    if (!found) {
      ++i;
      continue;
    }
    std::string_view lexeme = s.substr(i, found->end - i);
    std::string probe = ctx.prefix;
    probe.append(s.substr(0, i));
    for (std::size_t r = 0; r < d.k_rep; ++r) probe.append(lexeme);
    probe.append(s.substr(found->end));
    probe.append(ctx.suffix);
    if (oracle.query(probe)) {
      ++i;
    } else {
      out.push_back(*found);
      i = found->end;
    }
  }
  return out;
}

TaggedString conv(std::string_view s, const std::vector<TokenMatch>& matches) {
  for (std::size_t m = 0; m < matches.size(); ++m) {
    const auto& t = matches[m];
    if (t.start < 1 || t.start > t.end || t.end > s.size() || (m > 0 && t.start <= matches[m - 1].end)) {
      throw DomainError("token matches must be ordered, disjoint and inside the string");
    }
  }
  TaggedString out;
  out.reserve(s.size() + matches.size());
  std::size_t m = 0;
  for (std::size_t pos = 1; pos <= s.size(); ++pos) {
    if (m < matches.size() && matches[m].side == TokenSide::Call && matches[m].start == pos) {
      out.push_back({SymbolKind::Call, static_cast<std::uint16_t>(matches[m].pair), '\0', true});
    }
    out.push_back(TaggedSymbol::plain(s[pos - 1]));
    if (m < matches.size() && matches[m].end == pos) {
      if (matches[m].side == TokenSide::Return) {
        out.push_back({SymbolKind::Return, static_cast<std::uint16_t>(matches[m].pair), '\0', true});
      }
      ++m;
    }
  }
  return out;
}

std::string erase_brackets(const TaggedString& s) { return untag(s); }

TaggedAlphabet make_token_alphabet(const std::string& plain_chars, const PartialTokenizer& d) {
  TaggedAlphabet a;
  a.plain = plain_chars;
  std::sort(a.plain.begin(), a.plain.end(),
            [](char x, char y) { return static_cast<unsigned char>(x) < static_cast<unsigned char>(y); });
  a.plain.erase(std::unique(a.plain.begin(), a.plain.end()), a.plain.end());
  for (std::size_t i = 0; i < d.size(); ++i) a.pairs.push_back({"", "", true});
  return a;
}

}  // namespace vstar
