#include "vstar/token_inference.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "vstar/error.hpp"
#include "vstar/text.hpp"

namespace vstar {

namespace {

// Spans of a fragment placed at `offset`: those inside one copy (when
// `crossing` is false) or those crossing the boundary of a doubled fragment.
std::vector<TokenSpan> fragment_spans(std::size_t offset, std::size_t len, bool crossing, bool rightmost_first) {
  std::vector<TokenSpan> out;
  if (!crossing) {
    for (std::size_t b = 0; b < len; ++b) {
      for (std::size_t e = b + 1; e <= len; ++e) out.push_back({false, offset + b, offset + e});
    }
  } else {
    for (std::size_t b = 0; b < len; ++b) {
      for (std::size_t e = len + 1; e <= 2 * len; ++e) out.push_back({true, offset + b, offset + e});
    }
  }
  std::stable_sort(out.begin(), out.end(), [&](const TokenSpan& a, const TokenSpan& b) {
    std::size_t la = a.end - a.begin, lb = b.end - b.begin;
    if (la != lb) return la > lb;
    return rightmost_first ? a.begin > b.begin : a.begin < b.begin;
  });
  return out;
}

std::string merged_alphabet(std::string chars, std::string_view extra) {
  chars.append(extra);
  std::sort(chars.begin(), chars.end(),
            [](char x, char y) { return static_cast<unsigned char>(x) < static_cast<unsigned char>(y); });
  chars.erase(std::unique(chars.begin(), chars.end()), chars.end());
  return chars;
}

bool languages_overlap(const Dfa& a, const Dfa& b) { return intersection_witness(a, b).has_value(); }

// Words that do not start with `first` and end with `last`. States: 0 empty
// word, 1 good start and last char ok, 2 good start otherwise, 3 bad start.
Dfa anchor_violations(const std::string& alphabet, char first, char last) {
  Dfa d;
  d.alphabet = alphabet;
  d.trans.assign(4, std::vector<int>(alphabet.size(), 3));
  for (std::size_t i = 0; i < alphabet.size(); ++i) {
    const char c = alphabet[i];
    const int tail = c == last ? 1 : 2;
    d.trans[0][i] = c == first ? tail : 3;
    d.trans[1][i] = tail;
    d.trans[2][i] = tail;
  }
  d.accepting = {true, false, true, true};
  return d;
}

/// conv image of a seed plus the position of every source character in it.
struct ConvView {
  TaggedString image;
  std::vector<std::size_t> pos;

  ConvView() = default;
  ConvView(std::string_view s, const std::vector<TokenMatch>& matches) : image(conv(s, matches)) {
    for (std::size_t i = 0; i < image.size(); ++i) {
      if (image[i].is_plain()) pos.push_back(i);
    }
  }

  // conv_{D,s}(s[b..e)): includes a call inserted right before and a return
  // inserted right after the substring.
  std::pair<std::size_t, std::size_t> region(std::size_t b, std::size_t e) const {
    std::size_t first = pos[b], last = pos[e - 1] + 1;
    if (first > 0 && image[first - 1].is_call()) --first;
    if (last < image.size() && image[last].is_return()) ++last;
    return {first, last};
  }

  // Some pair has an unmatched call in the first region and an unmatched
  // return of the same pair in the second.
  bool covers(std::size_t xb, std::size_t xe, std::size_t yb, std::size_t ye) const {
    auto [cxb, cxe] = region(xb, xe);
    auto [cyb, cye] = region(yb, ye);
    auto px = unmatched_profile(image, cxb, cxe);
    auto py = unmatched_profile(image, cyb, cye);
    for (auto pair : px.pending_calls) {
      if (std::find(py.pending_returns.begin(), py.pending_returns.end(), pair) != py.pending_returns.end()) {
        return true;
      }
    }
    return false;
  }
};

// Checked on the seed with regions (x, y), then on u·x²·z·y²·v with regions
// (x², y²): a token may straddle the boundary of x or y in the seed.
bool pattern_covered(const PartialTokenizer& d, const ConvView& seed_view, const NestingPattern& p,
                     MembershipOracle& o) {
  if (d.empty()) return false;
  if (seed_view.covers(p.x_begin(), p.x_end(), p.y_begin(), p.y_end())) return true;
  const std::string pumped = p.pumped(2, 2);
  ConvView view(pumped, tokenize(d, pumped, o));
  const std::size_t xb = p.u_len, yb = p.u_len + 2 * p.x_len + p.z_len;
  return view.covers(xb, xb + 2 * p.x_len, yb, yb + 2 * p.y_len);
}

// Position (1-based start/end) of the first token look-alike hidden inside an
// emitted token that cannot be repeated in place, if any.
std::optional<std::pair<std::size_t, std::size_t>> hidden_unrepeatable(const PartialTokenizer& d, const std::string& s,
                                                                       const std::vector<TokenMatch>& matches,
                                                                       MembershipOracle& o) {
  for (const auto& m : matches) {
    for (std::size_t pos = m.start; pos < m.end; ++pos) {
      for (const auto& pair : d.pairs) {
        for (const Dfa* t : {&pair.call, &pair.ret}) {
          auto len = t->longest_match(s, pos);
          if (len && !is_k_repeatable(o, s, pos + 1, pos + *len, d.k_rep)) return std::pair{pos + 1, pos + *len};
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<TokenSpan> call_spans(const NestingPattern& p) {
  auto out = fragment_spans(p.x_begin(), p.x_len, false, false);
  auto pumped = fragment_spans(p.u_len, p.x_len, true, false);
  out.insert(out.end(), pumped.begin(), pumped.end());
  return out;
}

std::vector<TokenSpan> return_spans(const NestingPattern& p) {
  auto out = fragment_spans(p.y_begin(), p.y_len, false, true);
  auto pumped = fragment_spans(p.u_len + 2 * p.x_len + p.z_len, p.y_len, true, true);
  out.insert(out.end(), pumped.begin(), pumped.end());
  return out;
}

std::optional<Dfa> learn_token(MembershipOracle& o, const NestingPattern& p, const TokenSpan& span, bool call_side,
                               const std::string& alphabet, const TokenLearnOptions& options) {
  const std::string context = span.pumped ? p.pumped(2, 2) : p.seed;
  if (span.begin >= span.end || span.end > context.size()) throw DomainError("token span out of range");
  const std::string prefix = context.substr(0, span.begin);
  const std::string suffix = context.substr(span.end);
  const std::string lexeme = context.substr(span.begin, span.end - span.begin);
  std::string fragment = call_side ? p.x() : p.y();
  if (span.pumped) fragment += fragment;

  const char first = lexeme.front(), last = lexeme.back();
  MemberFn member = [&](std::string_view w) {
    if (w.empty() || w.front() != first || w.back() != last) return false;
    std::string probe = prefix;
    probe.append(w);
    probe.append(suffix);
    return o.query(probe);
  };

  std::vector<std::string> tests{lexeme};
  std::set<std::string> seen{lexeme};
  for (std::size_t i = 0; i <= fragment.size(); ++i) {
    for (std::size_t j = 0; j <= fragment.size(); ++j) {
      std::string t = fragment.substr(0, i) + fragment.substr(j);
      if (seen.insert(t).second) tests.push_back(std::move(t));
    }
  }
  if (tests.size() > options.max_teacher_tests) return std::nullopt;

  const std::string chars = merged_alphabet(alphabet, context);
  // The anchors are known exactly, so hypothesis words violating them are
  // counterexamples before any finite test is tried.
  const Dfa violations = anchor_violations(chars, first, last);
  DfaTeacher finite = finite_test_teacher(member, std::move(tests));
  DfaTeacher teacher = [&](const Dfa& h) -> std::optional<std::string> {
    if (auto w = intersection_witness(h, violations)) return w;
    return finite(h);
  };
  LstarResult res = lstar_learn(member, chars, teacher, options.lstar);
  if (!res.converged || res.dfa.language_empty() || !res.dfa.accepts(lexeme)) return std::nullopt;
  return std::move(res.dfa);
}

std::optional<TokenPair> learn_token_pair(MembershipOracle& o, const NestingPattern& p, const TokenSpan& call,
                                          const TokenSpan& ret, const std::string& alphabet,
                                          const TokenLearnOptions& options) {
  auto c = learn_token(o, p, call, true, alphabet, options);
  if (!c) return std::nullopt;
  auto r = learn_token(o, p, ret, false, alphabet, options);
  if (!r || languages_overlap(*c, *r)) return std::nullopt;
  return TokenPair{std::move(*c), std::move(*r)};
}

bool is_compatible_tokenizer(const PartialTokenizer& d, const NestingPattern& p, MembershipOracle& o) {
  if (d.empty()) return false;
  return pattern_covered(d, ConvView(p.seed, tokenize(d, p.seed, o)), p, o);
}

namespace {

class TokenSearch {
 public:
  TokenSearch(MembershipOracle& o, const std::vector<std::string>& seeds, const std::vector<NestingPattern>& patterns,
              std::string alphabet, const TokenInferenceOptions& options)
      : o_(o), seeds_(seeds), patterns_(patterns), alphabet_(std::move(alphabet)), options_(options) {}

  std::optional<PartialTokenizer> run() {
    PartialTokenizer d;
    d.k_rep = options_.k_rep;
    return search(0, d, views_for(d));
  }
  std::size_t nodes() const noexcept { return nodes_; }
  std::size_t lstar_runs() const noexcept { return lstar_runs_; }

 private:
  std::vector<ConvView> views_for(const PartialTokenizer& d) {
    std::vector<ConvView> views;
    views.reserve(seeds_.size());
    for (const auto& s : seeds_) views.emplace_back(s, tokenize(d, s, o_));
    return views;
  }

  const std::optional<Dfa>& token(std::size_t idx, const TokenSpan& span, bool call_side) {
    auto key = std::make_tuple(idx, call_side, span.pumped, span.begin, span.end);
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      ++lstar_runs_;
      it = cache_.emplace(key, learn_token(o_, patterns_[idx], span, call_side, alphabet_, options_.learn)).first;
    }
    return it->second;
  }

  std::optional<PartialTokenizer> search(std::size_t idx, const PartialTokenizer& d, const std::vector<ConvView>& views) {
    if (++nodes_ > options_.max_search_nodes) return std::nullopt;
    if (idx == patterns_.size()) return d;
    const NestingPattern& p = patterns_[idx];
    if (pattern_covered(d, views[p.seed_index], p, o_)) return search(idx + 1, d, views);

    const auto calls = call_spans(p);
    const auto rets = return_spans(p);
    std::set<std::string> tried;
    // Spans inside (x, y) first, then combinations reaching into x² or y².
    for (int phase = 0; phase < 2; ++phase) {
      for (const auto& cs : calls) {
        for (const auto& rs : rets) {
          bool plain = !cs.pumped && !rs.pumped;
          if ((phase == 0) != plain) continue;
          const auto& call = token(idx, cs, true);
          if (!call) break;
          const auto& ret = token(idx, rs, false);
          if (!ret || languages_overlap(*call, *ret)) continue;
          if (!tried.insert(call->to_json().dump() + "|" + ret->to_json().dump()).second) continue;
          if (overlaps_existing(d, *call, *ret)) continue;
          PartialTokenizer next = d;
          next.pairs.push_back({*call, *ret});
          auto next_views = views_for(next);
          if (!acceptable(next, next_views, idx)) continue;
          if (auto found = search(idx + 1, next, next_views)) return found;
          if (nodes_ > options_.max_search_nodes) return std::nullopt;
        }
      }
    }
    return std::nullopt;
  }

  static bool overlaps_existing(const PartialTokenizer& d, const Dfa& call, const Dfa& ret) {
    for (const auto& e : d.pairs) {
      for (const Dfa* a : {&call, &ret}) {
        for (const Dfa* b : {&e.call, &e.ret}) {
          if (languages_overlap(*a, *b)) return true;
        }
      }
    }
    return false;
  }

  // Every seed image well-matched, no unrepeatable look-alike hidden inside a
  // token, and patterns 0..idx covered.
  bool acceptable(const PartialTokenizer& d, const std::vector<ConvView>& views, std::size_t idx) {
    for (const auto& v : views) {
      if (!is_well_matched(v.image)) return false;
    }
    for (std::size_t i = 0; i < seeds_.size(); ++i) {
      if (hidden_unrepeatable(d, seeds_[i], tokenize(d, seeds_[i], o_), o_)) return false;
    }
    for (std::size_t i = 0; i <= idx; ++i) {
      if (!pattern_covered(d, views[patterns_[i].seed_index], patterns_[i], o_)) return false;
    }
    return true;
  }

  MembershipOracle& o_;
  const std::vector<std::string>& seeds_;
  const std::vector<NestingPattern>& patterns_;
  std::string alphabet_;
  const TokenInferenceOptions& options_;
  std::map<std::tuple<std::size_t, bool, bool, std::size_t, std::size_t>, std::optional<Dfa>> cache_;
  std::size_t nodes_ = 0;
  std::size_t lstar_runs_ = 0;
};

}  // namespace

TokenInferenceResult token_infer(MembershipOracle& o, const std::vector<std::string>& seeds,
                                 const TokenInferenceOptions& options) {
  for (const auto& s : seeds) {
    if (!o.query(s)) throw PreconditionError("seed rejected by the oracle: " + escape_bytes(s));
  }
  const auto& lim = options.nesting;
  if (lim.k_start < 2 || lim.k_cap < lim.k_start) throw DomainError("invalid pumping bound schedule");
  std::string alphabet;
  for (const auto& s : seeds) alphabet = merged_alphabet(std::move(alphabet), s);

  TokenInferenceResult result;
  for (std::size_t K = lim.k_start; K <= lim.k_cap; ++K) {
    result.patterns = K == lim.k_start ? candidate_nesting(o, seeds, K, lim) : refine_nesting(o, result.patterns, K);
    result.K = K;
    TokenSearch search(o, seeds, result.patterns, alphabet, options);
    result.tokenizer = search.run();
    result.search_nodes += search.nodes();
    result.lstar_runs += search.lstar_runs();
    if (result.tokenizer) break;
  }
  if (result.tokenizer) result.warnings = validate_token_assumptions(*result.tokenizer, seeds, o);
  return result;
}

std::vector<std::string> validate_token_assumptions(const PartialTokenizer& d, const std::vector<std::string>& seeds,
                                                    MembershipOracle& o) {
  std::vector<std::string> warnings;
  std::set<std::string> seen;
  auto warn = [&](std::string msg) {
    if (seen.insert(msg).second) warnings.push_back(std::move(msg));
  };
  struct Token {
    std::string name;
    const Dfa* dfa;
  };
  std::vector<Token> tokens;
  for (std::size_t i = 0; i < d.size(); ++i) {
    tokens.push_back({"call " + std::to_string(i), &d.pairs[i].call});
    tokens.push_back({"return " + std::to_string(i), &d.pairs[i].ret});
  }

  for (std::size_t a = 0; a < tokens.size(); ++a) {
    for (std::size_t b = a + 1; b < tokens.size(); ++b) {
      if (auto w = intersection_witness(*tokens[a].dfa, *tokens[b].dfa)) {
        warn("separation: " + tokens[a].name + " and " + tokens[b].name + " share \"" + escape_bytes(*w) + "\"");
      }
    }
  }

  std::vector<std::vector<std::string>> samples;
  for (const auto& t : tokens) samples.push_back(t.dfa->words_up_to(8, 20));
  for (std::size_t a = 0; a < tokens.size(); ++a) {
    for (std::size_t b = 0; b < tokens.size(); ++b) {
      if (a == b) continue;
      for (const auto& inner : samples[a]) {
        for (const auto& outer : samples[b]) {
          for (std::size_t pos = outer.find(inner, 1); pos != std::string::npos; pos = outer.find(inner, pos + 1)) {
            if (pos + inner.size() < outer.size()) {
              warn("exclusivity: \"" + escape_bytes(inner) + "\" (" + tokens[a].name + ") is an infix of \"" +
                   escape_bytes(outer) + "\" (" + tokens[b].name + ")");
            }
          }
        }
      }
    }
  }

  for (const auto& s : seeds) {
    auto matches = tokenize(d, s, o);
    for (const auto& m : matches) {
      // Re-scanning a lone lexeme must yield the same token.
      std::string lexeme = s.substr(m.start - 1, m.end - m.start + 1);
      auto again = tokenize(d, lexeme, o, {s.substr(0, m.start - 1), s.substr(m.end)});
      if (again.size() != 1 || again[0].pair != m.pair || again[0].side != m.side || again[0].end != lexeme.size()) {
        warn("tokenization consistency: \"" + escape_bytes(lexeme) + "\" in \"" + escape_bytes(s) +
             "\" does not re-tokenize to itself");
      }
    }
    if (auto hit = hidden_unrepeatable(d, s, matches, o)) {
      warn("k-repetition: \"" + escape_bytes(s.substr(hit->first - 1, hit->second - hit->first + 1)) + "\" at " +
           std::to_string(hit->first) + " in \"" + escape_bytes(s) + "\" is neither tokenized nor repeatable");
    }
  }
  return warnings;
}

}  // namespace vstar
