#include "vstar/equivalence.hpp"

#include <algorithm>
#include <bitset>
#include <set>

#include "vstar/error.hpp"
#include "vstar/vpg.hpp"

namespace vstar {

bool hypothesis_accepts(const Sevpa& m, Interpretation& interp, std::string_view raw) {
  auto img = interp.image(raw);
  return img && m.run(*img) == Verdict::Accept;
}

namespace {

bool length_lex_less(const std::string& a, const std::string& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), [](char x, char y) {
    return static_cast<unsigned char>(x) < static_cast<unsigned char>(y);
  });
}

std::string sorted_chars(std::string chars) {
  std::sort(chars.begin(), chars.end(),
            [](char x, char y) { return static_cast<unsigned char>(x) < static_cast<unsigned char>(y); });
  chars.erase(std::unique(chars.begin(), chars.end()), chars.end());
  return chars;
}

}  // namespace

PerfectTeacher::PerfectTeacher(MembershipOracle& reference, Interpretation& interp, std::size_t max_len)
    : reference_(reference), interp_(interp), max_len_(max_len) {}

std::optional<Counterexample> PerfectTeacher::find_counterexample(const Sevpa& hypothesis) {
  const std::string chars = sorted_chars(interp_.raw_chars());
  unrepresentable_ = 0;
  for (std::size_t len = 0; len <= max_len_; ++len) {
    std::vector<std::size_t> digits(len, 0);
    std::string s(len, chars.empty() ? '\0' : chars[0]);
    if (len > 0 && chars.empty()) break;
    while (true) {
      auto img = interp_.image(s);
      bool hyp = img && hypothesis.run(*img) == Verdict::Accept;
      bool truth = reference_.query(s);
      if (hyp != truth) {
        if (img && is_well_matched(*img)) return Counterexample{s, *img, truth, hyp};
        ++unrepresentable_;
      }
      // Odometer increment, last position fastest.
      std::size_t pos = len;
      while (pos > 0) {
        --pos;
        if (++digits[pos] < chars.size()) {
          s[pos] = chars[digits[pos]];
          break;
        }
        digits[pos] = 0;
        s[pos] = chars[0];
        if (pos == 0) {
          pos = len + 1;
          break;
        }
      }
      if (len == 0 || pos == len + 1) break;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Corpus construction

namespace {

constexpr std::size_t kMaxTotal = 128;
using Lengths = std::bitset<kMaxTotal>;

struct Trie {
  std::vector<std::vector<std::pair<unsigned char, int>>> children;
  std::vector<bool> terminal;

  Trie() { add_node(); }
  int add_node() {
    children.emplace_back();
    terminal.push_back(false);
    return static_cast<int>(children.size() - 1);
  }
  int child(int node, char c) const {
    for (auto [ch, target] : children[static_cast<std::size_t>(node)]) {
      if (ch == static_cast<unsigned char>(c)) return target;
    }
    return -1;
  }
  void insert(std::string_view s, bool mark_end) {
    int node = 0;
    for (char c : s) {
      int next = child(node, c);
      if (next < 0) {
        next = add_node();
        children[static_cast<std::size_t>(node)].emplace_back(static_cast<unsigned char>(c), next);
      }
      node = next;
    }
    if (mark_end) terminal[static_cast<std::size_t>(node)] = true;
  }
};

/// NFA over phases prefix, infix..., suffix. Every prefix/infix trie node ends
/// a valid fragment, so each one has an ε-move to the next phase's root.
class CombinationNfa {
 public:
  CombinationNfa(const std::vector<std::string>& seeds, const CorpusLimits& limits) {
    const std::size_t mf = limits.max_fragment;
    for (const auto& s : seeds) {
      prefixes_.insert(std::string_view(s).substr(0, std::min(mf, s.size())), false);
      for (std::size_t i = 0; i < s.size(); ++i) infixes_.insert(std::string_view(s).substr(i, mf), false);
      for (std::size_t len = 0; len <= std::min(mf, s.size()); ++len) {
        suffixes_.insert(std::string_view(s).substr(s.size() - len), true);
      }
    }
    phases_.push_back(&prefixes_);
    for (std::size_t i = 0; i < limits.infixes; ++i) phases_.push_back(&infixes_);
    phases_.push_back(&suffixes_);
    // Remaining lengths that can still reach acceptance, last phase first.
    lengths_.resize(phases_.size());
    for (std::size_t k = phases_.size(); k-- > 0;) {
      const Trie& t = *phases_[k];
      auto& len = lengths_[k];
      len.assign(t.children.size(), Lengths{});
      // Trie children always have larger indices than their parents.
      for (std::size_t n = t.children.size(); n-- > 0;) {
        Lengths l;
        if (k + 1 == phases_.size()) {
          if (t.terminal[n]) l.set(0);
        } else {
          l |= lengths_[k + 1][0];
        }
        for (auto [ch, child] : t.children[n]) l |= len[static_cast<std::size_t>(child)] << 1;
        len[n] = l;
      }
    }
  }

  using State = std::vector<std::pair<int, int>>;  // sorted (phase, node)

  State initial() const { return closure({{0, 0}}); }

  State step(const State& s, char c) const {
    State out;
    for (auto [k, n] : s) {
      int child = phases_[static_cast<std::size_t>(k)]->child(n, c);
      if (child >= 0) out.emplace_back(k, child);
    }
    return closure(std::move(out));
  }

  Lengths lengths(const State& s) const {
    Lengths l;
    for (auto [k, n] : s) l |= lengths_[static_cast<std::size_t>(k)][static_cast<std::size_t>(n)];
    return l;
  }

 private:
  State closure(State s) const {
    State out;
    for (auto [k, n] : s) {
      out.emplace_back(k, n);
      for (std::size_t next = static_cast<std::size_t>(k) + 1; next < phases_.size(); ++next) {
        out.emplace_back(static_cast<int>(next), 0);
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  Trie prefixes_, infixes_, suffixes_;
  std::vector<const Trie*> phases_;
  std::vector<std::vector<Lengths>> lengths_;
};

}  // namespace

TestCorpus build_corpus(const std::vector<std::string>& seeds, Interpretation& interp, const CorpusLimits& limits) {
  if (seeds.empty()) throw DomainError("corpus construction needs at least one seed");
  if (limits.max_fragment == 0 || limits.max_corpus == 0) throw DomainError("corpus limits must be positive");
  if (limits.infixes > 2) throw DomainError("at most two infixes are supported");
  const std::size_t max_total = (limits.infixes + 2) * limits.max_fragment;
  if (max_total >= kMaxTotal) throw DomainError("fragment limit too large");

  TestCorpus corpus;
  std::set<std::string> seen;
  std::vector<std::pair<std::string, TaggedString>> entries;
  std::set<std::string> seed_set;
  for (const auto& s : seeds) {
    if (!seed_set.insert(s).second) continue;
    auto img = interp.image(s);
    if (img && is_well_matched(*img) && entries.size() < limits.max_corpus) {
      entries.emplace_back(s, *img);
      seen.insert(s);
    }
  }

  CombinationNfa nfa(seeds, limits);
  std::string chars;
  for (const auto& s : seeds) chars += s;
  chars = sorted_chars(chars);

  bool done = entries.size() >= limits.max_corpus;
  for (std::size_t len = 0; len <= max_total && !done; ++len) {
    struct Frame {
      CombinationNfa::State state;
      std::size_t next_char;
    };
    std::string word;
    std::vector<Frame> stack;
    stack.push_back({nfa.initial(), 0});
    while (!stack.empty() && !done) {
      if (word.size() == len) {
        if (nfa.lengths(stack.back().state).test(0) && !seen.count(word)) {
          ++corpus.candidates_examined;
          auto img = interp.image(word);
          if (img && is_well_matched(*img)) {
            entries.emplace_back(word, *img);
            seen.insert(word);
            if (entries.size() >= limits.max_corpus) done = true;
          }
          if (corpus.candidates_examined >= limits.max_candidates) done = true;
        }
        stack.pop_back();
        if (!word.empty()) word.pop_back();
        continue;
      }
      Frame& top = stack.back();
      if (top.next_char >= chars.size()) {
        stack.pop_back();
        if (!word.empty()) word.pop_back();
        continue;
      }
      char c = chars[top.next_char++];
      auto next = nfa.step(top.state, c);
      std::size_t remaining = len - word.size() - 1;
      if (next.empty() || !nfa.lengths(next).test(remaining)) continue;
      word += c;
      if (!interp.viable_prefix(word, remaining)) {
        word.pop_back();
        continue;
      }
      stack.push_back({std::move(next), 0});
    }
  }

  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return length_lex_less(a.first, b.first); });
  for (auto& [s, img] : entries) {
    corpus.from_seed.push_back(seed_set.count(s) > 0);
    corpus.strings.push_back(std::move(s));
    corpus.images.push_back(std::move(img));
  }
  return corpus;
}

SeedCombinationTeacher::SeedCombinationTeacher(TestCorpus corpus, MembershipOracle& oracle)
    : corpus_(std::move(corpus)), oracle_(oracle) {}

std::optional<Counterexample> SeedCombinationTeacher::find_counterexample(const Sevpa& hypothesis) {
  for (std::size_t i = 0; i < corpus_.size(); ++i) {
    bool hyp = hypothesis.run(corpus_.images[i]) == Verdict::Accept;
    bool truth = oracle_.query(corpus_.strings[i]);
    if (hyp != truth) {
      Counterexample ce{corpus_.strings[i], corpus_.images[i], truth, hyp};
      if (ce.verdict_oracle == ce.verdict_hypothesis) throw InternalError("counterexample verdicts agree");
      return ce;
    }
  }
  return std::nullopt;
}

HypothesisSamplingTeacher::HypothesisSamplingTeacher(EquivalenceStrategy& inner,
                                                     std::function<bool(const TaggedString&)> member,
                                                     HypothesisSampling options)
    : inner_(inner), member_(std::move(member)), options_(options) {}

std::optional<Counterexample> HypothesisSamplingTeacher::find_counterexample(const Sevpa& hypothesis) {
  if (auto ce = inner_.find_counterexample(hypothesis)) return ce;
  if (options_.samples == 0) return std::nullopt;
  Vpg g = hypothesis.to_vpg();
  if (!g.productive()[static_cast<std::size_t>(g.start())]) return std::nullopt;
  std::optional<TaggedString> best;
  for (auto& w : sample_vpg(g, options_.samples, options_.max_depth, options_.seed + round_++)) {
    if (best && w.size() >= best->size()) continue;
    if (!member_(w)) best = std::move(w);
  }
  if (!best) return std::nullopt;
  return Counterexample{untag(*best), *best, false, true};
}

}  // namespace vstar
