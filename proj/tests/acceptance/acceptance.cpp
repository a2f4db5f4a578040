// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "support/derivations.hpp"
#include "support/dfa_support.hpp"
#include "support/literal_dfa.hpp"
#include "support/reference.hpp"
#include "vstar/equivalence.hpp"
#include "vstar/evaluation.hpp"
#include "vstar/interpretation.hpp"
#include "vstar/learner.hpp"
#include "vstar/lstar.hpp"
#include "vstar/nesting.hpp"
#include "vstar/pipeline.hpp"
#include "vstar/text.hpp"
#include "vstar/tokenizer.hpp"

using namespace vstar;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;
using Recognizer = bool (*)(std::string_view);

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double x, int digits = 2) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << x;
  return os.str();
}

// A learning run together with the oracle its interpretation depends on.
struct FixtureRun {
  std::string name;
  std::unique_ptr<CachingOracle> oracle;
  LearnRun run;
  std::unique_ptr<Interpretation> interp;
  double seconds = 0;
};

FixtureRun learn_fixture(const std::string& name, const std::string& grammar, Mode mode,
                         std::vector<std::string> seeds) {
  FixtureRun f;
  f.name = name;
  f.oracle = std::make_unique<CachingOracle>(make_oracle("vpg:" + ref::fixture(grammar).string()));
  LearnConfig cfg;
  cfg.mode = mode;
  cfg.seeds = std::move(seeds);
  const auto t0 = Clock::now();
  f.run = run_learning(*f.oracle, cfg);
  f.seconds = seconds_since(t0);
  if (!f.run.inferred) throw std::runtime_error(name + ": inference found nothing");
  if (!f.run.learning.converged) throw std::runtime_error(name + ": learning did not converge");
  f.interp = f.run.model.interpretation(*f.oracle);
  return f;
}

std::vector<FixtureRun> g_runs;  // every fixture run, audited again by criterion 4

// ---------------------------------------------------------------------------

Outcome criterion1() {
  auto& f = g_runs.emplace_back(
      learn_fixture("fig1", "fig1.vpg", Mode::Char, read_seed_file(ref::fixture("fig1.seeds"))));
  Outcome o;
  const bool tagging_ok = f.run.model.tagging == Tagging({{'a', 'b'}});
  std::size_t exhaustive = 0, exhaustive_bad = 0;
  ref::for_each_string("abcdgh", 8, [&](const std::string& s) {
    ++exhaustive;
    exhaustive_bad += hypothesis_accepts(f.run.model.machine, *f.interp, s) != ref::fig1(s);
  });
  std::mt19937_64 rng(2024);
  std::size_t random_bad = 0;
  for (int i = 0; i < 100000; ++i) {
    auto s = ref::random_string(rng, "abcdgh", 16);
    random_bad += hypothesis_accepts(f.run.model.machine, *f.interp, s) != ref::fig1(s);
  }
  const double t = f.seconds;
  o.pass = tagging_ok && exhaustive_bad == 0 && random_bad == 0 && t < 300;
  o.detail = std::string("tagging ") + (tagging_ok ? "{(a,b)}" : "WRONG") + ", " +
             std::to_string(f.run.model.machine.state_count()) + " states, disagreements " +
             std::to_string(exhaustive_bad) + "/" + std::to_string(exhaustive) + " (len<=8) and " +
             std::to_string(random_bad) + "/100000 (random len<=16), learn " + fmt(t) + "s";
  return o;
}

// All token sequences over <p>, </p>, p of total length <= max_len whose open-tag
// depth never exceeds max_depth.
void for_each_token_sequence(std::size_t max_len, int max_depth, const std::function<void(const std::string&)>& fn) {
  std::function<void(std::string&, int)> go = [&](std::string& s, int depth) {
    fn(s);
    const std::pair<const char*, int> tokens[] = {{"<p>", 1}, {"</p>", -1}, {"p", 0}};
    for (const auto& [tok, delta] : tokens) {
      const std::size_t len = std::char_traits<char>::length(tok);
      if (s.size() + len > max_len) continue;
      const int d = std::max(0, depth + delta);
      if (d > max_depth) continue;
      s += tok;
      go(s, d);
      s.resize(s.size() - len);
    }
  };
  std::string s;
  go(s, 0);
}

Outcome criterion2() {
  const auto seeds = read_seed_file(ref::fixture("toy_xml.seeds"));
  auto& f = g_runs.emplace_back(learn_fixture("toy_xml", "toy_xml.vpg", Mode::Token, seeds));
  Outcome o;
  const auto& d = f.run.model.tokenizer;
  const bool pair_ok = d.size() == 1 && d.pairs[0].call.words_up_to(8, 5) == std::vector<std::string>{"<p>"} &&
                       d.pairs[0].ret.words_up_to(8, 5) == std::vector<std::string>{"</p>"};
  const std::string seed = "<p><p>p</p></p>";
  const auto image = f.interp->image(seed);
  const std::string shown = image ? to_display(*image) : "(none)";
  const bool conv_ok = shown == "<#0<p><#0<p>p</p>#0></p>#0>";
  std::size_t total = 0, bad = 0;
  for_each_token_sequence(20, 5, [&](const std::string& s) {
    ++total;
    bad += hypothesis_accepts(f.run.model.machine, *f.interp, s) != ref::toy_xml(s);
  });
  o.pass = pair_ok && conv_ok && bad == 0 && f.seconds < 300;
  o.detail = std::string("tokens ") + (pair_ok ? "(<p>,</p>)" : "WRONG") + ", conv(seed) = " + shown + ", " +
             std::to_string(f.run.model.machine.state_count()) + " states, disagreements " + std::to_string(bad) +
             "/" + std::to_string(total) + " token sequences, learn " + fmt(f.seconds) + "s";
  return o;
}

std::vector<std::string> benchmark_seeds(const Vpg& g) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  auto add = [&](std::string s) {
    if (out.size() < 70 && seen.insert(s).second) out.push_back(std::move(s));
  };
  for (auto& s : derive_seed_strings(g, 2)) add(std::move(s));
  for (const auto& w : sample_vpg(g, 40, 4, 7)) add(g.render(w));
  return out;
}

std::vector<std::string> held_out_positives(const Vpg& g, const std::vector<std::string>& seeds, std::size_t n) {
  std::set<std::string> seen(seeds.begin(), seeds.end());
  std::vector<std::string> out;
  for (std::uint64_t seed = 99; out.size() < n && seed < 99 + 200; ++seed) {
    for (const auto& w : sample_vpg(g, n, 6, seed)) {
      auto s = g.render(w);
      if (seen.insert(s).second) out.push_back(std::move(s));
      if (out.size() == n) break;
    }
  }
  return out;
}

Outcome criterion3() {
  struct Bench {
    const char* name;
    const char* grammar;
    Mode mode;
    Recognizer recognize;
  };
  const Bench benches[] = {{"mini_json", "mini_json.vpg", Mode::Char, ref::mini_json},
                           {"mini_lisp", "mini_lisp.vpg", Mode::Char, ref::mini_lisp},
                           {"mini_xml", "mini_xml.vpg", Mode::Token, ref::mini_xml}};
  Outcome o;
  double total_seconds = 0;
  for (const auto& b : benches) {
    const auto t0 = Clock::now();
    Vpg g = Vpg::parse(read_text_file(ref::fixture(b.grammar)));
    auto seeds = benchmark_seeds(g);
    auto held = held_out_positives(g, seeds, 500);
    bool data_ok = seeds.size() >= 20 && seeds.size() <= 70 && held.size() == 500;
    for (const auto& s : seeds) data_ok = data_ok && b.recognize(s);
    for (const auto& s : held) data_ok = data_ok && b.recognize(s);

    auto& f = g_runs.emplace_back(learn_fixture(b.name, b.grammar, b.mode, seeds));
    FunctionOracle judge(b.recognize);
    const double r = recall(f.run.model.machine, *f.interp, held);
    PrecisionOptions popt;
    popt.samples = 1000;
    const double p = precision(f.run.model.machine, *f.interp, judge, popt);
    const double f1v = f1(r, p);
    const double t = seconds_since(t0);
    total_seconds += t;
    const bool ok = data_ok && r == 1.0 && p == 1.0 && f1v == 1.0;
    o.pass = o.pass && ok;
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += std::string(b.name) + (b.mode == Mode::Char ? " char" : " token") + " seeds=" +
                std::to_string(seeds.size()) + " R=" + fmt(r) + " P=" + fmt(p) + " F1=" + fmt(f1v) + " " + fmt(t, 1) +
                "s" + (data_ok ? "" : " (bad data)");
  }
  o.pass = o.pass && total_seconds < 900;
  o.detail += "; total " + fmt(total_seconds, 1) + "s";
  return o;
}

Outcome criterion4() {
  Outcome o;
  for (const auto& f : g_runs) {
    const auto& L = f.run.learning;
    const double m = static_cast<double>(L.machine.state_count());
    const double sigma = static_cast<double>(L.machine.alphabet.symbol_count());
    const double n_max = static_cast<double>(std::max<std::size_t>(L.max_counterexample_length, 1));
    const double bound = 10 * (m * m * m * sigma * sigma + m * std::log2(n_max));
    std::size_t worst_excess = 0;
    bool ce_ok = true;
    for (const auto& r : L.trace) {
      if (!r.counterexample) continue;
      const auto budget =
          static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(std::max<std::size_t>(r.counterexample_length, 1))))) + 2;
      if (r.counterexample_queries > budget) {
        ce_ok = false;
        worst_excess = std::max(worst_excess, r.counterexample_queries - budget);
      }
    }
    const bool ok = static_cast<double>(L.learner_queries) <= bound && ce_ok;
    o.pass = o.pass && ok;
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += f.name + " " + std::to_string(L.learner_queries) + "<=" + fmt(bound, 0) +
                (ce_ok ? " ce ok" : " ce over by " + std::to_string(worst_excess));
  }
  return o;
}

Outcome criterion5() {
  Outcome o;
  FunctionOracle json(ref::json);
  PartialTokenizer braces;
  const std::string json_chars = "\"{}:truefalsn0123456789,[] ";
  braces.pairs.push_back({testsupport::literal_dfa("{", json_chars), testsupport::literal_dfa("}", json_chars)});
  const std::string s = R"({"{":true})";
  const auto m = tokenize(braces, s, json);
  const bool tok_ok = m.size() == 2 && m[0] == TokenMatch{0, TokenSide::Call, 1, 1} &&
                      m[1] == TokenMatch{0, TokenSide::Return, s.size(), s.size()};

  FunctionOracle fig1(ref::fig1);
  const auto ps = candidate_nesting(fig1, {"agcdcdhbcd"}, 2);
  const bool nest_ok = std::any_of(ps.begin(), ps.end(), [](const NestingPattern& p) {
    return p.u().empty() && p.x() == "ag" && p.z() == "cdcd" && p.y() == "hb";
  });

  const double f = std::round(f1(0.42, 0.98) * 100) / 100;
  const bool f1_ok = std::abs(f - 0.59) < 1e-9;

  o.pass = tok_ok && nest_ok && f1_ok;
  std::string matches;
  for (const auto& t : m) matches += "(" + std::to_string(t.start) + "," + std::to_string(t.end) + ")";
  o.detail = "tokenize " + matches + " on the " + std::to_string(s.size()) +
             "-character input (closing brace is the last character, position 10; 11 would lie past the end)" +
             ", candidateNesting has (ag,hb): " + (nest_ok ? "yes" : "no") + ", f1(0.42,0.98)=" + fmt(f);
  return o;
}

// --- criterion 6: randomized properties ------------------------------------

Tagging random_tagging(std::mt19937_64& rng, const std::string& chars) {
  std::string pool = chars;
  std::shuffle(pool.begin(), pool.end(), rng);
  const std::size_t k = std::uniform_int_distribution<std::size_t>(0, pool.size() / 2)(rng);
  std::vector<std::pair<char, char>> pairs;
  for (std::size_t i = 0; i < k; ++i) pairs.emplace_back(pool[2 * i], pool[2 * i + 1]);
  return Tagging(pairs);
}

TaggedString random_tagged(std::mt19937_64& rng, std::size_t pairs, std::size_t max_len) {
  const std::size_t len = std::uniform_int_distribution<std::size_t>(0, max_len)(rng);
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_int_distribution<std::size_t> pick(0, pairs - 1);
  TaggedString s;
  for (std::size_t i = 0; i < len; ++i) {
    const int k = kind(rng);
    if (k == 0) {
      s.push_back(TaggedSymbol::plain('c'));
    } else {
      const auto p = static_cast<std::uint16_t>(pick(rng));
      s.push_back({k == 1 ? SymbolKind::Call : SymbolKind::Return, p, static_cast<char>('a' + 2 * p + (k - 1)), false});
    }
  }
  return s;
}

// Plain stack matcher, independent of the library.
bool stack_matched(const TaggedString& s) {
  std::vector<std::uint16_t> stack;
  for (const auto& x : s) {
    if (x.is_call()) {
      stack.push_back(x.pair);
    } else if (x.is_return()) {
      if (stack.empty() || stack.back() != x.pair) return false;
      stack.pop_back();
    }
  }
  return stack.empty();
}

Sevpa random_sevpa(std::mt19937_64& rng, const TaggedAlphabet& a) {
  Sevpa m;
  m.alphabet = a;
  std::uniform_int_distribution<int> per_module(1, 3);
  std::vector<std::vector<int>> states(a.pair_count() + 1);
  for (std::size_t mod = 0; mod < states.size(); ++mod) {
    const int n = per_module(rng);
    for (int i = 0; i < n; ++i) {
      states[mod].push_back(static_cast<int>(m.module_of.size()));
      m.module_of.push_back(static_cast<int>(mod));
    }
    m.entry.push_back(states[mod][0]);
  }
  auto any_in = [&](int mod) {
    const auto& v = states[static_cast<std::size_t>(mod)];
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
  };
  const auto n = m.state_count();
  std::bernoulli_distribution coin(0.5);
  for (std::size_t q = 0; q < n; ++q) {
    std::vector<int> row;
    for (std::size_t c = 0; c < a.plain.size(); ++c) row.push_back(any_in(m.module_of[q]));
    m.plain_next.push_back(row);
    std::vector<int> ret;
    if (m.module_of[q] != 0) {
      for (std::size_t caller = 0; caller < n; ++caller) ret.push_back(any_in(m.module_of[caller]));
    }
    m.ret_next.push_back(ret);
    m.accepting.push_back(m.module_of[q] == 0 && coin(rng));
  }
  m.validate();
  return m;
}

// Every well-matched word over `a` of length <= max_len, built from
// W -> eps | c W | call W ret W.
std::vector<TaggedString> well_matched_words(const TaggedAlphabet& a, std::size_t max_len) {
  std::vector<std::vector<TaggedString>> by_len(max_len + 1);
  by_len[0].push_back({});
  for (std::size_t n = 1; n <= max_len; ++n) {
    for (char c : a.plain) {
      for (const auto& w : by_len[n - 1]) {
        TaggedString s{TaggedSymbol::plain(c)};
        s.insert(s.end(), w.begin(), w.end());
        by_len[n].push_back(std::move(s));
      }
    }
    if (n < 2) continue;
    for (std::size_t p = 0; p < a.pair_count(); ++p) {
      for (std::size_t i = 0; i + 2 <= n; ++i) {
        for (const auto& in : by_len[i]) {
          for (const auto& tail : by_len[n - 2 - i]) {
            TaggedString s{a.call(p)};
            s.insert(s.end(), in.begin(), in.end());
            s.push_back(a.ret(p));
            s.insert(s.end(), tail.begin(), tail.end());
            by_len[n].push_back(std::move(s));
          }
        }
      }
    }
  }
  std::vector<TaggedString> all;
  for (auto& v : by_len) all.insert(all.end(), v.begin(), v.end());
  return all;
}

Outcome criterion6() {
  constexpr int kCases = 1000;
  std::mt19937_64 rng(6);
  std::map<std::string, int> failures;
  std::map<std::string, int> cases;
  int audited_rounds = 0;

  // Tagging round-trip.
  for (int i = 0; i < kCases; ++i) {
    const std::string chars = "abcdefgh";
    const Tagging t = random_tagging(rng, chars);
    const auto s = ref::random_string(rng, chars, 20);
    const auto tagged = apply_tagging(t, s);
    bool ok = untag(tagged) == s && tagged.size() == s.size();
    for (std::size_t j = 0; j < s.size(); ++j) {
      const auto& x = tagged[j];
      ok = ok && (t.call_index(s[j]) >= 0) == x.is_call() && (t.return_index(s[j]) >= 0) == x.is_return();
    }
    ++cases["tagging round-trip"];
    failures["tagging round-trip"] += !ok;
  }

  // Well-matched iff the unmatched profile is empty.
  for (int i = 0; i < kCases; ++i) {
    TaggedString s = random_tagged(rng, 2, 12);
    if (i % 2 == 0) {
      // Bias half the cases towards balanced words.
      TaggedString balanced;
      std::vector<std::uint16_t> open;
      for (const auto& x : s) {
        if (x.is_call()) {
          balanced.push_back(x);
          open.push_back(x.pair);
        } else if (x.is_return() && !open.empty()) {
          balanced.push_back({SymbolKind::Return, open.back(), static_cast<char>('b' + 2 * open.back()), false});
          open.pop_back();
        } else {
          balanced.push_back(TaggedSymbol::plain('c'));
        }
      }
      while (!open.empty()) {
        balanced.push_back({SymbolKind::Return, open.back(), static_cast<char>('b' + 2 * open.back()), false});
        open.pop_back();
      }
      s = balanced;
    }
    const bool wm = stack_matched(s);
    const bool ok = is_well_matched(s) == wm && unmatched_profile(s).empty() == wm;
    ++cases["well-matched iff empty profile"];
    failures["well-matched iff empty profile"] += !ok;
  }

  // conv then erase gives the input back.
  {
    FunctionOracle xml(ref::toy_xml);
    PartialTokenizer d;
    d.pairs.push_back({testsupport::literal_dfa("<p>", "/<>p"), testsupport::literal_dfa("</p>", "/<>p")});
    std::vector<std::string> pieces = {"<p>", "</p>", "p", "<", ">", "/"};
    std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1), len(0, 8);
    for (int i = 0; i < kCases; ++i) {
      std::string s;
      for (std::size_t n = len(rng); n > 0; --n) s += pieces[pick(rng)];
      const auto m = tokenize(d, s, xml);
      const auto image = conv(s, m);
      const bool ok = erase_brackets(image) == s && untag(image) == s;
      ++cases["conv erase round-trip"];
      failures["conv erase round-trip"] += !ok;
    }
  }

  // toVpg derives exactly the words the machine accepts (length <= 10).
  {
    const auto one = make_tagged_alphabet(Alphabet("abc"), Tagging({{'a', 'b'}}));
    const auto two = make_tagged_alphabet(Alphabet("abcgh"), Tagging({{'a', 'b'}, {'g', 'h'}}));
    const auto words_one = well_matched_words(one, 10);
    const auto words_two = well_matched_words(two, 10);
    for (int i = 0; i < kCases; ++i) {
      const bool use_two = i % 10 == 0;
      const auto& a = use_two ? two : one;
      const auto& words = use_two ? words_two : words_one;
      const Sevpa m = random_sevpa(rng, a);
      std::set<TaggedString> accepted;
      for (const auto& w : words) {
        if (m.accepts(w)) accepted.insert(w);
      }
      const bool ok = testsupport::derivable_strings(m.to_vpg(), 10) == accepted;
      ++cases["toVpg language equals run"];
      failures["toVpg language equals run"] += !ok;
    }
  }

  // Separability and closedness audits after every learner step.
  {
    const Tagging t({{'a', 'b'}});
    const auto a = make_tagged_alphabet(Alphabet("abc"), t);
    int steps = 0;
    for (int i = 0; i < kCases; ++i) {
      const Sevpa target = random_sevpa(rng, a);
      FunctionOracle o([&](std::string_view s) { return target.accepts(apply_tagging(t, s)); });
      TaggingInterpretation interp(Alphabet("abc"), t);
      TaggedMembership member(o, interp);
      PerfectTeacher teacher(o, interp, 6);
      LearnOptions opts;
      opts.audit = true;
      bool ok = true;
      try {
        auto r = learn(member, teacher, opts);
        ok = r.converged;
        steps += static_cast<int>(r.rounds);
      } catch (const std::exception&) {
        ok = false;
      }
      ++cases["learner audits"];
      failures["learner audits"] += !ok;
    }
    audited_rounds = steps;
  }

  // The cache is transparent.
  {
    std::uniform_int_distribution<int> mod(2, 5);
    for (int i = 0; i < kCases; ++i) {
      const int k = mod(rng);
      auto fn = [k](std::string_view s) { return s.size() % static_cast<std::size_t>(k) == 0 || s.find("ab") != std::string_view::npos; };
      CachingOracle cache(std::make_shared<FunctionOracle>(fn));
      std::set<std::string> distinct;
      bool ok = true;
      for (int j = 0; j < 20; ++j) {
        const auto s = ref::random_string(rng, "ab", 4);
        distinct.insert(s);
        ok = ok && cache.query(s) == fn(s) && cache.peek(s) == fn(s);
      }
      const auto st = cache.stats();
      ok = ok && st.unique == distinct.size() && st.total_raw == 20 && st.cache_hits == 20 - distinct.size();
      ++cases["cache transparency"];
      failures["cache transparency"] += !ok;
    }
  }

  // L* learns random regular targets exactly.
  {
    std::uniform_int_distribution<std::size_t> states(1, 8);
    for (int i = 0; i < kCases; ++i) {
      const std::string alphabet = i % 2 ? "ab" : "abc";
      const Dfa target = testsupport::random_dfa(rng, states(rng), alphabet);
      auto member = [&](std::string_view w) { return testsupport::run_table(target, std::string(w)); };
      auto teacher = [&](const Dfa& h) { return testsupport::distinguishing_word(target, h); };
      const auto r = lstar_learn(member, alphabet, teacher);
      const bool ok = r.converged && !testsupport::distinguishing_word(target, r.dfa) &&
                      r.dfa.size() == testsupport::minimal_size(target);
      ++cases["L* exact"];
      failures["L* exact"] += !ok;
    }
  }

  Outcome o;
  for (const auto& [name, n] : cases) {
    const int bad = failures[name];
    o.pass = o.pass && bad == 0 && n >= kCases;
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += name + " " + std::to_string(n - bad) + "/" + std::to_string(n);
  }
  o.detail += " (" + std::to_string(audited_rounds) + " audited rounds)";
  return o;
}

Outcome criterion7() {
  Outcome o;
  struct Job {
    const char* name;
    const char* seeds;
    const char* grammar;
    Mode mode;
  };
  for (const auto& job : {Job{"fig1", "fig1.seeds", "fig1.vpg", Mode::Char},
                          Job{"toy_xml", "toy_xml.seeds", "toy_xml.vpg", Mode::Token}}) {
    std::vector<fs::path> dirs;
    for (int i = 0; i < 2; ++i) {
      auto dir = fs::temp_directory_path() / ("vstar_acceptance_" + std::string(job.name) + std::to_string(i));
      fs::remove_all(dir);
      LearnCommand lc;
      lc.cfg.mode = job.mode;
      lc.seeds_path = ref::fixture(job.seeds).string();
      lc.oracle_spec = "vpg:" + ref::fixture(job.grammar).string();
      lc.out_dir = dir.string();
      lc.name = job.name;
      std::ostringstream out, err;
      if (cmd_learn(lc, out, err) != 0) throw std::runtime_error(std::string(job.name) + ": " + err.str());
      dirs.push_back(dir);
    }
    for (const char* file : {"grammar.vpg", "report.json"}) {
      const bool same = read_text_file(dirs[0] / file) == read_text_file(dirs[1] / file);
      o.pass = o.pass && same;
      if (!o.detail.empty()) o.detail += ", ";
      o.detail += std::string(job.name) + "/" + file + (same ? " identical" : " DIFFERS");
    }
    for (const auto& d : dirs) fs::remove_all(d);
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* label;
    Outcome (*fn)();
  };
  const Criterion criteria[] = {
      {"C1 fig1 character mode", criterion1},
      {"C2 toy XML token mode", criterion2},
      {"C3 benchmark grammars", criterion3},
      {"C4 query bounds", criterion4},
      {"C5 micro-examples", criterion5},
      {"C6 randomized properties", criterion6},
      {"C7 deterministic output", criterion7},
  };
  bool all = true;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << c.label << ": " << o.detail << std::endl;
  }
  return all ? 0 : 1;
}
