#include "vstar/evaluation.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <queue>

#include "vstar/equivalence.hpp"
#include "vstar/error.hpp"

namespace vstar {

double recall(const Sevpa& m, Interpretation& interp, const std::vector<std::string>& dataset) {
  if (dataset.empty()) throw DomainError("recall needs a non-empty dataset");
  std::size_t hits = 0;
  for (const auto& s : dataset) {
    auto img = interp.image(s);
    if (img && m.run(*img) == Verdict::Accept) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(dataset.size());
}

double precision(const Sevpa& m, Interpretation& interp, MembershipOracle& oracle, const PrecisionOptions& options) {
  if (options.samples == 0) throw DomainError("precision needs at least one sample");
  Vpg g = m.to_vpg();
  if (!g.productive()[static_cast<std::size_t>(g.start())]) throw DomainError("learned language is empty");
  std::size_t kept = 0, hits = 0;
  for (std::size_t batch = 0; batch < options.max_batches && kept < options.samples; ++batch) {
    for (const auto& w : sample_vpg(g, options.samples, options.max_depth, options.seed + batch)) {
      std::string s = untag(w);
      if (!hypothesis_accepts(m, interp, s)) continue;
      ++kept;
      if (oracle.query(s)) ++hits;
      if (kept == options.samples) break;
    }
  }
  if (kept == 0) throw DomainError("no sampled word is the image of a string");
  return static_cast<double>(hits) / static_cast<double>(kept);
}

double f1(double r, double p) {
  if (r <= 0 || p <= 0) return 0;
  return 2.0 / (1.0 / r + 1.0 / p);
}

namespace {

using Word = TaggedString;

bool shorter(const std::optional<Word>& a, const std::optional<Word>& b) {
  if (!b) return a.has_value();
  if (!a) return false;
  if (a->size() != b->size()) return a->size() < b->size();
  return *a < *b;
}

/// Shortest words per nonterminal, optionally requiring a non-empty word.
std::vector<std::optional<Word>> shortest_words(const Vpg& g, const std::vector<std::optional<Word>>* base) {
  const std::size_t n = g.size();
  std::vector<std::optional<Word>> best(n);
  const auto& any = base ? *base : best;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t nt = 0; nt < n; ++nt) {
      for (const auto& r : g.rules(static_cast<int>(nt))) {
        std::optional<Word> w;
        if (r.form == RuleForm::Empty) {
          if (base) continue;
          w = Word{};
        } else if (r.form == RuleForm::Linear) {
          if (!any[static_cast<std::size_t>(r.next)]) continue;
          w = concat({r.lead}, *any[static_cast<std::size_t>(r.next)]);
        } else {
          const auto& in = any[static_cast<std::size_t>(r.inner)];
          const auto& nx = any[static_cast<std::size_t>(r.next)];
          if (!in || !nx) continue;
          w = concat(concat({r.lead}, *in, {r.trail}), *nx);
        }
        if (shorter(w, best[nt])) {
          best[nt] = std::move(w);
          changed = true;
        }
      }
    }
  }
  return best;
}

struct Context {
  Word left, right;
};

/// Shortest context α, β with from ⇒* α·to·β (α = β = ε when from == to).
std::optional<Context> shortest_context(const Vpg& g, int from, int to, const std::vector<std::optional<Word>>& min) {
  const std::size_t n = g.size();
  std::vector<std::size_t> dist(n, std::numeric_limits<std::size_t>::max());
  std::vector<std::optional<Context>> ctx(n);
  using Item = std::pair<std::size_t, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[static_cast<std::size_t>(from)] = 0;
  ctx[static_cast<std::size_t>(from)] = Context{};
  queue.emplace(0, from);
  while (!queue.empty()) {
    auto [d, nt] = queue.top();
    queue.pop();
    if (d != dist[static_cast<std::size_t>(nt)]) continue;
    if (nt == to) return ctx[static_cast<std::size_t>(nt)];
    const Context& c = *ctx[static_cast<std::size_t>(nt)];
    auto relax = [&](int target, Word left, Word right) {
      std::size_t nd = d + left.size() + right.size();
      if (nd >= dist[static_cast<std::size_t>(target)]) return;
      dist[static_cast<std::size_t>(target)] = nd;
      ctx[static_cast<std::size_t>(target)] = Context{concat(c.left, left), concat(right, c.right)};
      queue.emplace(nd, target);
    };
    for (const auto& r : g.rules(nt)) {
      if (r.form == RuleForm::Linear) {
        relax(r.next, {r.lead}, {});
      } else if (r.form == RuleForm::Matching) {
        const auto& in = min[static_cast<std::size_t>(r.inner)];
        const auto& nx = min[static_cast<std::size_t>(r.next)];
        if (nx) relax(r.inner, {r.lead}, concat({r.trail}, *nx));
        if (in) relax(r.next, concat({r.lead}, *in, {r.trail}), {});
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<std::string> derive_seed_strings(const Vpg& g, std::size_t depth) {
  std::vector<std::string> out;
  if (g.start() < 0) return out;
  auto min = shortest_words(g, nullptr);
  auto min_nonempty = shortest_words(g, &min);
  auto pick = [&](int nt) -> std::optional<Word> {
    const auto& ne = min_nonempty[static_cast<std::size_t>(nt)];
    return ne ? ne : min[static_cast<std::size_t>(nt)];
  };
  for (std::size_t x = 0; x < g.size(); ++x) {
    const int owner = static_cast<int>(x);
    auto outer = shortest_context(g, g.start(), owner, min);
    if (!outer) continue;
    for (const auto& r : g.rules(owner)) {
      if (r.form != RuleForm::Matching) continue;
      auto loop = shortest_context(g, r.inner, owner, min);
      auto body = pick(owner);
      auto tail = pick(r.next);
      const auto& rest = min[static_cast<std::size_t>(r.next)];
      if (!loop || !body || !tail || !rest) continue;
      // X ⇒ a·α·X·β·b·Y: inner copies of Y take their shortest word, the
      // outermost one a non-empty word when it has one.
      for (std::size_t k = 1; k <= depth; ++k) {
        Word w = outer->left;
        for (std::size_t i = 0; i < k; ++i) w = concat(w, concat({r.lead}, loop->left));
        w = concat(w, *body);
        for (std::size_t i = 0; i < k; ++i) {
          w = concat(w, concat(loop->right, {r.trail}));
          w = concat(w, i + 1 == k ? *tail : *rest);
        }
        w = concat(w, outer->right);
        std::string s = g.render(w);
        if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(std::move(s));
      }
    }
  }
  return out;
}

nlohmann::json to_json(const EvalReport& r) {
  return {{"name", r.name},
          {"recall", r.recall},
          {"precision", r.precision},
          {"f1", r.f1},
          {"queries", r.queries},
          {"token_queries", r.token_queries},
          {"vpa_queries", r.vpa_queries},
          {"corpus_size", r.corpus_size},
          {"dataset_size", r.dataset_size},
          {"sample_size", r.sample_size}};
}

EvalReport eval_report_from_json(const nlohmann::json& j) {
  EvalReport r;
  r.name = j.value("name", "");
  r.recall = j.value("recall", 0.0);
  r.precision = j.value("precision", 0.0);
  r.f1 = j.value("f1", 0.0);
  r.queries = j.value("queries", std::uint64_t{0});
  r.token_queries = j.value("token_queries", std::uint64_t{0});
  r.vpa_queries = j.value("vpa_queries", std::uint64_t{0});
  r.corpus_size = j.value("corpus_size", std::size_t{0});
  r.dataset_size = j.value("dataset_size", std::size_t{0});
  r.sample_size = j.value("sample_size", std::size_t{0});
  return r;
}

std::string format_table(const std::vector<EvalReport>& rows) {
  auto pct = [](std::uint64_t part, std::uint64_t total) {
    return total == 0 ? 0.0 : 100.0 * static_cast<double>(part) / static_cast<double>(total);
  };
  std::vector<std::vector<std::string>> cells{
      {"Name", "Recall", "Precision", "F1", "#Queries", "%Q(Token)", "%Q(VPA)", "#TS", "Time"}};
  char buf[64];
  for (const auto& r : rows) {
    std::vector<std::string> line{r.name};
    for (double v : {r.recall, r.precision, r.f1}) {
      std::snprintf(buf, sizeof buf, "%.2f", v);
      line.emplace_back(buf);
    }
    line.push_back(std::to_string(r.queries));
    std::snprintf(buf, sizeof buf, "%.0f%%", pct(r.token_queries, r.queries));
    line.emplace_back(buf);
    std::snprintf(buf, sizeof buf, "%.0f%%", pct(r.vpa_queries, r.queries));
    line.emplace_back(buf);
    line.push_back(std::to_string(r.corpus_size));
    std::snprintf(buf, sizeof buf, "%.1fs", r.seconds);
    line.emplace_back(buf);
    cells.push_back(std::move(line));
  }
  std::vector<std::size_t> width(cells[0].size(), 0);
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
  }
  std::string out;
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      if (c > 0) out += "  ";
      std::string cell = line[c];
      // Name left-aligned, numbers right-aligned.
      if (c == 0) {
        out += cell + std::string(width[c] - cell.size(), ' ');
      } else {
        out += std::string(width[c] - cell.size(), ' ') + cell;
      }
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    out += '\n';
  }
  return out;
}

}  // namespace vstar
