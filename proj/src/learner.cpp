#include "vstar/learner.hpp"

#include <algorithm>
#include <deque>
#include <tuple>

#include "vstar/error.hpp"
#include "vstar/text.hpp"

namespace vstar {

bool TaggedMembership::query(const TaggedString& word) {
  if (auto it = memo_.find(word); it != memo_.end()) return it->second;
  bool answer = false;
  if (is_well_matched(word)) {
    ++queries_;
    answer = oracle_.query(untag(word)) && interp_.is_canonical(word);
  }
  memo_.emplace(word, answer);
  return answer;
}

ObservationStructure::ObservationStructure(TaggedMembership& member, TaggedAlphabet alphabet)
    : member_(member), alphabet_(std::move(alphabet)) {
  const std::size_t modules = k() + 1;
  modules_.resize(modules);
  row_cache_.resize(modules);
  index_.resize(modules);
  modules_[0].tests.push_back({});
  for (std::size_t j = 0; j < k(); ++j) {
    for (std::size_t b = 0; b < k(); ++b) {
      modules_[j + 1].tests.push_back({{alphabet_.call(j)}, {alphabet_.ret(b)}});
    }
  }
  for (char c : alphabet_.plain) sigma_.push_back({TaggedSymbol::plain(c)});
  for (std::size_t m = 0; m < modules; ++m) add_access(m, {});
}

std::size_t ObservationStructure::access_count() const {
  std::size_t n = 0;
  for (const auto& m : modules_) n += m.access.size();
  return n;
}

TaggedString ObservationStructure::nested(std::size_t pair, const TaggedString& inner) const {
  TaggedString w;
  w.reserve(inner.size() + 2);
  w.push_back(alphabet_.call(pair));
  w.insert(w.end(), inner.begin(), inner.end());
  w.push_back(alphabet_.ret(pair));
  return w;
}

std::vector<bool> ObservationStructure::row(std::size_t module, const TaggedString& word) {
  auto& cached = row_cache_[module][word];
  const auto& tests = modules_[module].tests;
  for (std::size_t t = cached.size(); t < tests.size(); ++t) {
    cached.push_back(member_.query(concat(tests[t].prefix, word, tests[t].suffix)));
  }
  return cached;
}

bool ObservationStructure::c_equivalent(std::size_t module, const TaggedString& q1, const TaggedString& q2) {
  return row(module, q1) == row(module, q2);
}

ObservationStructure::ModuleIndex& ObservationStructure::index(std::size_t module) {
  auto& idx = index_[module];
  if (!idx.valid) {
    idx.by_row.clear();
    const auto& access = modules_[module].access;
    for (std::size_t i = 0; i < access.size(); ++i) idx.by_row.emplace(row(module, access[i]), i);
    idx.valid = true;
  }
  return idx;
}

std::optional<std::size_t> ObservationStructure::lookup(std::size_t module, const TaggedString& word) {
  auto& idx = index(module);
  auto it = idx.by_row.find(row(module, word));
  if (it == idx.by_row.end()) return std::nullopt;
  return it->second;
}

void ObservationStructure::add_access(std::size_t module, TaggedString word) {
  auto& access = modules_[module].access;
  if (std::find(access.begin(), access.end(), word) != access.end()) {
    throw InternalError("access word added twice");
  }
  access.push_back(word);
  if (index_[module].valid) index_[module].by_row.emplace(row(module, access.back()), access.size() - 1);
  if (module > 0) sigma_.push_back(nested(module - 1, access.back()));
}

void ObservationStructure::add_test(std::size_t module, TestContext test) {
  auto& tests = modules_[module].tests;
  if (std::find(tests.begin(), tests.end(), test) != tests.end()) throw InternalError("test context added twice");
  tests.push_back(std::move(test));
  index_[module].valid = false;
}

void ObservationStructure::close() {
  // (module, access index, Σ_M index), processed first-in first-out.
  std::deque<std::tuple<std::size_t, std::size_t, std::size_t>> work;
  for (std::size_t m = 0; m < modules_.size(); ++m) {
    for (std::size_t q = 0; q < modules_[m].access.size(); ++q) {
      for (std::size_t s = 0; s < sigma_.size(); ++s) work.emplace_back(m, q, s);
    }
  }
  while (!work.empty()) {
    auto [m, q, s] = work.front();
    work.pop_front();
    TaggedString ext = concat(modules_[m].access[q], sigma_[s]);
    if (lookup(m, ext)) continue;
    std::size_t sigma_before = sigma_.size();
    add_access(m, std::move(ext));
    std::size_t fresh = modules_[m].access.size() - 1;
    for (std::size_t t = 0; t < sigma_.size(); ++t) work.emplace_back(m, fresh, t);
    // A new module-(j+1) word yields a new nested word for every access word.
    for (std::size_t t = sigma_before; t < sigma_.size(); ++t) {
      for (std::size_t m2 = 0; m2 < modules_.size(); ++m2) {
        for (std::size_t q2 = 0; q2 < modules_[m2].access.size(); ++q2) {
          if (m2 == m && q2 == fresh) continue;
          work.emplace_back(m2, q2, t);
        }
      }
    }
  }
}

Sevpa ObservationStructure::construct() {
  const std::size_t modules = modules_.size();
  std::vector<std::size_t> offset(modules, 0);
  state_words_.clear();
  for (std::size_t m = 0; m < modules; ++m) {
    offset[m] = state_words_.size();
    for (std::size_t q = 0; q < modules_[m].access.size(); ++q) state_words_.emplace_back(m, q);
  }
  const std::size_t n = state_words_.size();
  auto target = [&](std::size_t m, const TaggedString& word) {
    auto found = lookup(m, word);
    if (!found) throw InternalError("observation structure is not closed");
    return static_cast<int>(offset[m] + *found);
  };

  Sevpa machine;
  machine.alphabet = alphabet_;
  machine.module_of.resize(n);
  machine.plain_next.assign(n, {});
  machine.ret_next.assign(n, {});
  machine.accepting.assign(n, false);
  for (std::size_t m = 0; m < modules; ++m) machine.entry.push_back(static_cast<int>(offset[m]));
  for (std::size_t s = 0; s < n; ++s) {
    auto [m, q] = state_words_[s];
    const TaggedString& word = modules_[m].access[q];
    machine.module_of[s] = static_cast<int>(m);
    for (char c : alphabet_.plain) machine.plain_next[s].push_back(target(m, concat(word, {TaggedSymbol::plain(c)})));
    if (m == 0) {
      machine.accepting[s] = member_.query(word);
    } else {
      TaggedString inner = nested(m - 1, word);
      for (std::size_t caller = 0; caller < n; ++caller) {
        auto [cm, cq] = state_words_[caller];
        machine.ret_next[s].push_back(target(cm, concat(modules_[cm].access[cq], inner)));
      }
    }
  }
  machine.validate();
  return machine;
}

std::size_t ObservationStructure::process_counterexample(const Sevpa& hypothesis, const TaggedString& ce) {
  if (!is_well_matched(ce)) throw DomainError("counterexample is not well-matched");
  if (hypothesis.state_count() != state_words_.size()) {
    throw InternalError("hypothesis does not belong to this observation structure");
  }
  const std::size_t before = member_.queries();
  const bool truth = member_.query(ce);
  if (hypothesis.accepts(ce) == truth) throw DomainError("string is not a counterexample for the hypothesis");
  const std::size_t n = ce.size();
  if (n == 0) throw InternalError("empty counterexample contradicts the acceptance table");

  // Configuration after each prefix of ce: state and stack of (caller, pair).
  using Frames = std::vector<std::pair<int, std::size_t>>;
  std::vector<int> states{hypothesis.initial()};
  std::vector<Frames> frames{{}};
  for (const auto& sym : ce) {
    int state = states.back();
    Frames f = frames.back();
    if (sym.is_plain()) {
      state = hypothesis.step_plain(state, sym.ch);
    } else if (sym.is_call()) {
      f.emplace_back(state, sym.pair);
      state = hypothesis.step_call(sym.pair);
    } else {
      state = hypothesis.step_return(state, f.back().first);
      f.pop_back();
    }
    states.push_back(state);
    frames.push_back(std::move(f));
  }

  auto word_of = [&](int state) -> const TaggedString& {
    auto [m, q] = state_words_[static_cast<std::size_t>(state)];
    return modules_[m].access[q];
  };
  auto context = [&](const Frames& f, std::size_t drop_top) {
    TaggedString w;
    for (std::size_t i = 0; i + drop_top < f.size(); ++i) {
      const auto& caller = word_of(f[i].first);
      w.insert(w.end(), caller.begin(), caller.end());
      w.push_back(alphabet_.call(f[i].second));
    }
    return w;
  };
  auto rest = [&](std::size_t from) { return TaggedString(ce.begin() + static_cast<std::ptrdiff_t>(from), ce.end()); };
  auto correct = [&](std::size_t idx) {
    return member_.query(concat(context(frames[idx], 0), word_of(states[idx]), rest(idx))) == truth;
  };

  std::size_t lo = 0, hi = n;  // correct(lo) holds, correct(hi) fails
  while (hi - lo > 1) {
    std::size_t mid = lo + (hi - lo) / 2;
    if (correct(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const std::size_t analysis_queries = member_.queries() - before;
  const TaggedSymbol& sym = ce[lo];
  const int state = states[lo];
  if (sym.is_plain()) {
    std::size_t m = static_cast<std::size_t>(hypothesis.module_of[static_cast<std::size_t>(state)]);
    add_test(m, {context(frames[lo], 0), rest(lo + 1)});
    add_access(m, concat(word_of(state), {sym}));
  } else if (sym.is_return()) {
    const auto& [caller, pair] = frames[lo].back();
    std::size_t m = static_cast<std::size_t>(hypothesis.module_of[static_cast<std::size_t>(caller)]);
    add_test(m, {context(frames[lo], 1), rest(lo + 1)});
    add_access(m, concat(word_of(caller), nested(pair, word_of(state))));
  } else {
    throw InternalError("counterexample analysis ended on a call symbol");
  }
  if (!separable()) throw InternalError("counterexample processing broke separability");
  return analysis_queries;
}

bool ObservationStructure::separable() {
  for (std::size_t m = 0; m < modules_.size(); ++m) {
    index_[m].valid = false;
    if (index(m).by_row.size() != modules_[m].access.size()) return false;
  }
  return true;
}

bool ObservationStructure::closed() {
  for (std::size_t m = 0; m < modules_.size(); ++m) {
    for (const auto& q : modules_[m].access) {
      for (const auto& s : sigma_) {
        if (!lookup(m, concat(q, s))) return false;
      }
    }
  }
  return true;
}

LearnResult learn(TaggedMembership& member, EquivalenceStrategy& eq, const LearnOptions& options) {
  ObservationStructure obs(member, member.interpretation().alphabet());
  auto audit = [&](const char* step) {
    if (!options.audit) return;
    if (!obs.separable()) throw InternalError(std::string("separability lost after ") + step);
    if (!obs.closed()) throw InternalError(std::string("closedness lost after ") + step);
  };
  obs.close();
  audit("initial close");
  LearnResult result;
  for (std::size_t round = 1;; ++round) {
    Sevpa hypothesis = obs.construct();
    RoundRecord record;
    record.round = round;
    for (const auto& m : obs.modules()) {
      record.access_sizes.push_back(m.access.size());
      record.test_sizes.push_back(m.tests.size());
    }
    auto ce = eq.find_counterexample(hypothesis);
    result.rounds = round;
    result.machine = std::move(hypothesis);
    if (!ce) {
      result.converged = true;
      record.unique_queries = member.queries();
      result.trace.push_back(std::move(record));
      break;
    }
    record.counterexample = ce->raw;
    record.counterexample_length = ce->tagged.size();
    if (round >= options.max_rounds || result.machine.state_count() >= options.max_states) {
      record.unique_queries = member.queries();
      result.trace.push_back(std::move(record));
      break;
    }
    result.max_counterexample_length = std::max(result.max_counterexample_length, ce->tagged.size());
    record.counterexample_queries = obs.process_counterexample(result.machine, ce->tagged);
    if (options.audit && !obs.separable()) throw InternalError("separability lost after counterexample");
    obs.close();
    audit("close");
    record.unique_queries = member.queries();
    result.trace.push_back(std::move(record));
  }
  result.learner_queries = member.queries();
  return result;
}

nlohmann::json to_json(const RoundRecord& r) {
  return {{"round", r.round},
          {"access_sizes", r.access_sizes},
          {"test_sizes", r.test_sizes},
          {"unique_queries", r.unique_queries},
          {"counterexample", r.counterexample ? nlohmann::json(escape_bytes(*r.counterexample)) : nlohmann::json()},
          {"counterexample_length", r.counterexample_length},
          {"counterexample_queries", r.counterexample_queries}};
}

std::string trace_jsonl(const std::vector<RoundRecord>& trace) {
  std::string out;
  for (const auto& r : trace) out += to_json(r).dump() + "\n";
  return out;
}

}  // namespace vstar
