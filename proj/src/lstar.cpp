#include "vstar/lstar.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "vstar/error.hpp"

namespace vstar {

namespace {

class Table {
 public:
  Table(const MemberFn& member, std::string alphabet) : member_(member), alphabet_(std::move(alphabet)) {
    access_.push_back("");
    tests_.push_back("");
  }

  bool ask(const std::string& w) {
    auto it = memo_.find(w);
    if (it != memo_.end()) return it->second;
    bool v = member_(w);
    memo_.emplace(w, v);
    return v;
  }

  std::vector<bool> row(const std::string& s) {
    std::vector<bool> r;
    r.reserve(tests_.size());
    for (const auto& e : tests_) r.push_back(ask(s + e));
    return r;
  }

  bool has_access(const std::string& s) const { return std::find(access_.begin(), access_.end(), s) != access_.end(); }

  // Adds s·a rows that match no access row until closed.
  void close() {
    bool changed = true;
    while (changed) {
      changed = false;
      std::map<std::vector<bool>, std::size_t> rows;
      for (const auto& s : access_) rows.emplace(row(s), 0);
      for (std::size_t i = 0; i < access_.size() && !changed; ++i) {
        for (char a : alphabet_) {
          std::string ext = access_[i] + a;
          if (!rows.count(row(ext))) {
            access_.push_back(ext);
            changed = true;
            break;
          }
        }
      }
    }
  }

  // Equal rows must have equal one-symbol successors; otherwise add a test.
  bool make_consistent() {
    for (std::size_t i = 0; i < access_.size(); ++i) {
      for (std::size_t j = i + 1; j < access_.size(); ++j) {
        if (row(access_[i]) != row(access_[j])) continue;
        for (char a : alphabet_) {
          for (std::size_t t = 0; t < tests_.size(); ++t) {
            std::string e = tests_[t];
            if (ask(access_[i] + a + e) != ask(access_[j] + a + e)) {
              tests_.push_back(std::string(1, a) + e);
              return false;
            }
          }
        }
      }
    }
    return true;
  }

  Dfa hypothesis() {
    std::map<std::vector<bool>, int> state_of;
    std::vector<std::string> reps;
    for (const auto& s : access_) {
      auto r = row(s);
      if (!state_of.count(r)) {
        state_of.emplace(r, static_cast<int>(reps.size()));
        reps.push_back(s);
      }
    }
    Dfa d;
    d.alphabet = alphabet_;
    d.trans.assign(reps.size(), std::vector<int>(alphabet_.size(), 0));
    d.accepting.assign(reps.size(), false);
    for (std::size_t q = 0; q < reps.size(); ++q) {
      d.accepting[q] = ask(reps[q]);
      for (std::size_t a = 0; a < alphabet_.size(); ++a) {
        auto it = state_of.find(row(reps[q] + alphabet_[a]));
        if (it == state_of.end()) throw InternalError("L* table not closed");
        d.trans[q][a] = it->second;
      }
    }
    return d;
  }

  void add_counterexample(const std::string& w) {
    for (std::size_t n = 1; n <= w.size(); ++n) {
      std::string p = w.substr(0, n);
      if (!has_access(p)) access_.push_back(p);
    }
  }

  std::size_t queries() const { return memo_.size(); }

 private:
  const MemberFn& member_;
  std::string alphabet_;
  std::vector<std::string> access_;
  std::vector<std::string> tests_;
  std::unordered_map<std::string, bool> memo_;
};

}  // namespace

LstarResult lstar_learn(const MemberFn& member, std::string alphabet, const DfaTeacher& teacher, LstarBudget budget) {
  std::sort(alphabet.begin(), alphabet.end(),
            [](char x, char y) { return static_cast<unsigned char>(x) < static_cast<unsigned char>(y); });
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  if (alphabet.empty()) throw DomainError("L* needs a non-empty alphabet");
  Table table(member, alphabet);
  LstarResult result;
  while (true) {
    do {
      table.close();
    } while (!table.make_consistent());
    result.dfa = table.hypothesis();
    ++result.rounds;
    if (result.dfa.size() > budget.max_states) break;
    auto ce = teacher(result.dfa);
    if (!ce) {
      result.converged = true;
      break;
    }
    if (result.dfa.accepts(*ce) == table.ask(*ce)) throw DomainError("teacher returned a word the hypothesis classifies correctly");
    if (result.rounds >= budget.max_rounds || result.dfa.size() >= budget.max_states) break;
    for (char c : *ce) {
      if (alphabet.find(c) == std::string::npos) throw DomainError("counterexample uses a character outside the alphabet");
    }
    table.add_counterexample(*ce);
  }
  result.membership_queries = table.queries();
  return result;
}

DfaTeacher finite_test_teacher(const MemberFn& member, std::vector<std::string> tests) {
  return [member, tests = std::move(tests)](const Dfa& h) -> std::optional<std::string> {
    for (const auto& t : tests) {
      if (h.accepts(t) != member(t)) return t;
    }
    return std::nullopt;
  };
}

}  // namespace vstar
