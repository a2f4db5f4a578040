#pragma once

// Random complete DFAs, Moore minimization and a product-BFS equivalence
// teacher, written against the plain Dfa tables only.

#include <map>
#include <optional>
#include <queue>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "vstar/dfa.hpp"

namespace testsupport {

inline vstar::Dfa random_dfa(std::mt19937_64& rng, std::size_t states, const std::string& alphabet) {
  vstar::Dfa d;
  d.alphabet = alphabet;
  std::uniform_int_distribution<int> to(0, static_cast<int>(states) - 1);
  std::bernoulli_distribution acc(0.4);
  d.trans.assign(states, std::vector<int>(alphabet.size()));
  d.accepting.assign(states, false);
  for (std::size_t q = 0; q < states; ++q) {
    for (auto& t : d.trans[q]) t = to(rng);
    d.accepting[q] = acc(rng);
  }
  return d;
}

/// Number of states of the minimal complete DFA for d's language.
inline std::size_t minimal_size(const vstar::Dfa& d) {
  // Reachable states first.
  std::vector<int> reach{0};
  std::vector<bool> seen(d.size(), false);
  seen[0] = true;
  for (std::size_t i = 0; i < reach.size(); ++i) {
    for (int t : d.trans[static_cast<std::size_t>(reach[i])]) {
      if (!seen[static_cast<std::size_t>(t)]) {
        seen[static_cast<std::size_t>(t)] = true;
        reach.push_back(t);
      }
    }
  }
  std::vector<int> cls(d.size(), 0);
  for (int q : reach) cls[static_cast<std::size_t>(q)] = d.accepting[static_cast<std::size_t>(q)] ? 1 : 0;
  std::size_t count = 0;
  while (true) {
    std::map<std::vector<int>, int> sig_ids;
    std::vector<int> next(d.size(), 0);
    for (int q : reach) {
      std::vector<int> sig{cls[static_cast<std::size_t>(q)]};
      for (int t : d.trans[static_cast<std::size_t>(q)]) sig.push_back(cls[static_cast<std::size_t>(t)]);
      auto [it, _] = sig_ids.emplace(sig, static_cast<int>(sig_ids.size()));
      next[static_cast<std::size_t>(q)] = it->second;
    }
    if (sig_ids.size() == count) break;
    count = sig_ids.size();
    cls = std::move(next);
  }
  return count;
}

/// Shortest word on which the two DFAs (same alphabet) disagree.
inline std::optional<std::string> distinguishing_word(const vstar::Dfa& a, const vstar::Dfa& b) {
  std::map<std::pair<int, int>, std::string> seen;
  std::queue<std::pair<int, int>> todo;
  seen[{0, 0}] = "";
  todo.push({0, 0});
  while (!todo.empty()) {
    auto [p, q] = todo.front();
    todo.pop();
    const std::string w = seen[{p, q}];
    if (a.accepting[static_cast<std::size_t>(p)] != b.accepting[static_cast<std::size_t>(q)]) return w;
    for (std::size_t i = 0; i < a.alphabet.size(); ++i) {
      std::pair<int, int> nxt{a.trans[static_cast<std::size_t>(p)][i], b.trans[static_cast<std::size_t>(q)][i]};
      if (seen.emplace(nxt, w + a.alphabet[i]).second) todo.push(nxt);
    }
  }
  return std::nullopt;
}

inline bool run_table(const vstar::Dfa& d, const std::string& w) {
  int q = 0;
  for (char c : w) q = d.trans[static_cast<std::size_t>(q)][d.alphabet.find(c)];
  return d.accepting[static_cast<std::size_t>(q)];
}

}  // namespace testsupport
