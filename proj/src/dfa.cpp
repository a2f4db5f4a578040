#include "vstar/dfa.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "vstar/error.hpp"
#include "vstar/text.hpp"

namespace vstar {

int Dfa::symbol_index(char c) const {
  auto pos = alphabet.find(c);
  return pos == std::string::npos ? -1 : static_cast<int>(pos);
}

int Dfa::step(int state, char c) const {
  int idx = symbol_index(c);
  if (idx < 0 || state < 0) return -1;
  return trans[static_cast<std::size_t>(state)][static_cast<std::size_t>(idx)];
}

bool Dfa::accepts(std::string_view s) const {
  int state = 0;
  for (char c : s) {
    state = step(state, c);
    if (state < 0) return false;
  }
  return accepting[static_cast<std::size_t>(state)];
}

std::optional<std::size_t> Dfa::longest_match(std::string_view s, std::size_t pos) const {
  std::optional<std::size_t> best;
  int state = 0;
  for (std::size_t i = pos; i < s.size(); ++i) {
    state = step(state, s[i]);
    if (state < 0) break;
    if (accepting[static_cast<std::size_t>(state)]) best = i - pos + 1;
  }
  return best;
}

bool Dfa::language_empty() const { return !shortest_word().has_value(); }

std::optional<std::string> Dfa::shortest_word() const {
  // BFS visiting symbols in alphabet order yields the length-lex minimum.
  std::vector<int> parent(size(), -2);
  std::vector<char> via(size(), 0);
  std::deque<int> queue{0};
  parent[0] = -1;
  while (!queue.empty()) {
    int q = queue.front();
    queue.pop_front();
    if (accepting[static_cast<std::size_t>(q)]) {
      std::string word;
      for (int cur = q; parent[static_cast<std::size_t>(cur)] >= 0; cur = parent[static_cast<std::size_t>(cur)]) {
        word += via[static_cast<std::size_t>(cur)];
      }
      std::reverse(word.begin(), word.end());
      return word;
    }
    for (std::size_t a = 0; a < alphabet.size(); ++a) {
      int t = trans[static_cast<std::size_t>(q)][a];
      if (parent[static_cast<std::size_t>(t)] == -2) {
        parent[static_cast<std::size_t>(t)] = q;
        via[static_cast<std::size_t>(t)] = alphabet[a];
        queue.push_back(t);
      }
    }
  }
  return std::nullopt;
}

std::vector<std::string> Dfa::words_up_to(std::size_t max_len, std::size_t limit) const {
  // Which states can still reach acceptance within r steps.
  std::vector<std::vector<bool>> live(max_len + 1, std::vector<bool>(size(), false));
  for (std::size_t q = 0; q < size(); ++q) live[0][q] = accepting[q];
  for (std::size_t r = 1; r <= max_len; ++r) {
    for (std::size_t q = 0; q < size(); ++q) {
      bool ok = accepting[q];
      for (std::size_t a = 0; a < alphabet.size() && !ok; ++a) ok = live[r - 1][static_cast<std::size_t>(trans[q][a])];
      live[r][q] = ok;
    }
  }
  std::vector<std::string> out;
  for (std::size_t len = 0; len <= max_len && out.size() < limit; ++len) {
    std::string word;
    // Iterative DFS in lexicographic order over words of exactly `len` symbols.
    struct Frame {
      int state;
      std::size_t next_symbol;
    };
    std::vector<Frame> stack{{0, 0}};
    while (!stack.empty() && out.size() < limit) {
      Frame& f = stack.back();
      if (word.size() == len) {
        if (accepting[static_cast<std::size_t>(f.state)]) out.push_back(word);
        stack.pop_back();
        if (!word.empty()) word.pop_back();
        continue;
      }
      if (f.next_symbol >= alphabet.size()) {
        stack.pop_back();
        if (!word.empty()) word.pop_back();
        continue;
      }
      std::size_t a = f.next_symbol++;
      int t = trans[static_cast<std::size_t>(f.state)][a];
      std::size_t remaining = len - word.size() - 1;
      if (!live[remaining][static_cast<std::size_t>(t)]) continue;
      word += alphabet[a];
      stack.push_back({t, 0});
    }
  }
  return out;
}

void Dfa::validate() const {
  if (trans.empty()) throw DomainError("DFA needs at least one state");
  if (accepting.size() != trans.size()) throw DomainError("DFA accepting table size mismatch");
  if (!std::is_sorted(alphabet.begin(), alphabet.end(),
                      [](char x, char y) { return static_cast<unsigned char>(x) < static_cast<unsigned char>(y); }) ||
      std::adjacent_find(alphabet.begin(), alphabet.end()) != alphabet.end()) {
    throw DomainError("DFA alphabet must be sorted and duplicate-free");
  }
  for (const auto& row : trans) {
    if (row.size() != alphabet.size()) throw DomainError("DFA transitions not total");
    for (int t : row) {
      if (t < 0 || static_cast<std::size_t>(t) >= trans.size()) throw DomainError("DFA transition out of range");
    }
  }
}

nlohmann::json Dfa::to_json() const {
  nlohmann::json acc = nlohmann::json::array();
  for (std::size_t q = 0; q < size(); ++q) {
    if (accepting[q]) acc.push_back(q);
  }
  return {{"alphabet", escape_bytes(alphabet)}, {"states", size()}, {"accepting", acc}, {"transitions", trans}};
}

Dfa Dfa::from_json(const nlohmann::json& j) {
  Dfa d;
  d.alphabet = unescape_bytes(j.at("alphabet").get<std::string>());
  d.trans = j.at("transitions").get<std::vector<std::vector<int>>>();
  if (d.trans.size() != j.at("states").get<std::size_t>()) throw DomainError("DFA state count mismatch");
  d.accepting.assign(d.trans.size(), false);
  for (auto q : j.at("accepting")) d.accepting.at(q.get<std::size_t>()) = true;
  d.validate();
  return d;
}

std::optional<std::string> intersection_witness(const Dfa& a, const Dfa& b) {
  // Only shared characters can occur in a common word.
  std::string shared;
  for (char c : a.alphabet) {
    if (b.symbol_index(c) >= 0) shared += c;
  }
  std::map<std::pair<int, int>, std::pair<std::pair<int, int>, char>> parent;
  std::deque<std::pair<int, int>> queue{{0, 0}};
  parent[{0, 0}] = {{-1, -1}, 0};
  while (!queue.empty()) {
    auto cur = queue.front();
    queue.pop_front();
    if (a.accepting[static_cast<std::size_t>(cur.first)] && b.accepting[static_cast<std::size_t>(cur.second)]) {
      std::string word;
      for (auto p = cur; p.first >= 0;) {
        const auto& [prev, c] = parent[p];
        if (prev.first < 0) break;
        word += c;
        p = prev;
      }
      std::reverse(word.begin(), word.end());
      return word;
    }
    for (char c : shared) {
      std::pair<int, int> next{a.step(cur.first, c), b.step(cur.second, c)};
      if (!parent.count(next)) {
        parent[next] = {cur, c};
        queue.push_back(next);
      }
    }
  }
  return std::nullopt;
}

}  // namespace vstar
