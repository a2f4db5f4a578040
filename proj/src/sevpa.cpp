#include "vstar/sevpa.hpp"

#include <string>

#include "vstar/error.hpp"
#include "vstar/text.hpp"

namespace vstar {

void Sevpa::validate() const {
  const std::size_t n = state_count();
  const std::size_t modules = k() + 1;
  if (entry.size() != modules) throw InternalError("entry table size differs from module count");
  if (plain_next.size() != n || ret_next.size() != n || accepting.size() != n) {
    throw InternalError("transition tables do not cover every state");
  }
  for (std::size_t m = 0; m < modules; ++m) {
    int e = entry[m];
    if (e < 0 || static_cast<std::size_t>(e) >= n || module_of[static_cast<std::size_t>(e)] != static_cast<int>(m)) {
      throw InternalError("module entry outside its module");
    }
  }
  for (std::size_t q = 0; q < n; ++q) {
    int m = module_of[q];
    if (m < 0 || static_cast<std::size_t>(m) >= modules) throw InternalError("state in unknown module");
    if (accepting[q] && m != 0) throw InternalError("accepting state outside module 0");
    if (plain_next[q].size() != alphabet.plain.size()) throw InternalError("plain transitions not total");
    for (int t : plain_next[q]) {
      if (t < 0 || static_cast<std::size_t>(t) >= n || module_of[static_cast<std::size_t>(t)] != m) {
        throw InternalError("plain transition leaves its module");
      }
    }
    if (m == 0) {
      if (!ret_next[q].empty()) throw InternalError("module-0 state has return transitions");
      continue;
    }
    if (ret_next[q].size() != n) throw InternalError("return transitions not total");
    for (std::size_t caller = 0; caller < n; ++caller) {
      int t = ret_next[q][caller];
      if (t < 0 || static_cast<std::size_t>(t) >= n || module_of[static_cast<std::size_t>(t)] != module_of[caller]) {
        throw InternalError("return transition does not resume the caller's module");
      }
    }
  }
}

int Sevpa::plain_index(char c) const {
  auto pos = alphabet.plain.find(c);
  return pos == std::string::npos ? -1 : static_cast<int>(pos);
}

int Sevpa::step_plain(int state, char c) const {
  int idx = plain_index(c);
  if (idx < 0) throw DomainError("plain symbol '" + escape_bytes(std::string(1, c)) + "' outside the machine alphabet");
  return plain_next.at(static_cast<std::size_t>(state))[static_cast<std::size_t>(idx)];
}

int Sevpa::step_return(int state, int caller) const {
  return ret_next.at(static_cast<std::size_t>(state)).at(static_cast<std::size_t>(caller));
}

Verdict Sevpa::run(const TaggedString& s) const {
  for (const auto& sym : s) {
    if (sym.is_plain()) {
      if (sym.artificial || plain_index(sym.ch) < 0) {
        throw DomainError("plain symbol '" + escape_bytes(std::string(1, sym.ch)) + "' outside the machine alphabet");
      }
    } else if (sym.pair >= k() || sym.artificial != alphabet.pairs[sym.pair].artificial) {
      throw DomainError("bracket symbol outside the machine alphabet");
    }
  }
  if (!is_well_matched(s)) return Verdict::IllFormed;
  int state = initial();
  std::vector<int> callers;
  for (const auto& sym : s) {
    switch (sym.kind) {
      case SymbolKind::Plain: state = step_plain(state, sym.ch); break;
      case SymbolKind::Call:
        callers.push_back(state);
        state = step_call(sym.pair);
        break;
      case SymbolKind::Return:
        state = step_return(state, callers.back());
        callers.pop_back();
        break;
    }
  }
  return accepting[static_cast<std::size_t>(state)] ? Verdict::Accept : Verdict::Reject;
}

Vpg Sevpa::to_vpg() const {
  validate();
  const std::size_t n = state_count();
  Vpg g;
  for (const auto& b : alphabet.pairs) g.add_bracket(b);
  // Nonterminal N[q,q'] for q,q' in the same module.
  std::vector<std::vector<int>> nt(n, std::vector<int>(n, -1));
  for (std::size_t q = 0; q < n; ++q) {
    for (std::size_t r = 0; r < n; ++r) {
      if (module_of[q] != module_of[r]) continue;
      nt[q][r] = g.add_nonterminal("N" + std::to_string(module_of[q]) + "_" + std::to_string(q) + "_" +
                                   std::to_string(r));
    }
  }
  auto rules_for = [&](std::size_t q, std::size_t target) {
    std::vector<VpgRule> rules;
    if (q == target) rules.push_back(VpgRule::empty());
    for (std::size_t c = 0; c < alphabet.plain.size(); ++c) {
      auto next = static_cast<std::size_t>(plain_next[q][c]);
      rules.push_back(VpgRule::linear(TaggedSymbol::plain(alphabet.plain[c]), nt[next][target]));
    }
    for (std::size_t j = 0; j < k(); ++j) {
      auto e = static_cast<std::size_t>(entry[j + 1]);
      for (std::size_t q2 = 0; q2 < n; ++q2) {
        if (module_of[q2] != static_cast<int>(j + 1)) continue;
        auto q3 = static_cast<std::size_t>(ret_next[q2][q]);
        rules.push_back(VpgRule::matching(alphabet.call(j), nt[e][q2], alphabet.ret(j), nt[q3][target]));
      }
    }
    return rules;
  };
  for (std::size_t q = 0; q < n; ++q) {
    for (std::size_t r = 0; r < n; ++r) {
      if (nt[q][r] < 0) continue;
      for (const auto& rule : rules_for(q, r)) g.add_rule(nt[q][r], rule);
    }
  }
  int start = g.add_nonterminal("S");
  auto q0 = static_cast<std::size_t>(initial());
  for (std::size_t f = 0; f < n; ++f) {
    if (!accepting[f]) continue;
    for (const auto& rule : rules_for(q0, f)) g.add_rule(start, rule);
  }
  g.set_start(start);
  return g.pruned();
}

nlohmann::json Sevpa::to_json() const {
  nlohmann::json modules = nlohmann::json::array();
  for (std::size_t m = 0; m < entry.size(); ++m) {
    nlohmann::json states = nlohmann::json::array();
    for (std::size_t q = 0; q < state_count(); ++q) {
      if (module_of[q] == static_cast<int>(m)) states.push_back(q);
    }
    modules.push_back({{"states", states}, {"entry", entry[m]}});
  }
  nlohmann::json acc = nlohmann::json::array();
  for (std::size_t q = 0; q < state_count(); ++q) {
    if (accepting[q]) acc.push_back(q);
  }
  return {{"k", k()},
          {"alphabet", vstar::to_json(alphabet)},
          {"states", state_count()},
          {"modules", modules},
          {"accepting", acc},
          {"plain", plain_next},
          {"ret", ret_next}};
}

Sevpa Sevpa::from_json(const nlohmann::json& j) {
  Sevpa m;
  m.alphabet = tagged_alphabet_from_json(j.at("alphabet"));
  if (j.at("k").get<std::size_t>() != m.alphabet.pair_count()) throw DomainError("k disagrees with the alphabet");
  auto n = j.at("states").get<std::size_t>();
  m.module_of.assign(n, -1);
  m.accepting.assign(n, false);
  for (std::size_t mod = 0; mod < j.at("modules").size(); ++mod) {
    const auto& entry = j.at("modules")[mod];
    for (auto q : entry.at("states")) m.module_of.at(q.get<std::size_t>()) = static_cast<int>(mod);
    m.entry.push_back(entry.at("entry").get<int>());
  }
  for (auto q : j.at("accepting")) m.accepting.at(q.get<std::size_t>()) = true;
  m.plain_next = j.at("plain").get<std::vector<std::vector<int>>>();
  m.ret_next = j.at("ret").get<std::vector<std::vector<int>>>();
  try {
    m.validate();
  } catch (const InternalError& e) {
    throw DomainError(std::string("invalid machine: ") + e.what());
  }
  return m;
}

}  // namespace vstar
