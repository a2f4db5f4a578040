#pragma once

#include <array>
#include <vector>

#include <nlohmann/json.hpp>

#include "vstar/tagged.hpp"
#include "vstar/vpg.hpp"

namespace vstar {

enum class Verdict { Accept, Reject, IllFormed };

/// k-module single-entry VPA. Module 0 holds the initial state; module j+1
/// is entered only through entry[j+1] by calls of pair j. The stack symbol of
/// a call is (caller state, pair); since a return of pair j always pops a frame
/// of pair j in well-matched input, return transitions are indexed by the
/// current state (which lies in module j+1) and the caller state.
struct Sevpa {
  TaggedAlphabet alphabet;
  std::vector<int> module_of;               // per state
  std::vector<int> entry;                   // per module; entry[0] is the initial state
  std::vector<std::vector<int>> plain_next; // [state][plain symbol index]
  std::vector<std::vector<int>> ret_next;   // [state][caller state]; empty rows for module-0 states
  std::vector<bool> accepting;              // per state, only module-0 states may accept

  std::size_t k() const noexcept { return alphabet.pair_count(); }
  std::size_t state_count() const noexcept { return module_of.size(); }
  int initial() const { return entry.at(0); }

  /// Throws InternalError if tables are not total or break the single-entry shape.
  void validate() const;

  int plain_index(char c) const;  // -1 if unknown
  int step_plain(int state, char c) const;
  int step_call(std::size_t pair) const { return entry.at(pair + 1); }
  int step_return(int state, int caller) const;

  /// IllFormed for non-well-matched input; DomainError for symbols outside the alphabet.
  Verdict run(const TaggedString& s) const;
  bool accepts(const TaggedString& s) const { return run(s) == Verdict::Accept; }

  /// Grammar over nonterminals N{module}_{q}_{q'} plus start S, pruned.
  Vpg to_vpg() const;

  nlohmann::json to_json() const;
  static Sevpa from_json(const nlohmann::json& j);
};

}  // namespace vstar
