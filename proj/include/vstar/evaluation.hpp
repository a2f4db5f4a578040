#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vstar/interpretation.hpp"
#include "vstar/oracle.hpp"
#include "vstar/sevpa.hpp"
#include "vstar/vpg.hpp"

namespace vstar {

/// Fraction of dataset strings the learned machine accepts through `interp`.
/// Throws DomainError on an empty dataset.
double recall(const Sevpa& m, Interpretation& interp, const std::vector<std::string>& dataset);

struct PrecisionOptions {
  std::size_t samples = 1000;
  std::size_t max_depth = 12;
  std::uint64_t seed = 1;
  std::size_t max_batches = 100;  // grammar draws happen in batches of `samples`
};

/// Fraction of the machine's strings that the oracle accepts. Strings come from
/// the machine's grammar; a draw counts only when `interp` maps its untagged
/// text back to a word the machine accepts (a token-mode grammar also derives
/// words no string tokenizes to). Throws DomainError if no draw survives.
double precision(const Sevpa& m, Interpretation& interp, MembershipOracle& oracle,
                 const PrecisionOptions& options = {});

/// Harmonic mean; 0 when either argument is 0.
double f1(double r, double p);

/// For each matching rule X -> <a A b> Y where A can derive a sentential form
/// containing X again, strings that unfold that recursion 1..depth times.
std::vector<std::string> derive_seed_strings(const Vpg& g, std::size_t depth = 2);

struct EvalReport {
  std::string name;
  double recall = 0, precision = 0, f1 = 0;
  std::uint64_t queries = 0;        // unique oracle queries of the learning run
  std::uint64_t token_queries = 0;  // share spent on tagging or token inference
  std::uint64_t vpa_queries = 0;    // share spent on automaton learning
  std::size_t corpus_size = 0;      // #TS
  std::size_t dataset_size = 0;
  std::size_t sample_size = 0;
  double seconds = 0;  // wall time; kept out of the JSON for reproducibility
};

nlohmann::json to_json(const EvalReport& r);
EvalReport eval_report_from_json(const nlohmann::json& j);
/// Aligned table: Name, Recall, Precision, F1, #Queries, %Q(Token), %Q(VPA), #TS, Time.
std::string format_table(const std::vector<EvalReport>& rows);

}  // namespace vstar
