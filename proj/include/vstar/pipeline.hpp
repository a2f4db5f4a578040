#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "vstar/equivalence.hpp"
#include "vstar/evaluation.hpp"
#include "vstar/learner.hpp"
#include "vstar/nesting.hpp"
#include "vstar/oracle.hpp"
#include "vstar/sevpa.hpp"
#include "vstar/token_inference.hpp"

namespace vstar {

/// `vpg:<grammar file>` or `cmd:<command line>` (see parse_command_spec).
std::shared_ptr<MembershipOracle> make_oracle(std::string_view spec);

enum class Mode { Char, Token };
Mode parse_mode(std::string_view s);
std::string to_string(Mode m);

/// Everything needed to classify raw strings with a learned machine.
struct Model {
  Mode mode = Mode::Char;
  std::string chars;  // raw character set the machine was learned over
  Tagging tagging;
  PartialTokenizer tokenizer;
  Sevpa machine;

  nlohmann::json to_json() const;
  static Model from_json(const nlohmann::json& j);
  /// Token mode needs the oracle for repeatability probes.
  std::unique_ptr<Interpretation> interpretation(MembershipOracle& oracle) const;
};

struct LearnConfig {
  Mode mode = Mode::Char;
  std::vector<std::string> seeds;
  NestingLimits nesting;
  TokenLearnOptions token;
  CorpusLimits corpus;
  HypothesisSampling sampling;
  LearnOptions learn;
  /// When positive, equivalence is checked exhaustively against the oracle
  /// up to this length instead of the seed-combination corpus.
  std::size_t perfect_max_len = 0;
};

struct LearnRun {
  bool inferred = false;  // tagging/tokenizer found within the pumping cap
  Model model;
  LearnResult learning;
  std::vector<NestingPattern> patterns;
  std::size_t K = 0;
  std::vector<std::string> warnings;
  std::uint64_t inference_queries = 0;  // unique oracle queries during inference
  std::uint64_t learning_queries = 0;   // unique oracle queries during learning and equivalence
  std::size_t corpus_size = 0;
  double inference_seconds = 0;
  double learning_seconds = 0;
};

/// Inference (tags or tokens) followed by automaton learning. All oracle
/// traffic goes through `oracle`, whose statistics split the query counts.
LearnRun run_learning(CachingOracle& oracle, const LearnConfig& cfg);

nlohmann::json learn_report(const LearnRun& run, const std::string& name);

// Command entry points. They return the process exit code: 0 success,
// 1 error, and for learn 2 when inference or learning ran out of budget.

struct LearnCommand {
  LearnConfig cfg;
  std::string seeds_path;
  std::string oracle_spec;
  std::string out_dir;
  std::string name;
};
int cmd_learn(const LearnCommand& c, std::ostream& out, std::ostream& err);

struct EvalCommand {
  std::string model_dir;
  std::string dataset_path;
  std::string oracle_spec;
  PrecisionOptions precision;
  std::string out_path;  // defaults to <model_dir>/eval.json
};
int cmd_eval(const EvalCommand& c, std::ostream& out, std::ostream& err);

struct TokenizeCommand {
  std::string tokenizer_path;  // tokenizer.json or model.json
  std::string oracle_spec;     // empty: no repeatability probes succeed
  std::vector<std::string> inputs;
};
int cmd_tokenize(const TokenizeCommand& c, std::ostream& out, std::ostream& err);

struct ExportCommand {
  std::string model_dir;
  std::string format = "vpg";  // vpg | json
  std::string out_path;        // empty: stdout
};
int cmd_export(const ExportCommand& c, std::ostream& out, std::ostream& err);

struct InferTagsCommand {
  std::string seeds_path;
  std::string oracle_spec;
  NestingLimits nesting;
  std::string out_path;  // empty: stdout
};
int cmd_infer_tags(const InferTagsCommand& c, std::ostream& out, std::ostream& err);

struct SampleCommand {
  std::string grammar_path;
  std::size_t count = 50;
  std::size_t max_depth = 6;
  std::uint64_t seed = 1;
  bool derive = false;  // prepend derive_seed_strings output
  bool distinct = true;
  std::string out_path;  // empty: stdout
};
/// Writes strings of a reference grammar in seed-file format.
int cmd_sample(const SampleCommand& c, std::ostream& out, std::ostream& err);

}  // namespace vstar
