#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vstar/pipeline.hpp"
#include "vstar/text.hpp"

namespace {

void add_nesting_flags(CLI::App* cmd, vstar::NestingLimits& n) {
  cmd->add_option("--nest-fragment", n.max_fragment, "Largest |x| and |y| in nesting patterns")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--k-cap", n.k_cap, "Largest pumping bound K")->check(CLI::Range(2, 64));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vstar: learn visibly pushdown grammars from a membership oracle and seed strings"};
  app.require_subcommand(1);

  vstar::LearnCommand learn;
  std::string mode = "char";
  auto* cl = app.add_subcommand("learn", "Infer tags or tokens, then learn a k-SEVPA and its grammar");
  cl->add_option("--seeds", learn.seeds_path, "Seed file, one escaped string per line")->required();
  cl->add_option("--oracle", learn.oracle_spec, "vpg:<grammar file> or cmd:<command, {} = input file>")->required();
  cl->add_option("--out", learn.out_dir, "Output directory")->required();
  cl->add_option("--mode", mode, "char or token")->check(CLI::IsMember({"char", "token"}));
  cl->add_option("--name", learn.name, "Label used in reports");
  cl->add_option("--max-fragment", learn.cfg.corpus.max_fragment, "Longest seed fragment in the test corpus")
      ->check(CLI::PositiveNumber);
  cl->add_option("--max-corpus", learn.cfg.corpus.max_corpus, "Test corpus size cap")->check(CLI::PositiveNumber);
  cl->add_option("--infixes", learn.cfg.corpus.infixes, "Infixes per corpus string")->check(CLI::Range(0, 2));
  cl->add_option("--hyp-samples", learn.cfg.sampling.samples,
                 "Hypothesis words checked per round once the corpus agrees (0 disables)");
  cl->add_option("--perfect", learn.cfg.perfect_max_len,
                 "Check equivalence exhaustively up to this length instead of the corpus");
  cl->add_option("--max-rounds", learn.cfg.learn.max_rounds, "Learning round budget")->check(CLI::PositiveNumber);
  cl->add_option("--max-states", learn.cfg.learn.max_states, "State budget")->check(CLI::PositiveNumber);
  add_nesting_flags(cl, learn.cfg.nesting);

  vstar::EvalCommand eval;
  auto* ce = app.add_subcommand("eval", "Recall, precision and F1 of a learned model");
  ce->add_option("--model", eval.model_dir, "Directory written by learn")->required();
  ce->add_option("--dataset", eval.dataset_path, "Held-out positive examples")->required();
  ce->add_option("--oracle", eval.oracle_spec, "Oracle spec")->required();
  ce->add_option("--samples", eval.precision.samples, "Strings sampled for precision")->check(CLI::PositiveNumber);
  ce->add_option("--max-depth", eval.precision.max_depth, "Sampling depth before termination bias");
  ce->add_option("--rng-seed", eval.precision.seed, "Sampler seed");
  ce->add_option("--out", eval.out_path, "Report path (default <model>/eval.json)");

  vstar::TokenizeCommand tok;
  std::string input_file;
  std::vector<std::string> literals;
  auto* ct = app.add_subcommand("tokenize", "Print call/return token matches and the bracketed image");
  ct->add_option("--tokenizer", tok.tokenizer_path, "tokenizer.json or model.json")->required();
  ct->add_option("--oracle", tok.oracle_spec, "Oracle for repeatability probes (default: none)");
  auto* in_opt = ct->add_option("--input", input_file, "File of escaped strings, one per line");
  ct->add_option("--string", literals, "Escaped input string")->excludes(in_opt);

  vstar::ExportCommand exp;
  auto* cx = app.add_subcommand("export", "Write the learned grammar or model");
  cx->add_option("--model", exp.model_dir, "Directory written by learn")->required();
  cx->add_option("--format", exp.format, "vpg or json")->check(CLI::IsMember({"vpg", "json"}));
  cx->add_option("--out", exp.out_path, "Output file (default stdout)");

  vstar::InferTagsCommand tags;
  auto* cg = app.add_subcommand("infer-tags", "Infer a character tagging and its nesting-pattern certificate");
  cg->add_option("--seeds", tags.seeds_path, "Seed file")->required();
  cg->add_option("--oracle", tags.oracle_spec, "Oracle spec")->required();
  cg->add_option("--out", tags.out_path, "Output file (default stdout)");
  add_nesting_flags(cg, tags.nesting);

  vstar::SampleCommand sample;
  bool keep_duplicates = false;
  auto* cs = app.add_subcommand("sample", "Draw strings from a reference grammar (seed-file format)");
  cs->add_option("--grammar", sample.grammar_path, "Grammar file")->required();
  cs->add_option("--count", sample.count, "Number of derivations to draw");
  cs->add_option("--max-depth", sample.max_depth, "Depth after which derivations head for termination");
  cs->add_option("--rng-seed", sample.seed, "Sampler seed");
  cs->add_flag("--derive", sample.derive, "Also emit the recursion witnesses of every matching rule");
  cs->add_flag("--keep-duplicates", keep_duplicates, "Do not drop repeated strings");
  cs->add_option("--out", sample.out_path, "Output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cl) {
      learn.cfg.mode = vstar::parse_mode(mode);
      return vstar::cmd_learn(learn, std::cout, std::cerr);
    }
    if (*ce) return vstar::cmd_eval(eval, std::cout, std::cerr);
    if (*ct) {
      if (!input_file.empty()) {
        tok.inputs = vstar::read_seed_file(input_file);
      } else {
        for (const auto& s : literals) tok.inputs.push_back(vstar::unescape_bytes(s));
      }
      return vstar::cmd_tokenize(tok, std::cout, std::cerr);
    }
    if (*cx) return vstar::cmd_export(exp, std::cout, std::cerr);
    if (*cg) return vstar::cmd_infer_tags(tags, std::cout, std::cerr);
    if (*cs) {
      sample.distinct = !keep_duplicates;
      return vstar::cmd_sample(sample, std::cout, std::cerr);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
