#include "vstar/pipeline.hpp"

#include <chrono>
#include <filesystem>
#include <ostream>
#include <set>

#include "vstar/error.hpp"
#include "vstar/process_oracle.hpp"
#include "vstar/tag_inference.hpp"
#include "vstar/text.hpp"
#include "vstar/vpg.hpp"

namespace vstar {

namespace fs = std::filesystem;
using nlohmann::json;

std::shared_ptr<MembershipOracle> make_oracle(std::string_view spec) {
  if (spec.starts_with("vpg:")) {
    return std::make_shared<VpgOracle>(Vpg::parse(read_text_file(std::string(spec.substr(4)))));
  }
  if (spec.starts_with("cmd:")) return std::make_shared<ExternalProcessOracle>(parse_command_spec(spec.substr(4)));
  throw DomainError("oracle spec must start with vpg: or cmd:, got \"" + std::string(spec) + "\"");
}

Mode parse_mode(std::string_view s) {
  if (s == "char") return Mode::Char;
  if (s == "token") return Mode::Token;
  throw DomainError("mode must be char or token, got \"" + std::string(s) + "\"");
}

std::string to_string(Mode m) { return m == Mode::Char ? "char" : "token"; }

json Model::to_json() const {
  json j{{"mode", vstar::to_string(mode)}, {"chars", escape_bytes(chars)}, {"machine", machine.to_json()}};
  if (mode == Mode::Char) {
    j["tagging"] = vstar::to_json(tagging);
  } else {
    j["tokenizer"] = tokenizer.to_json();
  }
  return j;
}

Model Model::from_json(const json& j) {
  Model m;
  m.mode = parse_mode(j.at("mode").get<std::string>());
  m.chars = unescape_bytes(j.at("chars").get<std::string>());
  if (m.mode == Mode::Char) {
    m.tagging = tagging_from_json(j.at("tagging"));
  } else {
    m.tokenizer = PartialTokenizer::from_json(j.at("tokenizer"));
  }
  m.machine = Sevpa::from_json(j.at("machine"));
  return m;
}

std::unique_ptr<Interpretation> Model::interpretation(MembershipOracle& oracle) const {
  if (mode == Mode::Char) return std::make_unique<TaggingInterpretation>(Alphabet(chars), tagging);
  return std::make_unique<TokenizerInterpretation>(Alphabet(chars), tokenizer, oracle);
}

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void write_json(const fs::path& path, const json& j) { write_text_file(path, j.dump(2) + "\n"); }

}  // namespace

LearnRun run_learning(CachingOracle& oracle, const LearnConfig& cfg) {
  if (cfg.seeds.empty()) throw DomainError("at least one seed is required");
  LearnRun run;
  run.model.mode = cfg.mode;
  run.model.chars = Alphabet::of_strings(cfg.seeds).chars();

  auto t0 = std::chrono::steady_clock::now();
  const auto before = oracle.stats().unique;
  if (cfg.mode == Mode::Char) {
    TagInferenceOptions options;
    options.nesting = cfg.nesting;
    auto r = tag_infer(oracle, cfg.seeds, options);
    run.patterns = std::move(r.patterns);
    run.K = r.K;
    if (r.tagging) {
      run.model.tagging = *r.tagging;
      run.inferred = true;
    }
  } else {
    TokenInferenceOptions options;
    options.nesting = cfg.nesting;
    options.learn = cfg.token;
    auto r = token_infer(oracle, cfg.seeds, options);
    run.patterns = std::move(r.patterns);
    run.K = r.K;
    run.warnings = std::move(r.warnings);
    if (r.tokenizer) {
      run.model.tokenizer = *r.tokenizer;
      run.inferred = true;
    }
  }
  const auto mid = oracle.stats().unique;
  run.inference_queries = mid - before;
  run.inference_seconds = seconds_since(t0);
  if (!run.inferred) return run;

  t0 = std::chrono::steady_clock::now();
  auto interp = run.model.interpretation(oracle);
  TaggedMembership member(oracle, *interp);
  std::unique_ptr<EquivalenceStrategy> eq;
  if (cfg.perfect_max_len > 0) {
    eq = std::make_unique<PerfectTeacher>(oracle, *interp, cfg.perfect_max_len);
  } else {
    auto corpus = build_corpus(cfg.seeds, *interp, cfg.corpus);
    run.corpus_size = corpus.size();
    eq = std::make_unique<SeedCombinationTeacher>(std::move(corpus), oracle);
  }
  HypothesisSamplingTeacher teacher(*eq, [&member](const TaggedString& w) { return member.query(w); }, cfg.sampling);
  run.learning = learn(member, teacher, cfg.learn);
  run.model.machine = run.learning.machine;
  run.learning_queries = oracle.stats().unique - mid;
  run.learning_seconds = seconds_since(t0);
  return run;
}

json learn_report(const LearnRun& run, const std::string& name) {
  EvalReport stub;
  stub.name = name;
  stub.token_queries = run.inference_queries;
  stub.vpa_queries = run.learning_queries;
  stub.queries = run.inference_queries + run.learning_queries;
  stub.corpus_size = run.corpus_size;
  json j = to_json(stub);
  j["mode"] = to_string(run.model.mode);
  j["inferred"] = run.inferred;
  j["converged"] = run.learning.converged;
  j["rounds"] = run.learning.rounds;
  j["states"] = run.learning.machine.state_count();
  j["learner_queries"] = run.learning.learner_queries;
  j["max_counterexample_length"] = run.learning.max_counterexample_length;
  j["K"] = run.K;
  j["patterns"] = run.patterns.size();
  j["warnings"] = run.warnings;
  if (run.inferred) {
    if (run.model.mode == Mode::Char) {
      j["tagging"] = to_json(run.model.tagging);
    } else {
      j["token_pairs"] = run.model.tokenizer.size();
    }
  }
  return j;
}

int cmd_learn(const LearnCommand& c, std::ostream& out, std::ostream& err) {
  try {
    LearnConfig cfg = c.cfg;
    cfg.seeds = read_seed_file(c.seeds_path);
    if (cfg.seeds.empty()) throw DomainError("seed file has no seeds: " + c.seeds_path);
    CachingOracle oracle(make_oracle(c.oracle_spec));
    LearnRun run = run_learning(oracle, cfg);

    const fs::path dir(c.out_dir);
    fs::create_directories(dir);
    json patterns = json::array();
    for (const auto& p : run.patterns) patterns.push_back(to_json(p));
    write_json(dir / "patterns.json", patterns);
    write_json(dir / "report.json", learn_report(run, c.name));
    write_json(dir / "timing.json", {{"inference_seconds", run.inference_seconds},
                                     {"learning_seconds", run.learning_seconds},
                                     {"total_seconds", run.inference_seconds + run.learning_seconds}});
    if (!run.inferred) {
      err << "no compatible " << (cfg.mode == Mode::Char ? "tagging" : "tokenizer") << " found up to K=" << run.K
          << "\n";
      return 2;
    }
    if (cfg.mode == Mode::Char) {
      write_json(dir / "tagging.json", to_json(run.model.tagging));
    } else {
      write_json(dir / "tokenizer.json", run.model.tokenizer.to_json());
    }
    write_json(dir / "model.json", run.model.to_json());
    write_text_file(dir / "grammar.vpg", run.model.machine.to_vpg().to_text());
    write_text_file(dir / "trace.jsonl", trace_jsonl(run.learning.trace));
    for (const auto& w : run.warnings) err << "warning: " << w << "\n";
    out << "states " << run.model.machine.state_count() << ", rounds " << run.learning.rounds << ", queries "
        << run.inference_queries + run.learning_queries << "\n";
    if (!run.learning.converged) {
      err << "learning stopped by budget before the teacher agreed\n";
      return 2;
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_eval(const EvalCommand& c, std::ostream& out, std::ostream& err) {
  try {
    const fs::path dir(c.model_dir);
    Model model = Model::from_json(json::parse(read_text_file(dir / "model.json")));
    auto dataset = read_seed_file(c.dataset_path);
    if (dataset.empty()) throw DomainError("dataset is empty, recall is undefined: " + c.dataset_path);
    auto oracle = make_oracle(c.oracle_spec);
    auto interp = model.interpretation(*oracle);

    EvalReport r;
    if (fs::exists(dir / "report.json")) r = eval_report_from_json(json::parse(read_text_file(dir / "report.json")));
    if (fs::exists(dir / "timing.json")) {
      r.seconds = json::parse(read_text_file(dir / "timing.json")).value("total_seconds", 0.0);
    }
    r.recall = recall(model.machine, *interp, dataset);
    r.precision = precision(model.machine, *interp, *oracle, c.precision);
    r.f1 = f1(r.recall, r.precision);
    r.dataset_size = dataset.size();
    r.sample_size = c.precision.samples;
    write_json(c.out_path.empty() ? dir / "eval.json" : fs::path(c.out_path), to_json(r));
    out << format_table({r});
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_tokenize(const TokenizeCommand& c, std::ostream& out, std::ostream& err) {
  try {
    json j = json::parse(read_text_file(c.tokenizer_path));
    PartialTokenizer d = PartialTokenizer::from_json(j.contains("tokenizer") ? j.at("tokenizer") : j);
    std::shared_ptr<MembershipOracle> oracle =
        c.oracle_spec.empty() ? std::make_shared<FunctionOracle>([](std::string_view) { return false; })
                              : make_oracle(c.oracle_spec);
    for (const auto& s : c.inputs) {
      auto matches = tokenize(d, s, *oracle);
      for (const auto& m : matches) {
        out << m.pair << ' ' << (m.side == TokenSide::Call ? "call" : "return") << ' ' << m.start << ' ' << m.end
            << ' ' << escape_bytes(s.substr(m.start - 1, m.end - m.start + 1)) << "\n";
      }
      if (!s.empty()) out << "conv " << escape_bytes(to_display(conv(s, matches))) << "\n";
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_export(const ExportCommand& c, std::ostream& out, std::ostream& err) {
  try {
    Model model = Model::from_json(json::parse(read_text_file(fs::path(c.model_dir) / "model.json")));
    std::string text;
    if (c.format == "vpg") {
      text = model.machine.to_vpg().to_text();
    } else if (c.format == "json") {
      text = model.to_json().dump(2) + "\n";
    } else {
      throw DomainError("export format must be vpg or json, got \"" + c.format + "\"");
    }
    if (c.out_path.empty()) {
      out << text;
    } else {
      write_text_file(c.out_path, text);
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_infer_tags(const InferTagsCommand& c, std::ostream& out, std::ostream& err) {
  try {
    auto seeds = read_seed_file(c.seeds_path);
    if (seeds.empty()) throw DomainError("seed file has no seeds: " + c.seeds_path);
    CachingOracle oracle(make_oracle(c.oracle_spec));
    TagInferenceOptions options;
    options.nesting = c.nesting;
    auto r = tag_infer(oracle, seeds, options);
    json patterns = json::array();
    for (const auto& p : r.patterns) patterns.push_back(to_json(p));
    json j{{"tagging", r.tagging ? to_json(*r.tagging) : json()}, {"K", r.K}, {"patterns", patterns}};
    if (c.out_path.empty()) {
      out << j.dump(2) << "\n";
    } else {
      write_json(c.out_path, j);
    }
    if (!r.tagging) {
      err << "no compatible tagging found up to K=" << r.K << "\n";
      return 2;
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_sample(const SampleCommand& c, std::ostream& out, std::ostream& err) {
  try {
    Vpg g = Vpg::parse(read_text_file(c.grammar_path));
    std::vector<std::string> strings;
    if (c.derive) strings = derive_seed_strings(g, 2);
    for (const auto& w : sample_vpg(g, c.count, c.max_depth, c.seed)) strings.push_back(g.render(w));
    if (c.distinct) {
      std::vector<std::string> unique;
      std::set<std::string> seen;
      for (auto& s : strings) {
        if (seen.insert(s).second) unique.push_back(std::move(s));
      }
      strings = std::move(unique);
    }
    if (c.out_path.empty()) {
      for (const auto& s : strings) out << escape_bytes(s) << "\n";
    } else {
      write_seed_file(c.out_path, strings);
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace vstar
