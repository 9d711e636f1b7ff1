#include "fld/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fld/dataset.hpp"
#include "fld/proofgen.hpp"
#include "fld/scorer.hpp"
#include "fld/verify.hpp"

namespace fld {

namespace {

constexpr std::uint64_t kDefaultSeed = 3869;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("FLD_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
      throw Error(std::string("FLD_SEED is not an unsigned integer: ") + env);
    }
  }
  return kDefaultSeed;
}

void parse_depth_range(const std::string& text, int& lo, int& hi) {
  const std::size_t dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      lo = hi = std::stoi(text);
    } else {
      lo = std::stoi(text.substr(0, dots));
      hi = std::stoi(text.substr(dots + 2));
    }
  } catch (...) {
    throw CLI::ValidationError("--depth", "expected N or LO..HI, got '" + text + "'");
  }
}

std::array<double, 3> parse_label_weights(const std::string& text) {
  std::array<double, 3> out{};
  std::size_t pos = 0;
  for (int i = 0; i < 3; ++i) {
    std::size_t next = i < 2 ? text.find(':', pos) : text.size();
    if (next == std::string::npos) {
      throw CLI::ValidationError("--labels", "expected P:D:U weights, got '" + text + "'");
    }
    try {
      out[static_cast<std::size_t>(i)] = std::stod(text.substr(pos, next - pos));
    } catch (...) {
      throw CLI::ValidationError("--labels", "expected P:D:U weights, got '" + text + "'");
    }
    pos = next + 1;
  }
  return out;
}

std::vector<std::pair<std::string, int>> parse_splits(const std::string& text) {
  std::vector<std::pair<std::string, int>> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string part = text.substr(pos, comma - pos);
    const std::size_t colon = part.find(':');
    if (colon == std::string::npos) {
      throw CLI::ValidationError("--split", "expected name:count[,name:count...]");
    }
    try {
      out.push_back({part.substr(0, colon), std::stoi(part.substr(colon + 1))});
    } catch (...) {
      throw CLI::ValidationError("--split", "bad count in '" + part + "'");
    }
    pos = comma + 1;
  }
  return out;
}

int run_generate(const CorpusConfig& cfg) {
  const CorpusStats stats = generate_corpus(cfg);
  std::cout << "wrote " << cfg.count << " instances to " << cfg.out_path << "\n";
  std::cout << "stats sidecar: " << cfg.out_path << ".stats.json\n";
  std::cout << stats.to_json() << "\n";
  return kExitOk;
}

int run_score(const std::string& pred, const std::string& gold, bool per_depth,
              const std::string& out_path) {
  const ScoreReport report = score_corpus(pred, gold);
  const std::string json = report.to_json(per_depth);
  if (out_path.empty()) {
    std::cout << json << "\n";
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw Error("cannot open report output: " + out_path);
    out << json << "\n";
  }
  return kExitOk;
}

int run_verify(const std::string& corpus, const std::string& argset) {
  const std::vector<CorpusRecord> records = read_corpus(corpus);
  const std::vector<Violation> violations = verify_records(records, resolve_argset(argset));
  for (const Violation& v : violations) {
    std::cout << "instance " << v.index << ": " << v.reason << "\n";
  }
  std::cout << records.size() << " instances, " << violations.size() << " violations\n";
  return violations.empty() ? kExitOk : kExitViolations;
}

int run_derive(const std::string& target_text, const std::string& argset, int max_depth) {
  const std::vector<ArgumentScheme> targets = parse_schemes(target_text, "<target>");
  if (targets.size() != 1) throw Error("--target must contain exactly one scheme");
  const std::vector<ArgumentScheme> schemes = resolve_argset(argset);
  const std::optional<ProofTree> derivation = derive_argument(targets[0], schemes, max_depth);
  if (!derivation) {
    std::cout << "NOT_FOUND\n";
    return kExitOk;
  }
  std::cout << derivation->text();
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"deduction corpus generator, verifier and scorer"};
  app.require_subcommand(1);

  // generate
  CorpusConfig cfg;
  std::string depth_range = "1..8";
  std::string depth_dist = "uniform";
  std::string diversity = "more";
  std::string complexity = "complex";
  std::string labels = "1:1:1";
  std::string splits;
  CLI::App* generate = app.add_subcommand("generate", "generate a deduction corpus");
  generate->add_option("--arguments", cfg.argset,
                       "deduction rule set: axioms, implication, or a scheme file");
  generate->add_option("--depth", depth_range, "tree depth as N or LO..HI (max 8)");
  generate->add_option("--depth-dist", depth_dist, "depth distribution: uniform or skewed")
      ->check(CLI::IsMember({"uniform", "skewed"}));
  generate->add_option("--max-distractors", cfg.max_distractors, "distractors per instance, 0..20");
  generate->add_option("--diversity", diversity, "linguistic diversity: less or more")
      ->check(CLI::IsMember({"less", "more"}));
  generate->add_option("--complexity", complexity, "formula complexity: simple or complex")
      ->check(CLI::IsMember({"simple", "complex"}));
  generate->add_option("--count", cfg.count, "number of instances")->required();
  generate->add_option("--seed", cfg.seed, "master seed (FLD_SEED overrides the default)");
  generate->add_option("--out", cfg.out_path, "output JSONL path")->required();
  generate->add_option("--jobs", cfg.jobs, "parallel workers; output is order-independent");
  generate->add_option("--labels", labels, "label weights as P:D:U");
  generate->add_option("--split", splits, "consecutive splits, e.g. train:28000,test:2000");
  generate->add_option("--templates", cfg.template_path, "template file overriding the built-ins");
  generate->add_option("--vocab", cfg.vocab_path, "vocabulary file overriding the built-ins");

  // score
  std::string pred_path;
  std::string gold_path;
  std::string report_path;
  bool per_depth = false;
  CLI::App* score = app.add_subcommand("score", "score predicted proofs against a gold corpus");
  score->add_option("--pred", pred_path, "prediction file, one proof per line")->required();
  score->add_option("--gold", gold_path, "gold corpus JSONL")->required();
  score->add_flag("--per-depth", per_depth, "add a depth-wise breakdown");
  score->add_option("--out", report_path, "write the JSON report here instead of stdout");

  // verify
  std::string corpus_path;
  std::string verify_argset = "axioms";
  CLI::App* verify = app.add_subcommand("verify", "re-check every instance of a corpus");
  verify->add_option("--corpus", corpus_path, "corpus JSONL to audit")->required();
  verify->add_option("--arguments", verify_argset, "scheme set the corpus was generated with");

  // derive
  std::string target;
  std::string derive_argset = "axioms";
  int max_depth = kMaxTreeDepth;
  CLI::App* derive = app.add_subcommand("derive", "derive an argument from the scheme set");
  derive->add_option("--target", target, "target scheme, e.g. \"syl: (%F -> %G) |- ...\"")
      ->required();
  derive->add_option("--arguments", derive_argset, "scheme set to derive from");
  derive->add_option("--max-depth", max_depth, "derivation depth limit");

  try {
    cfg.seed = default_seed();
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (generate->parsed()) {
      parse_depth_range(depth_range, cfg.depth_lo, cfg.depth_hi);
      cfg.depth_dist =
          depth_dist == "skewed" ? DepthDistribution::Skewed : DepthDistribution::Uniform;
      cfg.diversity = diversity == "less" ? Diversity::Less : Diversity::More;
      cfg.complexity = complexity == "simple" ? Complexity::Simple : Complexity::Complex;
      cfg.label_weights = parse_label_weights(labels);
      if (!splits.empty()) cfg.splits = parse_splits(splits);
      if (cfg.count < 1) {
        std::cerr << "error: --count must be >= 1\n";
        return kExitUsage;
      }
      if (cfg.depth_lo < 0 || cfg.depth_lo > cfg.depth_hi || cfg.depth_hi > kMaxTreeDepth) {
        std::cerr << "error: --depth must satisfy 0 <= lo <= hi <= " << kMaxTreeDepth << "\n";
        return kExitUsage;
      }
      if (cfg.max_distractors < 0 || cfg.max_distractors > 20) {
        std::cerr << "error: --max-distractors must be in 0..20\n";
        return kExitUsage;
      }
      return run_generate(cfg);
    }
    if (score->parsed()) return run_score(pred_path, gold_path, per_depth, report_path);
    if (verify->parsed()) return run_verify(corpus_path, verify_argset);
    if (derive->parsed()) return run_derive(target, derive_argset, max_depth);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace fld
