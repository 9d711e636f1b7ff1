#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "fld/cli.hpp"
#include "fld/dataset.hpp"
#include "fld/scorer.hpp"

using namespace fld;

TEST_SUITE_BEGIN("cli");

namespace {

struct CliResult {
  int code = 0;
  std::string out;
};

CliResult cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv = {"fld"};
  for (const std::string& a : args) argv.push_back(a.c_str());

  std::ostringstream captured;
  std::streambuf* old = std::cout.rdbuf(captured.rdbuf());
  int code = run_cli(static_cast<int>(argv.size()), argv.data());
  std::cout.rdbuf(old);
  return {code, captured.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

void write_lines(const std::string& path, const std::vector<std::string>& lines) {
  std::ofstream out(path, std::ios::binary);
  for (const std::string& l : lines) out << l << "\n";
}

struct TempFiles {
  std::vector<std::string> paths;
  ~TempFiles() {
    for (const std::string& p : paths) std::remove(p.c_str());
  }
  const char* track(const std::string& p) {
    paths.push_back(p);
    return paths.back().c_str();
  }
};

}  // namespace

TEST_CASE("generate writes a corpus and is reproducible flag-for-flag") {
  TempFiles tmp;
  tmp.track("cli_gen_a.jsonl");
  tmp.track("cli_gen_a.jsonl.stats.json");
  tmp.track("cli_gen_b.jsonl");
  tmp.track("cli_gen_b.jsonl.stats.json");

  const std::vector<std::string> base = {
      "generate",       "--arguments", "axioms", "--depth",      "1..3",
      "--depth-dist",   "uniform",     "--max-distractors", "6", "--diversity",
      "less",           "--complexity", "complex", "--count",    "12",
      "--seed",         "42"};
  std::vector<std::string> a = base;
  a.push_back("--out");
  a.push_back("cli_gen_a.jsonl");
  std::vector<std::string> b = base;
  b.push_back("--out");
  b.push_back("cli_gen_b.jsonl");

  CHECK(cli(a).code == kExitOk);
  CHECK(cli(b).code == kExitOk);
  CHECK(slurp("cli_gen_a.jsonl") == slurp("cli_gen_b.jsonl"));
  CHECK(read_corpus("cli_gen_a.jsonl").size() == 12);
}

TEST_CASE("bad usage exits with the usage code") {
  CHECK(cli({"generate", "--count", "0", "--out", "x.jsonl"}).code == kExitUsage);
  CHECK(cli({"generate", "--count", "5"}).code == kExitUsage);  // --out missing
  CHECK(cli({"generate", "--count", "5", "--out", "x.jsonl", "--bogus-flag"}).code == kExitUsage);
  CHECK(cli({"generate", "--count", "5", "--out", "x.jsonl", "--depth", "2..9"}).code ==
        kExitUsage);
  CHECK(cli({"no_such_subcommand"}).code == kExitUsage);
  CHECK(cli({}).code == kExitUsage);
}

TEST_CASE("help exits cleanly") { CHECK(cli({"--help"}).code == kExitOk); }

TEST_CASE("score reports perfect accuracy for gold against gold") {
  TempFiles tmp;
  tmp.track("cli_score.jsonl");
  tmp.track("cli_score.jsonl.stats.json");
  tmp.track("cli_score_pred.txt");

  REQUIRE(cli({"generate", "--count", "10", "--depth", "1..2", "--diversity", "less", "--seed",
               "7", "--out", "cli_score.jsonl"})
              .code == kExitOk);
  std::vector<std::string> predictions;
  for (const CorpusRecord& r : read_corpus("cli_score.jsonl")) predictions.push_back(r.proof);
  write_lines("cli_score_pred.txt", predictions);

  CliResult r = cli({"score", "--pred", "cli_score_pred.txt", "--gold", "cli_score.jsonl",
                     "--per-depth"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("\"proof_accuracy\": 1.0") != std::string::npos);
  CHECK(r.out.find("per_depth") != std::string::npos);

  CHECK(cli({"score", "--pred", "missing.txt", "--gold", "cli_score.jsonl"}).code ==
        kExitRuntime);
}

TEST_CASE("verify accepts fresh corpora and flags a corrupted premise id") {
  TempFiles tmp;
  tmp.track("cli_verify.jsonl");
  tmp.track("cli_verify.jsonl.stats.json");

  REQUIRE(cli({"generate", "--count", "12", "--depth", "1..3", "--diversity", "less", "--seed",
               "11", "--out", "cli_verify.jsonl"})
              .code == kExitOk);
  CliResult clean = cli({"verify", "--corpus", "cli_verify.jsonl"});
  CHECK(clean.code == kExitOk);
  CHECK(clean.out.find("0 violations") != std::string::npos);

  // corrupt one premise id in one instance
  std::vector<std::string> lines = read_lines("cli_verify.jsonl");
  bool corrupted = false;
  for (std::string& line : lines) {
    CorpusRecord r = record_from_jsonl(line);
    if (r.answer != "proved") continue;
    ParsedProof proof = parse_proof(r.proof);
    if (proof.steps.empty()) continue;
    const std::string& victim = proof.steps[0].premises[0];
    if (victim.rfind("fact", 0) != 0) continue;
    const std::size_t victim_index = std::stoul(victim.substr(4)) - 1;
    // pick a replacement fact with a different formula
    std::string replacement;
    for (std::size_t k = 0; k < r.facts.size(); ++k) {
      if (k == victim_index || !r.facts_formula[k]) continue;
      if (r.facts_formula[k] == r.facts_formula[victim_index]) continue;
      replacement = "fact" + std::to_string(k + 1);
      break;
    }
    if (replacement.empty()) continue;
    const std::string needle = victim + " ";
    const std::size_t at = line.find(needle);
    if (at == std::string::npos) continue;
    line = line.substr(0, at) + replacement + " " + line.substr(at + needle.size());
    corrupted = true;
    break;
  }
  REQUIRE(corrupted);
  write_lines("cli_verify.jsonl", lines);

  CliResult flagged = cli({"verify", "--corpus", "cli_verify.jsonl"});
  CHECK(flagged.code == kExitViolations);
  CHECK(flagged.out.find(" 1 violations") != std::string::npos);
}

TEST_CASE("verify accepts an empty corpus file") {
  TempFiles tmp;
  write_lines(tmp.track("cli_empty.jsonl"), {});
  CliResult r = cli({"verify", "--corpus", "cli_empty.jsonl"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("0 instances, 0 violations") != std::string::npos);
}

TEST_CASE("derive prints a derivation for the syllogism and rejects the invalid rule") {
  CliResult syl = cli(
      {"derive", "--target", "syllogism: ((%F -> %G) & (%G -> %H)) |- (%F -> %H)"});
  CHECK(syl.code == kExitOk);
  CHECK(syl.out.find("[by ") != std::string::npos);
  CHECK(syl.out.find("NOT_FOUND") == std::string::npos);

  CliResult contra = cli({"derive", "--target", "contraposition: (%F -> %G) |- (!%G -> !%F)"});
  CHECK(contra.code == kExitOk);
  CHECK(contra.out.find("[by ") != std::string::npos);

  CliResult bad = cli({"derive", "--target", "bad: %F, (%F | %G) |- %G"});
  CHECK(bad.code == kExitOk);
  CHECK(bad.out.find("NOT_FOUND") != std::string::npos);

  CHECK(cli({"derive", "--target", "broken: %F |- ("}).code == kExitRuntime);
}

TEST_CASE("the seed environment variable supplies the default seed") {
  TempFiles tmp;
  tmp.track("cli_env_a.jsonl");
  tmp.track("cli_env_a.jsonl.stats.json");
  tmp.track("cli_env_b.jsonl");
  tmp.track("cli_env_b.jsonl.stats.json");

  setenv("FLD_SEED", "777", 1);
  CHECK(cli({"generate", "--count", "6", "--depth", "1..2", "--diversity", "less", "--out",
             "cli_env_a.jsonl"})
            .code == kExitOk);
  unsetenv("FLD_SEED");
  CHECK(cli({"generate", "--count", "6", "--depth", "1..2", "--diversity", "less", "--seed",
             "777", "--out", "cli_env_b.jsonl"})
            .code == kExitOk);
  CHECK(slurp("cli_env_a.jsonl") == slurp("cli_env_b.jsonl"));
}

TEST_SUITE_END();
