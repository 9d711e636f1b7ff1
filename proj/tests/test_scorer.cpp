#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "fld/dataset.hpp"
#include "fld/scorer.hpp"

using namespace fld;

TEST_SUITE_BEGIN("scorer");

TEST_CASE("the step grammar parses the documented forms") {
  ParsedProof p = parse_proof("fact1 & fact3 -> hypothesis; __PROVED__");
  CHECK(p.answer == ProofAnswer::Proved);
  REQUIRE(p.steps.size() == 1);
  CHECK(p.steps[0].premises == std::vector<std::string>{"fact1", "fact3"});
  CHECK(p.steps[0].conclusion_id == "hypothesis");

  ParsedProof u = parse_proof("__UNKNOWN__");
  CHECK(u.answer == ProofAnswer::Unknown);
  CHECK(u.steps.empty());

  ParsedProof with_sentence =
      parse_proof("fact2 -> int1: The earth has seasons.; int1 -> hypothesis; __DISPROVED__");
  CHECK(with_sentence.answer == ProofAnswer::Disproved);
  REQUIRE(with_sentence.steps.size() == 2);
  CHECK(with_sentence.steps[0].sentence == "The earth has seasons.");
  CHECK(with_sentence.steps[1].premises == std::vector<std::string>{"int1"});
}

TEST_CASE("malformed input never throws") {
  CHECK(parse_proof("fact1 -> -> x").answer == ProofAnswer::Malformed);
  CHECK(parse_proof("").answer == ProofAnswer::Malformed);
  CHECK(parse_proof("fact1 -> int1: missing semicolon __PROVED__").answer ==
        ProofAnswer::Malformed);
  CHECK(parse_proof("__PROVED__ trailing").answer == ProofAnswer::Malformed);
  CHECK(parse_proof("fact1 & -> int1: x; __PROVED__").answer == ProofAnswer::Malformed);
  CHECK(!parse_proof("fact1 -> -> x").error_span.empty());
}

TEST_CASE("whitespace is tolerated around tokens") {
  ParsedProof p = parse_proof("  fact1   &  fact2 ->   int1 :  a calm sun rises. ;  int1 -> "
                              "hypothesis ;   __PROVED__  ");
  CHECK(p.answer == ProofAnswer::Proved);
  REQUIRE(p.steps.size() == 2);
  CHECK(p.steps[0].sentence == "a calm sun rises.");
}

TEST_CASE("a proof matches itself strictly") {
  const std::string text =
      "fact1 & fact2 -> int1: the sun rises.; int1 & fact3 -> hypothesis; __PROVED__";
  ParsedProof gold = parse_proof(text);
  CHECK(strict_proof_match(gold, gold));
}

TEST_CASE("consistently renamed intermediates still match") {
  ParsedProof gold = parse_proof(
      "fact1 -> int1: first.; fact2 -> int2: second.; int1 & int2 -> hypothesis; __PROVED__");
  ParsedProof renamed = parse_proof(
      "fact2 -> int1: second.; fact1 -> int2: first.; int2 & int1 -> hypothesis; __PROVED__");
  CHECK(strict_proof_match(renamed, gold));
  CHECK(strict_proof_match(gold, renamed));
}

TEST_CASE("case and spacing differences in sentences are forgiven") {
  ParsedProof gold = parse_proof("fact1 -> int1: The Sun rises.; int1 -> hypothesis; __PROVED__");
  ParsedProof pred = parse_proof("fact1 -> int1: the  sun RISES.; int1 -> hypothesis; __PROVED__");
  CHECK(strict_proof_match(pred, gold));
}

TEST_CASE("any premise mutation breaks the match") {
  ParsedProof gold = parse_proof(
      "fact1 & fact2 -> int1: x.; int1 & fact3 -> hypothesis; __PROVED__");
  ParsedProof wrong_fact = parse_proof(
      "fact1 & fact4 -> int1: x.; int1 & fact3 -> hypothesis; __PROVED__");
  ParsedProof wrong_label = parse_proof(
      "fact1 & fact2 -> int1: x.; int1 & fact3 -> hypothesis; __DISPROVED__");
  ParsedProof extra_step = parse_proof(
      "fact1 & fact2 -> int1: x.; fact3 -> int2: y.; int1 & int2 -> hypothesis; __PROVED__");
  CHECK(!strict_proof_match(wrong_fact, gold));
  CHECK(!strict_proof_match(wrong_label, gold));
  CHECK(!strict_proof_match(extra_step, gold));
}

TEST_CASE("unknown gold requires an unknown stepless prediction") {
  ParsedProof gold = parse_proof("__UNKNOWN__");
  CHECK(strict_proof_match(parse_proof("__UNKNOWN__"), gold));
  CHECK(!strict_proof_match(parse_proof("__PROVED__"), gold));
  CHECK(!strict_proof_match(parse_proof("fact1 -> hypothesis; __UNKNOWN__"), gold));
}

namespace {

struct TempCorpus {
  std::string gold_path = "scorer_gold_test.jsonl";
  std::string pred_path = "scorer_pred_test.txt";
  std::vector<CorpusRecord> records;

  explicit TempCorpus(int count, std::uint64_t seed) {
    CorpusConfig cfg;
    cfg.count = count;
    cfg.depth_lo = 1;
    cfg.depth_hi = 3;
    cfg.max_distractors = 4;
    cfg.diversity = Diversity::Less;
    cfg.seed = seed;
    cfg.out_path = gold_path;
    generate_corpus(cfg);
    records = read_corpus(gold_path);
  }

  ~TempCorpus() {
    std::remove(gold_path.c_str());
    std::remove((gold_path + ".stats.json").c_str());
    std::remove(pred_path.c_str());
  }

  void write_predictions(const std::vector<std::string>& lines) const {
    std::ofstream out(pred_path, std::ios::binary);
    for (const std::string& l : lines) out << l << "\n";
  }
};

}  // namespace

TEST_CASE("gold scored against itself is perfect") {
  TempCorpus corpus(20, 555);
  std::vector<std::string> predictions;
  for (const CorpusRecord& r : corpus.records) predictions.push_back(r.proof);
  corpus.write_predictions(predictions);

  ScoreReport report = score_corpus(corpus.pred_path, corpus.gold_path);
  CHECK(report.total == 20);
  CHECK(report.proof_accuracy() == doctest::Approx(1.0));
  CHECK(report.answer_accuracy() == doctest::Approx(1.0));
}

TEST_CASE("flipping every label zeroes the answer accuracy") {
  TempCorpus corpus(15, 556);
  std::vector<std::string> predictions;
  for (const CorpusRecord& r : corpus.records) {
    std::string flipped = r.proof;
    auto replace = [&](const std::string& from, const std::string& to) {
      const std::size_t at = flipped.rfind(from);
      if (at != std::string::npos) flipped = flipped.substr(0, at) + to;
    };
    if (r.answer == "proved") {
      replace("__PROVED__", "__DISPROVED__");
    } else if (r.answer == "disproved") {
      replace("__DISPROVED__", "__UNKNOWN__");
    } else {
      replace("__UNKNOWN__", "__PROVED__");
    }
    predictions.push_back(flipped);
  }
  corpus.write_predictions(predictions);

  ScoreReport report = score_corpus(corpus.pred_path, corpus.gold_path);
  CHECK(report.answer_accuracy() == doctest::Approx(0.0));
  CHECK(report.proof_accuracy() == doctest::Approx(0.0));
}

TEST_CASE("a prediction file correct on a known half scores one half") {
  TempCorpus corpus(20, 557);
  std::vector<std::string> predictions;
  for (std::size_t i = 0; i < corpus.records.size(); ++i) {
    predictions.push_back(i % 2 == 0 ? corpus.records[i].proof : "__UNKNOWN__");
  }
  // make sure the corrupted half is actually wrong: unknown gold lines at
  // odd indexes would still match, so flip those to a wrong label instead
  for (std::size_t i = 1; i < corpus.records.size(); i += 2) {
    if (corpus.records[i].answer == "unknown") predictions[i] = "__PROVED__";
  }
  corpus.write_predictions(predictions);

  ScoreReport report = score_corpus(corpus.pred_path, corpus.gold_path);
  CHECK(report.proof_accuracy() == doctest::Approx(0.5));
}

TEST_CASE("proof accuracy never exceeds answer accuracy") {
  TempCorpus corpus(20, 558);
  Rng rng(4040);
  for (int file = 0; file < 10; ++file) {
    std::vector<std::string> predictions;
    for (const CorpusRecord& r : corpus.records) {
      switch (rng.index(4)) {
        case 0:
          predictions.push_back(r.proof);
          break;
        case 1:
          predictions.push_back("__UNKNOWN__");
          break;
        case 2:
          predictions.push_back("fact1 -> hypothesis; __PROVED__");
          break;
        default:
          predictions.push_back("not a proof at all");
          break;
      }
    }
    corpus.write_predictions(predictions);
    ScoreReport report = score_corpus(corpus.pred_path, corpus.gold_path);
    CHECK(report.proof_accuracy() <= report.answer_accuracy());
  }
}

TEST_CASE("per-depth counts add up to the total") {
  TempCorpus corpus(18, 559);
  std::vector<std::string> predictions;
  for (const CorpusRecord& r : corpus.records) predictions.push_back(r.proof);
  corpus.write_predictions(predictions);
  ScoreReport report = score_corpus(corpus.pred_path, corpus.gold_path);
  int total = 0;
  for (const auto& [depth, d] : report.per_depth) total += d.count;
  CHECK(total == report.total);
  const std::string json = report.to_json(true);
  CHECK(json.find("per_depth") != std::string::npos);
  CHECK(report.to_json(false).find("per_depth") == std::string::npos);
}

TEST_CASE("length mismatches and unreadable gold are errors") {
  TempCorpus corpus(5, 560);
  corpus.write_predictions({"__UNKNOWN__"});
  CHECK_THROWS_AS(score_corpus(corpus.pred_path, corpus.gold_path), Error);
  CHECK_THROWS_AS(score_corpus("no_such_file.txt", corpus.gold_path), Error);
  CHECK_THROWS_AS(score_corpus(corpus.pred_path, "no_such_gold.jsonl"), Error);
}

TEST_SUITE_END();
