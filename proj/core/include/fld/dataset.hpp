#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fld/arguments.hpp"
#include "fld/distractor.hpp"
#include "fld/formula.hpp"
#include "fld/proofgen.hpp"
#include "fld/translator.hpp"

namespace fld {

class CertificationError : public Error {
 public:
  using Error::Error;
};

enum class Answer { Proved, Disproved, Unknown };

std::string answer_name(Answer a);    // "proved" / "disproved" / "unknown"
std::string answer_token(Answer a);   // "__PROVED__" / ...
std::optional<Answer> answer_from_name(const std::string& name);
std::optional<Answer> answer_from_token(const std::string& token);

struct Fact {
  std::string sentence;
  std::optional<Formula> formula;  // absent for linguistic distractors
};

struct ProofStepRecord {
  std::vector<std::string> premises;  // "fact3", "int1"
  std::string conclusion_id;          // "int2" or "hypothesis"
  std::string sentence;               // empty when the target is "hypothesis"
  Formula formula;                    // derived formula, for auditing
};

struct DeductionInstance {
  std::vector<Fact> facts;  // fact ids are 1-based positions
  std::string hypothesis_sentence;
  Formula hypothesis;
  std::vector<ProofStepRecord> proof;
  Answer answer = Answer::Unknown;
  int depth = 0;
  int num_distractors = 0;
  std::uint64_t instance_seed = 0;
  int max_compound_atoms = 0;
};

// "fact1 & fact3 -> int1: <sentence>; int1 & fact2 -> hypothesis; __PROVED__"
// An unknown instance serializes to its label token alone.
std::string serialize_proof(const DeductionInstance& instance);

// One corpus record as a single JSON line. Alongside the sentence-level
// fields the record carries formula sidecars so instances can be re-audited
// without regeneration.
std::string to_jsonl(const DeductionInstance& instance);

// Parsed form of one corpus line, as read back from a file.
struct CorpusRecord {
  std::vector<std::string> facts;
  std::vector<std::optional<std::string>> facts_formula;
  std::string hypothesis;
  std::string hypothesis_formula;
  std::string proof;
  std::vector<std::string> proof_formulas;  // conclusion formula per step
  std::string answer;
  int depth = 0;
  int num_distractors = 0;
  std::uint64_t instance_seed = 0;
  int max_compound_atoms = 0;
};

CorpusRecord record_from_jsonl(const std::string& line);
std::vector<CorpusRecord> read_corpus(const std::string& path);

// ---------------------------------------------------------------------------
// Instance conversion

// Assembles a labeled instance from a generated tree and a distractor mix:
// shuffles facts, renumbers ids, lays proof steps out in topological order,
// and certifies the label with a saturation run. Unknown instances drop a
// random nonempty subset of leaves and retry until the saturation check
// certifies that neither the hypothesis nor its negation is derivable.
// Throws CertificationError when no certified assembly is found.
DeductionInstance convert(const ProofTree& tree, const std::vector<DistractorFact>& distractors,
                          Renderer& renderer, Answer label, Rng& rng,
                          const std::vector<ArgumentScheme>& schemes, int saturation_rounds = 16);

// ---------------------------------------------------------------------------
// Corpus generation

enum class DepthDistribution { Uniform, Skewed };

struct CorpusConfig {
  std::string argset = "axioms";  // "axioms", "implication", or a file path
  int max_distractors = 20;
  Diversity diversity = Diversity::More;
  Complexity complexity = Complexity::Complex;
  int depth_lo = 1;
  int depth_hi = 8;
  DepthDistribution depth_dist = DepthDistribution::Uniform;
  int count = 1;
  std::array<double, 3> label_weights{1.0, 1.0, 1.0};  // proved, disproved, unknown
  std::uint64_t seed = 0;
  std::string out_path;
  int jobs = 1;
  std::string template_path;  // empty: built-in bank for `diversity`
  std::string vocab_path;     // empty: built-in vocabulary for `diversity`
  // Optional consecutive splits, e.g. {{"train", 2000}, {"test", 1000}};
  // counts must sum to `count`. Files get the split name before the
  // extension.
  std::vector<std::pair<std::string, int>> splits;
};

std::vector<ArgumentScheme> resolve_argset(const std::string& argset);

struct CorpusStats {
  std::map<std::string, int> label_histogram;
  std::map<int, int> depth_histogram;
  double mean_facts = 0.0;
  double mean_distractors = 0.0;
  std::string to_json() const;
};

// Single instance from its derived seed; used by generate_corpus and the
// tests. Deterministic in all arguments.
struct InstanceParams {
  const std::vector<ArgumentScheme>* schemes = nullptr;
  const TemplateBank* bank = nullptr;
  const Vocabulary* vocab = nullptr;
  Answer label = Answer::Proved;
  int depth = 1;
  Complexity complexity = Complexity::Complex;
  DistractorSpec distractors;
  std::uint64_t instance_seed = 0;
};

DeductionInstance make_instance(const InstanceParams& params);

// Writes cfg.count JSONL records plus a ".stats.json" sidecar next to the
// output. Byte-identical output for identical configurations.
CorpusStats generate_corpus(const CorpusConfig& cfg);

}  // namespace fld
