#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fld/dataset.hpp"

namespace fld {

enum class ProofAnswer { Proved, Disproved, Unknown, Malformed };

struct ParsedStep {
  std::vector<std::string> premises;
  std::string conclusion_id;  // "intK" or "hypothesis"
  std::string sentence;       // empty for "hypothesis" targets
};

struct ParsedProof {
  std::vector<ParsedStep> steps;
  ProofAnswer answer = ProofAnswer::Malformed;
  std::string error_span;  // first offending text when Malformed
};

// Grammar: step ::= id ("&" id)* "->" ("hypothesis" | intId ":" sentence) ";"
// followed by one label token. Never throws; bad input yields Malformed.
ParsedProof parse_proof(std::string_view text);

// Strict structural equality: answers equal, and a bijection over
// intermediate ids exists under which every step's premise set, conclusion
// target, and (normalized) conclusion sentence are reproduced. Step order
// may differ only by topological reordering. An unknown gold proof requires
// an unknown prediction with zero steps.
bool strict_proof_match(const ParsedProof& pred, const ParsedProof& gold);

// Case and whitespace folding applied to conclusion sentences before
// comparison; kept in one place so the policy is easy to revise.
std::string normalize_sentence(std::string_view s);

struct DepthScore {
  int count = 0;
  int matched_proofs = 0;
  int matched_answers = 0;
};

struct ScoreReport {
  int total = 0;
  int matched_proofs = 0;
  int matched_answers = 0;
  std::map<int, DepthScore> per_depth;

  double proof_accuracy() const { return total ? static_cast<double>(matched_proofs) / total : 0.0; }
  double answer_accuracy() const {
    return total ? static_cast<double>(matched_answers) / total : 0.0;
  }
  std::string to_json(bool include_depth) const;
};

// Scores a prediction file (one serialized proof per line) against a gold
// corpus, line-aligned. Gold lines must parse; a length mismatch is an
// error.
ScoreReport score_corpus(const std::string& pred_path, const std::string& gold_path);
ScoreReport score_records(const std::vector<std::string>& predictions,
                          const std::vector<CorpusRecord>& gold);

}  // namespace fld
