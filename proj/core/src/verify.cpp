#include "fld/verify.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "fld/proofgen.hpp"
#include "fld/scorer.hpp"

namespace fld {

bool step_matches_some_scheme(const std::vector<ArgumentScheme>& schemes,
                              const std::vector<Formula>& premises, const Formula& conclusion) {
  for (const ArgumentScheme& scheme : schemes) {
    if (scheme.premises.size() != premises.size()) continue;

    std::vector<std::size_t> perm(premises.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::function<bool(std::size_t, const Binding&)> chain = [&](std::size_t k,
                                                                   const Binding& b) -> bool {
        if (k == premises.size()) {
          return !match(scheme.conclusion, conclusion, b).empty();
        }
        for (const Binding& b2 : match(scheme.premises[k], premises[perm[k]], b)) {
          if (chain(k + 1, b2)) return true;
        }
        return false;
      };
      if (chain(0, Binding{})) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return false;
}

namespace {

bool refutes(const Formula& fact, const Formula& hypothesis) {
  return negate(fact) == hypothesis || fact == negate(hypothesis);
}

std::string check_record(const CorpusRecord& r, const std::vector<ArgumentScheme>& schemes) {
  const std::optional<Answer> answer = answer_from_name(r.answer);
  if (!answer) return "unknown answer label '" + r.answer + "'";

  if (r.hypothesis_formula.empty()) return "missing hypothesis formula sidecar";
  if (r.facts_formula.size() != r.facts.size()) {
    return "facts_formula does not align with facts";
  }

  Formula hypothesis;
  std::vector<std::optional<Formula>> fact_formulas;
  try {
    hypothesis = parse_formula(r.hypothesis_formula);
    for (const std::optional<std::string>& text : r.facts_formula) {
      if (text) {
        fact_formulas.push_back(parse_formula(*text));
      } else {
        fact_formulas.push_back(std::nullopt);
      }
    }
  } catch (const ParseError& e) {
    return std::string("formula sidecar does not parse: ") + e.what();
  }

  const ParsedProof proof = parse_proof(r.proof);
  if (proof.answer == ProofAnswer::Malformed) {
    return "proof does not parse near '" + proof.error_span + "'";
  }
  const char* token_label = proof.answer == ProofAnswer::Proved      ? "proved"
                            : proof.answer == ProofAnswer::Disproved ? "disproved"
                                                                     : "unknown";
  if (token_label != r.answer) return "label token disagrees with the answer field";

  if (*answer == Answer::Unknown) {
    if (!proof.steps.empty()) return "unknown instance carries proof steps";
  }
  if (r.proof_formulas.size() != proof.steps.size()) {
    return "proof_formulas does not align with proof steps";
  }
  if (r.max_compound_atoms > 3) {
    return "compound with " + std::to_string(r.max_compound_atoms) + " atoms";
  }

  // Resolve ids step by step and re-match each derivation.
  std::map<std::string, Formula> by_id;
  for (std::size_t i = 0; i < fact_formulas.size(); ++i) {
    if (fact_formulas[i]) by_id["fact" + std::to_string(i + 1)] = *fact_formulas[i];
  }

  int max_depth_seen = 0;
  std::map<std::string, int> depth_of;  // intermediate id -> chain length
  int next_int = 1;
  for (std::size_t i = 0; i < proof.steps.size(); ++i) {
    const ParsedStep& step = proof.steps[i];
    if (step.premises.empty()) return "step with no premises";

    Formula conclusion;
    try {
      conclusion = parse_formula(r.proof_formulas[i]);
    } catch (const ParseError& e) {
      return std::string("proof formula sidecar does not parse: ") + e.what();
    }

    std::vector<Formula> premise_formulas;
    int premise_depth = 0;
    for (const std::string& id : step.premises) {
      auto it = by_id.find(id);
      if (it == by_id.end()) {
        if (id.rfind("fact", 0) == 0) {
          std::size_t k = 0;
          try {
            k = static_cast<std::size_t>(std::stoul(id.substr(4)));
          } catch (...) {
          }
          if (k >= 1 && k <= r.facts.size() && !fact_formulas[k - 1]) {
            return "step uses sentence-only fact " + id;
          }
        }
        return "step references undefined id " + id;
      }
      premise_formulas.push_back(it->second);
      auto d = depth_of.find(id);
      premise_depth = std::max(premise_depth, d == depth_of.end() ? 0 : d->second);
    }

    if (step.conclusion_id == "hypothesis") {
      if (i + 1 != proof.steps.size()) return "hypothesis step is not final";
      if (*answer == Answer::Disproved) {
        // Terminal refutation: the derived root contradicts the hypothesis.
        if (premise_formulas.size() != 1 || !refutes(premise_formulas[0], hypothesis)) {
          return "refutation step does not contradict the hypothesis";
        }
        if (conclusion != hypothesis) return "refutation step formula mismatch";
        max_depth_seen = std::max(max_depth_seen, premise_depth);
        break;
      }
      if (conclusion != hypothesis) return "final step does not derive the hypothesis";
      if (!step_matches_some_scheme(schemes, premise_formulas, conclusion)) {
        return "final step matches no configured scheme";
      }
      max_depth_seen = std::max(max_depth_seen, premise_depth + 1);
      break;
    }

    const std::string expected_id = "int" + std::to_string(next_int++);
    if (step.conclusion_id != expected_id) {
      return "intermediate ids not dense: expected " + expected_id + ", found " +
             step.conclusion_id;
    }
    if (!step_matches_some_scheme(schemes, premise_formulas, conclusion)) {
      return "step " + step.conclusion_id + " matches no configured scheme";
    }
    by_id[step.conclusion_id] = conclusion;
    depth_of[step.conclusion_id] = premise_depth + 1;
    max_depth_seen = std::max(max_depth_seen, premise_depth + 1);
  }

  if (*answer != Answer::Unknown) {
    if (!proof.steps.empty()) {
      if (proof.steps.back().conclusion_id != "hypothesis") {
        return "proof does not end at the hypothesis";
      }
      if (max_depth_seen != r.depth) {
        return "proof depth " + std::to_string(max_depth_seen) + " disagrees with metadata " +
               std::to_string(r.depth);
      }
    } else {
      // Depth-0 instance: the hypothesis (or its contradiction) is a fact.
      bool found = false;
      for (const std::optional<Formula>& f : fact_formulas) {
        if (!f) continue;
        if (*answer == Answer::Proved && *f == hypothesis) found = true;
        if (*answer == Answer::Disproved && refutes(*f, hypothesis)) found = true;
      }
      if (!found) return "empty proof without the hypothesis in the fact set";
      if (r.depth != 0) return "empty proof but metadata depth is not 0";
    }
  }

  // Consistency and label certification.
  std::vector<Formula> known;
  for (const std::optional<Formula>& f : fact_formulas) {
    if (f) known.push_back(*f);
  }
  SaturationResult sat =
      saturate(known, schemes, 10000, 2 * kMaxTreeDepth, {hypothesis, negate(hypothesis)});
  if (sat.contradiction) return "fact set is contradictory";
  switch (*answer) {
    case Answer::Proved:
      if (sat.contains(negate(hypothesis))) return "facts derive the hypothesis negation";
      break;
    case Answer::Disproved:
      if (sat.contains(hypothesis)) return "facts derive the refuted hypothesis";
      break;
    case Answer::Unknown:
      if (!sat.complete) return "unknown label not certifiable within the saturation budget";
      if (sat.contains(hypothesis)) return "facts derive the hypothesis of an unknown instance";
      if (sat.contains(negate(hypothesis))) {
        return "facts derive the hypothesis negation of an unknown instance";
      }
      break;
  }
  return {};
}

}  // namespace

std::vector<Violation> verify_records(const std::vector<CorpusRecord>& records,
                                      const std::vector<ArgumentScheme>& schemes) {
  std::vector<Violation> out;
  for (std::size_t i = 0; i < records.size(); ++i) {
    std::string reason;
    try {
      reason = check_record(records[i], schemes);
    } catch (const Error& e) {
      reason = e.what();
    }
    if (!reason.empty()) out.push_back({i, std::move(reason)});
  }
  return out;
}

std::vector<Violation> verify_corpus(const std::string& path,
                                     const std::vector<ArgumentScheme>& schemes) {
  return verify_records(read_corpus(path), schemes);
}

}  // namespace fld
