#include "fld/scorer.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>

#include "json.hpp"

namespace fld {

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct ProofParser {
  std::string_view src;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < src.size() && (src[pos] == ' ' || src[pos] == '\t' || src[pos] == '\n' ||
                                src[pos] == '\r')) {
      ++pos;
    }
  }

  bool at_end() {
    skip_ws();
    return pos >= src.size();
  }

  static bool id_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < src.size() && id_char(src[pos])) ++pos;
    return std::string(src.substr(start, pos - start));
  }

  std::string rest_span() const {
    std::string_view tail = src.substr(std::min(pos, src.size()));
    return std::string(tail.substr(0, std::min<std::size_t>(tail.size(), 40)));
  }
};

const char* const kTokens[] = {"__PROVED__", "__DISPROVED__", "__UNKNOWN__"};
const ProofAnswer kTokenAnswers[] = {ProofAnswer::Proved, ProofAnswer::Disproved,
                                     ProofAnswer::Unknown};

}  // namespace

ParsedProof parse_proof(std::string_view text) {
  ParsedProof out;
  ProofParser p{text};

  auto malformed = [&](const std::string& span) {
    ParsedProof bad;
    bad.answer = ProofAnswer::Malformed;
    bad.error_span = span;
    return bad;
  };

  for (;;) {
    if (p.at_end()) return malformed("<missing label token>");

    // Label token ends the proof.
    bool is_token = false;
    for (std::size_t t = 0; t < 3; ++t) {
      std::string_view rest = text.substr(p.pos);
      if (rest.rfind(kTokens[t], 0) == 0) {
        p.pos += std::string_view(kTokens[t]).size();
        if (!p.at_end()) return malformed(p.rest_span());
        out.answer = kTokenAnswers[t];
        is_token = true;
        break;
      }
    }
    if (is_token) break;

    ParsedStep step;
    for (;;) {
      std::string id = p.ident();
      if (id.empty()) return malformed(p.rest_span());
      step.premises.push_back(std::move(id));
      p.skip_ws();
      if (p.pos < p.src.size() && p.src[p.pos] == '&') {
        ++p.pos;
        continue;
      }
      break;
    }
    p.skip_ws();
    if (p.pos + 1 >= p.src.size() || p.src[p.pos] != '-' || p.src[p.pos + 1] != '>') {
      return malformed(p.rest_span());
    }
    p.pos += 2;
    std::string target = p.ident();
    if (target.empty()) return malformed(p.rest_span());
    if (target == "hypothesis") {
      step.conclusion_id = "hypothesis";
      p.skip_ws();
      if (p.pos >= p.src.size() || p.src[p.pos] != ';') return malformed(p.rest_span());
      ++p.pos;
    } else {
      p.skip_ws();
      if (p.pos >= p.src.size() || p.src[p.pos] != ':') return malformed(p.rest_span());
      ++p.pos;
      std::size_t semi = p.src.find(';', p.pos);
      if (semi == std::string_view::npos) return malformed(p.rest_span());
      std::string_view sentence = p.src.substr(p.pos, semi - p.pos);
      while (!sentence.empty() && (sentence.front() == ' ' || sentence.front() == '\t')) {
        sentence.remove_prefix(1);
      }
      while (!sentence.empty() && (sentence.back() == ' ' || sentence.back() == '\t')) {
        sentence.remove_suffix(1);
      }
      step.conclusion_id = std::move(target);
      step.sentence = std::string(sentence);
      p.pos = semi + 1;
    }
    out.steps.push_back(std::move(step));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Matching

std::string normalize_sentence(std::string_view s) {
  std::string out;
  bool pending_space = false;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out += ' ';
      pending_space = false;
    }
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    out += c;
  }
  return out;
}

namespace {

bool is_intermediate(const std::string& id) { return id.rfind("int", 0) == 0; }

// Backtracking search for a bijection over intermediate ids under which the
// predicted steps reproduce the gold steps exactly.
struct StepMatcher {
  const std::vector<ParsedStep>& pred;
  const std::vector<ParsedStep>& gold;
  std::map<std::string, std::string> pred_to_gold;
  std::set<std::string> gold_used_ids;
  std::vector<bool> gold_used_step;

  bool run() {
    gold_used_step.assign(gold.size(), false);
    return place(0);
  }

  bool place(std::size_t i) {
    if (i == pred.size()) return true;
    const ParsedStep& step = pred[i];

    // Premises must already be resolvable (facts map to themselves, and a
    // predicted intermediate must have been introduced by an earlier step).
    std::vector<std::string> premises;
    for (const std::string& id : step.premises) {
      if (is_intermediate(id)) {
        auto it = pred_to_gold.find(id);
        if (it == pred_to_gold.end()) return false;
        premises.push_back(it->second);
      } else {
        premises.push_back(id);
      }
    }
    std::sort(premises.begin(), premises.end());

    for (std::size_t g = 0; g < gold.size(); ++g) {
      if (gold_used_step[g]) continue;
      const ParsedStep& candidate = gold[g];
      if (candidate.premises.size() != premises.size()) continue;
      std::vector<std::string> gold_premises = candidate.premises;
      std::sort(gold_premises.begin(), gold_premises.end());
      if (gold_premises != premises) continue;

      if (step.conclusion_id == "hypothesis") {
        if (candidate.conclusion_id != "hypothesis") continue;
        gold_used_step[g] = true;
        if (place(i + 1)) return true;
        gold_used_step[g] = false;
        continue;
      }
      if (candidate.conclusion_id == "hypothesis") continue;
      if (pred_to_gold.contains(step.conclusion_id) ||
          gold_used_ids.contains(candidate.conclusion_id)) {
        continue;
      }
      if (normalize_sentence(step.sentence) != normalize_sentence(candidate.sentence)) continue;

      pred_to_gold.emplace(step.conclusion_id, candidate.conclusion_id);
      gold_used_ids.insert(candidate.conclusion_id);
      gold_used_step[g] = true;
      if (place(i + 1)) return true;
      gold_used_step[g] = false;
      gold_used_ids.erase(candidate.conclusion_id);
      pred_to_gold.erase(step.conclusion_id);
    }
    return false;
  }
};

}  // namespace

bool strict_proof_match(const ParsedProof& pred, const ParsedProof& gold) {
  if (pred.answer == ProofAnswer::Malformed || gold.answer == ProofAnswer::Malformed) {
    return false;
  }
  if (pred.answer != gold.answer) return false;
  if (gold.answer == ProofAnswer::Unknown) return pred.steps.empty();
  if (pred.steps.size() != gold.steps.size()) return false;
  StepMatcher matcher{pred.steps, gold.steps, {}, {}, {}};
  return matcher.run();
}

// ---------------------------------------------------------------------------
// Corpus scoring

std::string ScoreReport::to_json(bool include_depth) const {
  nlohmann::ordered_json j;
  j["proof_accuracy"] = proof_accuracy();
  j["answer_accuracy"] = answer_accuracy();
  j["counts"] = {{"total", total},
                 {"matched_proofs", matched_proofs},
                 {"matched_answers", matched_answers}};
  if (include_depth) {
    j["per_depth"] = nlohmann::ordered_json::object();
    for (const auto& [depth, score] : per_depth) {
      nlohmann::ordered_json d;
      d["proof_accuracy"] =
          score.count ? static_cast<double>(score.matched_proofs) / score.count : 0.0;
      d["answer_accuracy"] =
          score.count ? static_cast<double>(score.matched_answers) / score.count : 0.0;
      d["count"] = score.count;
      j["per_depth"][std::to_string(depth)] = std::move(d);
    }
  }
  return j.dump(2);
}

ScoreReport score_records(const std::vector<std::string>& predictions,
                          const std::vector<CorpusRecord>& gold) {
  if (predictions.size() != gold.size()) {
    throw Error("prediction count " + std::to_string(predictions.size()) +
                " does not match gold count " + std::to_string(gold.size()));
  }
  ScoreReport report;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    ParsedProof gold_proof = parse_proof(gold[i].proof);
    if (gold_proof.answer == ProofAnswer::Malformed) {
      throw Error("gold line " + std::to_string(i + 1) + " does not parse near '" +
                  gold_proof.error_span + "'");
    }
    ParsedProof pred = parse_proof(predictions[i]);
    const bool answer_ok =
        pred.answer != ProofAnswer::Malformed && pred.answer == gold_proof.answer;
    const bool proof_ok = strict_proof_match(pred, gold_proof);

    report.total++;
    DepthScore& d = report.per_depth[gold[i].depth];
    d.count++;
    if (answer_ok) {
      report.matched_answers++;
      d.matched_answers++;
    }
    if (proof_ok) {
      report.matched_proofs++;
      d.matched_proofs++;
    }
  }
  return report;
}

ScoreReport score_corpus(const std::string& pred_path, const std::string& gold_path) {
  std::ifstream in(pred_path, std::ios::binary);
  if (!in) throw Error("cannot open prediction file: " + pred_path);
  std::vector<std::string> predictions;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    predictions.push_back(line);
  }
  // A trailing blank line is not a prediction.
  while (!predictions.empty() && predictions.back().empty()) predictions.pop_back();
  return score_records(predictions, read_corpus(gold_path));
}

}  // namespace fld
