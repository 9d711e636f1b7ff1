#pragma once

#include <array>
#include <optional>
#include <vector>

#include "fld/arguments.hpp"
#include "fld/formula.hpp"
#include "fld/names.hpp"
#include "fld/proofgen.hpp"
#include "fld/rng.hpp"
#include "fld/translator.hpp"

namespace fld {

struct DistractorSpec {
  int max_count = 20;  // 0..20
  // logical, linguistic, negative-tree
  std::array<double, 3> mixture_weights{1.0, 1.0, 1.0};
};

// Structural perturbations of gold formulas: one move each of either a
// symbol swap, a negation toggle, or an and/or flip. No output equals a
// gold fact structurally, or is propositionally equivalent to one when the
// equivalence check is small enough to run.
std::vector<Formula> logical_distractors(const std::vector<Formula>& gold, int n, Rng& rng);

// Word flips over gold sentences: each output differs from its source in
// exactly one content word, replaced by a same-part-of-speech word.
std::vector<Sentence> linguistic_distractors(const std::vector<Sentence>& gold_sentences, int n,
                                             Rng& rng, const Vocabulary& vocab);

// Leaves of an independent proof tree over fresh symbols; sharing `names`
// with the gold tree keeps the namespaces disjoint.
std::vector<Formula> negative_tree_distractors(const std::vector<ArgumentScheme>& schemes,
                                               const GenParams& params, int n, Rng& rng,
                                               NameAllocator& names);

struct DistractorFact {
  Sentence sentence;
  std::optional<Formula> formula;  // absent for linguistic distractors
};

struct MixContext {
  const std::vector<Formula>& gold_facts;
  const std::vector<Sentence>& gold_sentences;
  const std::vector<ArgumentScheme>& schemes;
  Complexity complexity = Complexity::Complex;
  const Vocabulary& vocab;
  NameAllocator& names;
  StatementMap& statements;
  Renderer& renderer;
  SampleStats* stats = nullptr;
};

// Draws a total count uniformly in 0..max_count, apportions it across the
// three generators by the mixture weights, renders, and shuffles.
std::vector<DistractorFact> mix_distractors(const DistractorSpec& spec, MixContext& ctx, Rng& rng);

}  // namespace fld
