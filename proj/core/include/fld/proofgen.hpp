#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fld/arguments.hpp"
#include "fld/formula.hpp"
#include "fld/names.hpp"
#include "fld/rng.hpp"

namespace fld {

class GenerationError : public Error {
 public:
  using Error::Error;
};

class SearchBudgetError : public Error {
 public:
  using Error::Error;
};

inline constexpr int kMaxTreeDepth = 8;

enum class Complexity { Simple, Complex };

// Running maximum of atoms per sampled compound; recorded into instance
// metadata so corpora can be audited after the fact.
struct SampleStats {
  int max_atoms = 0;
};

// Fresh random material for a metavariable: Simple is a single fresh atomic
// formula, Complex combines 1-3 of them with &, | and !. When `hole` is set
// the atomic pieces are predicate applications of that variable, so the
// result is usable as an abstraction body.
Formula sample_compound(Complexity complexity, Rng& rng, NameAllocator& names,
                        const std::optional<std::string>& hole = std::nullopt,
                        SampleStats* stats = nullptr);

// Completes a binding: every metavariable and term slot of the scheme that
// matching left open is filled with sampled material or a fresh constant.
Binding fill_binding(const ArgumentScheme& scheme, Binding binding, Complexity complexity,
                     Rng& rng, NameAllocator& names, SampleStats* stats = nullptr);

// ---------------------------------------------------------------------------
// Proof trees

struct Application {
  std::string scheme_id;
  std::vector<int> premises;  // node ids
};

struct ProofNode {
  Formula formula;
  std::optional<Application> derivation;  // absent on leaves
};

struct ProofTree {
  std::vector<ProofNode> nodes;
  int root = -1;

  bool is_leaf(int id) const { return !nodes[id].derivation.has_value(); }
  std::vector<int> leaf_ids() const;
  std::vector<Formula> leaf_formulas() const;
  // Longest application chain from any leaf up to `id` (root by default).
  int depth(int id = -1) const;
  // Applications crossed walking down from the root to `id`.
  int distance_from_root(int id) const;
  std::string text() const;  // indented rendering, deterministic
};

struct GenParams {
  std::vector<ArgumentScheme> schemes;
  int depth = 1;
  int extra_branches = 0;
  Complexity complexity = Complexity::Complex;
  std::uint64_t rng_seed = 0;
  SampleStats* stats = nullptr;  // optional sink for compound sizes
};

// Random proof tree: a forward phase grows the trunk to exactly
// `params.depth` applications, then a backward phase expands up to
// `params.extra_branches` leaves without changing the depth. Deterministic
// given the seed. Throws GenerationError when no tree can be built within
// the retry budget.
ProofTree generate_tree(const GenParams& params);
// Same, drawing from caller-owned streams so several trees can share one
// symbol namespace.
ProofTree generate_tree(const GenParams& params, Rng& rng, NameAllocator& names);

// ---------------------------------------------------------------------------
// Derivation search

// Bounded backward search: derives the target's conclusion from its premises
// using only the given schemes, trying depths 1..max_depth in order. Returns
// the derivation tree whose leaves are target premises, or nullopt.
std::optional<ProofTree> derive_argument(const ArgumentScheme& target,
                                         const std::vector<ArgumentScheme>& schemes,
                                         int max_depth,
                                         std::size_t expansion_cap = 2'000'000);

// ---------------------------------------------------------------------------
// Saturation

// Bounded forward closure of `facts` under `schemes`, restricted to the
// subformula universe of the facts and hints (plus single negations).
// Certifies unknown labels and detects contradictions.
struct SaturationResult {
  std::vector<Formula> closure;
  bool contradiction = false;
  bool complete = true;  // fixpoint reached within budget

  bool contains(const Formula& f) const;
};

SaturationResult saturate(const std::vector<Formula>& facts,
                          const std::vector<ArgumentScheme>& schemes,
                          std::size_t max_formulas = 10000, int max_rounds = 16,
                          const std::vector<Formula>& goal_hints = {});

}  // namespace fld
