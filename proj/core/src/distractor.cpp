#include "fld/distractor.hpp"

#include <algorithm>
#include <functional>

namespace fld {

// ---------------------------------------------------------------------------
// Logical distractors

namespace {

int count_nodes(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::PredApp:
      return 1;
    case FormulaKind::Not:
    case FormulaKind::Forall:
      return 1 + count_nodes(f.child());
    default:
      return 1 + count_nodes(f.left()) + count_nodes(f.right());
  }
}

// Rebuilds the formula with `op` applied to the k-th node in preorder.
Formula mutate_at(const Formula& f, int& k, const std::function<Formula(const Formula&)>& op) {
  if (k == 0) {
    --k;
    return op(f);
  }
  --k;
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::PredApp:
      return f;
    case FormulaKind::Not:
      return Formula::negation(mutate_at(f.child(), k, op));
    case FormulaKind::Forall:
      return Formula::forall(f.name(), mutate_at(f.child(), k, op));
    case FormulaKind::And: {
      Formula l = mutate_at(f.left(), k, op);
      Formula r = k >= 0 ? mutate_at(f.right(), k, op) : f.right();
      return Formula::conj(l, r);
    }
    case FormulaKind::Or: {
      Formula l = mutate_at(f.left(), k, op);
      Formula r = k >= 0 ? mutate_at(f.right(), k, op) : f.right();
      return Formula::disj(l, r);
    }
    case FormulaKind::Implies: {
      Formula l = mutate_at(f.left(), k, op);
      Formula r = k >= 0 ? mutate_at(f.right(), k, op) : f.right();
      return Formula::implies(l, r);
    }
  }
  throw Error("corrupt formula");
}

Formula rename_symbols(const Formula& f, const std::string& a, const std::string& b, bool atoms) {
  switch (f.kind()) {
    case FormulaKind::Atom: {
      if (!atoms) return f;
      if (f.name() == a) return Formula::atom(b);
      if (f.name() == b) return Formula::atom(a);
      return f;
    }
    case FormulaKind::PredApp: {
      if (atoms) return f;
      if (f.name() == a) return Formula::pred(b, f.term());
      if (f.name() == b) return Formula::pred(a, f.term());
      return f;
    }
    case FormulaKind::Not:
      return Formula::negation(rename_symbols(f.child(), a, b, atoms));
    case FormulaKind::Forall:
      return Formula::forall(f.name(), rename_symbols(f.child(), a, b, atoms));
    case FormulaKind::And:
      return Formula::conj(rename_symbols(f.left(), a, b, atoms),
                           rename_symbols(f.right(), a, b, atoms));
    case FormulaKind::Or:
      return Formula::disj(rename_symbols(f.left(), a, b, atoms),
                           rename_symbols(f.right(), a, b, atoms));
    case FormulaKind::Implies:
      return Formula::implies(rename_symbols(f.left(), a, b, atoms),
                              rename_symbols(f.right(), a, b, atoms));
  }
  throw Error("corrupt formula");
}

// Truth-table comparison after grounding; formulas with more than `unit_cap`
// atomic units are treated as not equivalent.
bool propositionally_equivalent(const Formula& f, const Formula& g, std::size_t unit_cap = 6) {
  Argument as_arg;
  as_arg.premises = {f};
  as_arg.conclusion = g;
  // Reuse the validity grounding: f and g are equivalent iff both
  // {f} |- g and {g} |- f are valid.
  try {
    ValidityResult fwd = check_validity(as_arg, unit_cap);
    if (!fwd.valid) return false;
    std::swap(as_arg.premises[0], as_arg.conclusion);
    return check_validity(as_arg, unit_cap).valid;
  } catch (const EnumerationCapError&) {
    return false;
  }
}

}  // namespace

std::vector<Formula> logical_distractors(const std::vector<Formula>& gold, int n, Rng& rng) {
  std::vector<Formula> out;
  if (n <= 0 || gold.empty()) return out;

  auto is_fresh = [&](const Formula& candidate) {
    for (const Formula& g : gold) {
      if (candidate == g) return false;
    }
    for (const Formula& g : out) {
      if (candidate == g) return false;
    }
    for (const Formula& g : gold) {
      if (propositionally_equivalent(candidate, g)) return false;
    }
    return true;
  };

  const int max_attempts = 40 * n + 20;
  for (int attempt = 0; attempt < max_attempts && static_cast<int>(out.size()) < n; ++attempt) {
    const Formula& source = gold[rng.index(gold.size())];
    Formula candidate;
    switch (rng.index(3)) {
      case 0: {  // swap two distinct symbols of the same kind
        std::vector<std::string> atoms = collect_atoms(source);
        std::vector<std::string> preds = collect_predicates(source);
        const bool use_atoms = atoms.size() >= 2 && (preds.size() < 2 || rng.chance(0.5));
        std::vector<std::string>& pool = use_atoms ? atoms : preds;
        if (pool.size() < 2) continue;
        std::size_t i = rng.index(pool.size());
        std::size_t j = rng.index(pool.size() - 1);
        if (j >= i) ++j;
        candidate = rename_symbols(source, pool[i], pool[j], use_atoms);
        break;
      }
      case 1: {  // toggle one negation
        int k = static_cast<int>(rng.index(static_cast<std::size_t>(count_nodes(source))));
        candidate = mutate_at(source, k, [](const Formula& node) {
          return node.kind() == FormulaKind::Not ? node.child() : Formula::negation(node);
        });
        break;
      }
      default: {  // flip one conjunction/disjunction
        std::vector<int> positions;
        int index = 0;
        std::function<void(const Formula&)> scan = [&](const Formula& node) {
          if (node.kind() == FormulaKind::And || node.kind() == FormulaKind::Or) {
            positions.push_back(index);
          }
          ++index;
          switch (node.kind()) {
            case FormulaKind::Not:
            case FormulaKind::Forall:
              scan(node.child());
              break;
            case FormulaKind::And:
            case FormulaKind::Or:
            case FormulaKind::Implies:
              scan(node.left());
              scan(node.right());
              break;
            default:
              break;
          }
        };
        scan(source);
        if (positions.empty()) continue;
        int k = positions[rng.index(positions.size())];
        candidate = mutate_at(source, k, [](const Formula& node) {
          return node.kind() == FormulaKind::And ? Formula::disj(node.left(), node.right())
                                                 : Formula::conj(node.left(), node.right());
        });
        break;
      }
    }
    if (!candidate.empty() && is_fresh(candidate)) out.push_back(std::move(candidate));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Linguistic distractors

namespace {

bool word_char(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

// Offsets of whole-word occurrences of `word` in `text`.
std::vector<std::size_t> word_occurrences(const std::string& text, const std::string& word) {
  std::vector<std::size_t> out;
  std::size_t from = 0;
  while (true) {
    std::size_t at = text.find(word, from);
    if (at == std::string::npos) break;
    const bool left_ok = at == 0 || !word_char(text[at - 1]);
    const std::size_t end = at + word.size();
    const bool right_ok = end >= text.size() || !word_char(text[end]);
    if (left_ok && right_ok) out.push_back(at);
    from = at + 1;
  }
  return out;
}

std::string inflect_verb(const std::string& base) {
  if (base.size() >= 2 && (base.ends_with("sh") || base.ends_with("ch"))) return base + "es";
  if (base.ends_with("s") || base.ends_with("x")) return base + "es";
  return base + "s";
}

}  // namespace

std::vector<Sentence> linguistic_distractors(const std::vector<Sentence>& gold_sentences, int n,
                                             Rng& rng, const Vocabulary& vocab) {
  std::vector<Sentence> out;
  if (n <= 0) return out;

  std::vector<const Sentence*> usable;
  for (const Sentence& s : gold_sentences) {
    if (!s.annotations.empty()) usable.push_back(&s);
  }
  if (usable.empty()) return out;

  auto is_fresh = [&](const std::string& text) {
    for (const Sentence& s : gold_sentences) {
      if (s.text == text) return false;
    }
    for (const Sentence& s : out) {
      if (s.text == text) return false;
    }
    return true;
  };

  const int max_attempts = 30 * n + 20;
  for (int attempt = 0; attempt < max_attempts && static_cast<int>(out.size()) < n; ++attempt) {
    const Sentence& source = *usable[rng.index(usable.size())];
    const WordAnnotation& target = source.annotations[rng.index(source.annotations.size())];
    std::vector<std::size_t> spots = word_occurrences(source.text, target.token);
    if (spots.empty()) continue;
    const std::size_t at = spots[rng.index(spots.size())];

    const std::vector<std::string>& pool = vocab.list(target.pos);
    if (pool.size() < 2) continue;
    const std::string& base = pool[rng.index(pool.size())];
    std::string replacement = target.pos == Pos::Verb ? inflect_verb(base) : base;
    if (replacement == target.token) continue;

    Sentence flipped;
    flipped.text = source.text.substr(0, at) + replacement + source.text.substr(at + target.token.size());
    for (const WordAnnotation& a : source.annotations) {
      if (a.token == target.token && a.pos == target.pos) {
        flipped.annotations.push_back({replacement, target.pos});
      } else {
        flipped.annotations.push_back(a);
      }
    }
    if (is_fresh(flipped.text)) out.push_back(std::move(flipped));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Negative-tree distractors

std::vector<Formula> negative_tree_distractors(const std::vector<ArgumentScheme>& schemes,
                                               const GenParams& params, int n, Rng& rng,
                                               NameAllocator& names) {
  if (n <= 0) return {};
  GenParams p = params;
  p.schemes = schemes;
  ProofTree tree = generate_tree(p, rng, names);
  std::vector<Formula> leaves = tree.leaf_formulas();
  if (static_cast<int>(leaves.size()) > n) leaves.resize(static_cast<std::size_t>(n));
  return leaves;
}

// ---------------------------------------------------------------------------
// Mixture

std::vector<DistractorFact> mix_distractors(const DistractorSpec& spec, MixContext& ctx,
                                            Rng& rng) {
  std::vector<DistractorFact> out;
  if (spec.max_count <= 0) return out;

  const int total = static_cast<int>(rng.range(0, spec.max_count));
  int counts[3] = {0, 0, 0};
  std::vector<double> weights(spec.mixture_weights.begin(), spec.mixture_weights.end());
  for (int i = 0; i < total; ++i) counts[rng.pick_weighted(weights)]++;

  for (const Formula& f : logical_distractors(ctx.gold_facts, counts[0], rng)) {
    Sentence s = finalize_sentence(ctx.renderer.render(f, rng));
    out.push_back({std::move(s), f});
  }

  if (counts[1] > 0) {
    for (Sentence& s : linguistic_distractors(ctx.gold_sentences, counts[1], rng, ctx.vocab)) {
      out.push_back({std::move(s), std::nullopt});
    }
  }

  if (counts[2] > 0) {
    GenParams tree_params;
    tree_params.depth = counts[2] <= 2 ? 1 : 2;
    tree_params.extra_branches = std::min(3, std::max(0, counts[2] - 3));
    tree_params.complexity = ctx.complexity;
    tree_params.stats = ctx.stats;
    std::vector<Formula> leaves =
        negative_tree_distractors(ctx.schemes, tree_params, counts[2], rng, ctx.names);
    std::vector<Component> components;
    for (const Formula& f : leaves) {
      for (Component& c : collect_components(f)) {
        if (std::find(components.begin(), components.end(), c) == components.end()) {
          components.push_back(std::move(c));
        }
      }
    }
    ctx.statements.assign(components, ctx.vocab, rng);
    for (const Formula& f : leaves) {
      Sentence s = finalize_sentence(ctx.renderer.render(f, rng));
      out.push_back({std::move(s), f});
    }
  }

  rng.shuffle(out);
  return out;
}

}  // namespace fld
