#include "fld/proofgen.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace fld {

// ---------------------------------------------------------------------------
// Compound sampling

Formula sample_compound(Complexity complexity, Rng& rng, NameAllocator& names,
                        const std::optional<std::string>& hole, SampleStats* stats) {
  auto fresh_atomic = [&]() -> Formula {
    if (hole) return Formula::pred(names.next_predicate(), Term::variable(*hole));
    return Formula::atom(names.next_atom());
  };
  const int n = complexity == Complexity::Simple ? 1 : static_cast<int>(rng.range(1, 3));
  if (stats) stats->max_atoms = std::max(stats->max_atoms, n);
  Formula f;
  for (int i = 0; i < n; ++i) {
    Formula piece = fresh_atomic();
    if (complexity == Complexity::Complex && rng.chance(0.25)) {
      piece = Formula::negation(piece);
    }
    if (f.empty()) {
      f = piece;
    } else {
      f = rng.chance(0.5) ? Formula::conj(f, piece) : Formula::disj(f, piece);
    }
  }
  if (complexity == Complexity::Complex && n > 1 && rng.chance(0.15)) {
    f = Formula::negation(f);
  }
  return f;
}

// ---------------------------------------------------------------------------
// ProofTree

std::vector<int> ProofTree::leaf_ids() const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(nodes.size()); ++i) {
    if (!nodes[i].derivation) out.push_back(i);
  }
  return out;
}

std::vector<Formula> ProofTree::leaf_formulas() const {
  std::vector<Formula> out;
  for (int id : leaf_ids()) out.push_back(nodes[id].formula);
  return out;
}

static int depth_rec(const ProofTree& t, int id, std::vector<int>& memo) {
  if (memo[id] >= 0) return memo[id];
  int d = 0;
  if (t.nodes[id].derivation) {
    for (int p : t.nodes[id].derivation->premises) {
      d = std::max(d, depth_rec(t, p, memo) + 1);
    }
  }
  return memo[id] = d;
}

int ProofTree::depth(int id) const {
  if (id < 0) id = root;
  std::vector<int> memo(nodes.size(), -1);
  return depth_rec(*this, id, memo);
}

int ProofTree::distance_from_root(int id) const {
  // Generated trees have a unique parent per node; walk upward.
  int dist = 0;
  int current = id;
  while (current != root) {
    int parent = -1;
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i) {
      if (!nodes[i].derivation) continue;
      const auto& prems = nodes[i].derivation->premises;
      if (std::find(prems.begin(), prems.end(), current) != prems.end()) {
        parent = i;
        break;
      }
    }
    if (parent < 0) throw Error("node not reachable from root");
    ++dist;
    current = parent;
  }
  return dist;
}

static void tree_text_rec(const ProofTree& t, int id, int indent, std::string& out) {
  out.append(static_cast<std::size_t>(indent) * 2, ' ');
  out += t.nodes[id].formula.text();
  if (t.nodes[id].derivation) {
    out += "   [by " + t.nodes[id].derivation->scheme_id + "]";
  } else {
    out += "   [leaf]";
  }
  out += '\n';
  if (t.nodes[id].derivation) {
    for (int p : t.nodes[id].derivation->premises) {
      tree_text_rec(t, p, indent + 1, out);
    }
  }
}

std::string ProofTree::text() const {
  std::string out;
  tree_text_rec(*this, root, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Binding completion

namespace {

enum class MetavarKind { Sentence, Unary };

void scan_kinds(const SchemeFormula& f, std::map<std::string, MetavarKind>& out) {
  switch (f.kind()) {
    case SchemeKind::SentenceVar:
      out.emplace(f.name(), MetavarKind::Sentence);
      return;
    case SchemeKind::UnaryVar:
      out.emplace(f.name(), MetavarKind::Unary);
      return;
    case SchemeKind::Not:
    case SchemeKind::Forall:
      scan_kinds(f.child(), out);
      return;
    case SchemeKind::And:
    case SchemeKind::Or:
    case SchemeKind::Implies:
      scan_kinds(f.left(), out);
      scan_kinds(f.right(), out);
      return;
    default:
      return;
  }
}

std::map<std::string, MetavarKind> metavar_kinds(const ArgumentScheme& s) {
  std::map<std::string, MetavarKind> out;
  for (const SchemeFormula& p : s.premises) scan_kinds(p, out);
  scan_kinds(s.conclusion, out);
  return out;
}

std::vector<std::string> all_term_slots(const ArgumentScheme& s) {
  std::vector<std::string> out;
  auto add = [&](const std::vector<std::string>& slots) {
    for (const std::string& slot : slots) {
      if (std::find(out.begin(), out.end(), slot) == out.end()) out.push_back(slot);
    }
  };
  for (const SchemeFormula& p : s.premises) add(p.term_slots());
  add(s.conclusion.term_slots());
  return out;
}

bool usable_for_generation(const ArgumentScheme& s) { return !s.premises.empty(); }

}  // namespace

Binding fill_binding(const ArgumentScheme& scheme, Binding binding, Complexity complexity,
                     Rng& rng, NameAllocator& names, SampleStats* stats) {
  for (const auto& [name, kind] : metavar_kinds(scheme)) {
    if (binding.formula(name) || binding.abstraction(name)) continue;
    if (kind == MetavarKind::Sentence) {
      binding.bind(name, sample_compound(complexity, rng, names, std::nullopt, stats));
    } else {
      binding.bind(name, Abstraction{"x", sample_compound(complexity, rng, names, "x", stats)});
    }
  }
  for (const std::string& slot : all_term_slots(scheme)) {
    if (!binding.term_slot(slot)) binding.bind_term(slot, Term::constant(names.next_constant()));
  }
  return binding;
}

// ---------------------------------------------------------------------------
// Tree generation

namespace {

ProofTree attempt_tree(const GenParams& p, Rng& rng, NameAllocator& names) {
  ProofTree tree;
  if (p.depth == 0) {
    tree.nodes.push_back({sample_compound(p.complexity, rng, names, std::nullopt, p.stats), std::nullopt});
    tree.root = 0;
    return tree;
  }

  std::vector<const ArgumentScheme*> schemes;
  for (const ArgumentScheme& s : p.schemes) {
    if (usable_for_generation(s)) schemes.push_back(&s);
  }
  if (schemes.empty()) throw GenerationError("no scheme with premises available");

  // Initial application: all metavariables filled with fresh material.
  {
    const ArgumentScheme& first = *schemes[rng.index(schemes.size())];
    Binding b = fill_binding(first, {}, p.complexity, rng, names, p.stats);
    Argument arg = instantiate(first, b);
    Application app{first.id, {}};
    for (const Formula& prem : arg.premises) {
      tree.nodes.push_back({prem, std::nullopt});
      app.premises.push_back(static_cast<int>(tree.nodes.size()) - 1);
    }
    tree.nodes.push_back({arg.conclusion, std::move(app)});
    tree.root = static_cast<int>(tree.nodes.size()) - 1;
  }

  // Forward phase: joint a scheme whose premise is the current root.
  for (int step = 1; step < p.depth; ++step) {
    const Formula root_formula = tree.nodes[tree.root].formula;
    struct Candidate {
      const ArgumentScheme* scheme;
      ForwardMatch fm;
    };
    std::vector<Candidate> candidates;
    for (const ArgumentScheme* s : schemes) {
      for (ForwardMatch& fm : match_forward(*s, root_formula)) {
        candidates.push_back({s, std::move(fm)});
      }
    }
    if (candidates.empty()) throw GenerationError("no scheme premise matches the current root");
    Candidate& chosen = candidates[rng.index(candidates.size())];
    Binding b = fill_binding(*chosen.scheme, chosen.fm.binding, p.complexity, rng, names, p.stats);
    Argument arg = instantiate(*chosen.scheme, b);
    if (arg.premises[chosen.fm.premise_index] != root_formula) {
      throw GenerationError("forward joint did not reproduce the root");
    }
    Application app{chosen.scheme->id, {}};
    for (std::size_t i = 0; i < arg.premises.size(); ++i) {
      if (static_cast<int>(i) == chosen.fm.premise_index) {
        app.premises.push_back(tree.root);
      } else {
        tree.nodes.push_back({arg.premises[i], std::nullopt});
        app.premises.push_back(static_cast<int>(tree.nodes.size()) - 1);
      }
    }
    tree.nodes.push_back({arg.conclusion, std::move(app)});
    tree.root = static_cast<int>(tree.nodes.size()) - 1;
  }

  // Backward phase: expand leaves without exceeding the target depth.
  for (int step = 0; step < p.extra_branches; ++step) {
    struct Candidate {
      int leaf;
      const ArgumentScheme* scheme;
      Binding binding;
    };
    std::vector<Candidate> candidates;
    for (int leaf : tree.leaf_ids()) {
      if (tree.distance_from_root(leaf) + 1 > p.depth) continue;
      for (const ArgumentScheme* s : schemes) {
        for (Binding& b : match_backward(*s, tree.nodes[leaf].formula)) {
          candidates.push_back({leaf, s, std::move(b)});
        }
      }
    }
    if (candidates.empty()) break;
    Candidate& chosen = candidates[rng.index(candidates.size())];
    Binding b = fill_binding(*chosen.scheme, chosen.binding, p.complexity, rng, names, p.stats);
    Argument arg = instantiate(*chosen.scheme, b);
    if (arg.conclusion != tree.nodes[chosen.leaf].formula) {
      throw GenerationError("backward joint did not reproduce the leaf");
    }
    Application app{chosen.scheme->id, {}};
    for (const Formula& prem : arg.premises) {
      tree.nodes.push_back({prem, std::nullopt});
      app.premises.push_back(static_cast<int>(tree.nodes.size()) - 1);
    }
    tree.nodes[chosen.leaf].derivation = std::move(app);
  }

  // Contract checks; violations trigger a retry with fresh material.
  const std::vector<Formula> leaves = tree.leaf_formulas();
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    for (std::size_t j = i + 1; j < leaves.size(); ++j) {
      if (leaves[i] == leaves[j]) throw GenerationError("duplicate leaf formula");
    }
  }
  if (tree.depth() != p.depth) throw GenerationError("depth contract violated");
  return tree;
}

}  // namespace

ProofTree generate_tree(const GenParams& params, Rng& rng, NameAllocator& names) {
  if (params.schemes.empty()) throw GenerationError("scheme set is empty");
  if (params.depth < 0 || params.depth > kMaxTreeDepth) {
    throw GenerationError("depth " + std::to_string(params.depth) + " outside 0.." +
                          std::to_string(kMaxTreeDepth));
  }
  std::string last_failure;
  for (int attempt = 0; attempt < 50; ++attempt) {
    try {
      return attempt_tree(params, rng, names);
    } catch (const GenerationError& e) {
      last_failure = e.what();
    }
  }
  throw GenerationError("tree generation failed after 50 attempts: " + last_failure);
}

ProofTree generate_tree(const GenParams& params) {
  Rng rng(params.rng_seed);
  NameAllocator names;
  return generate_tree(params, rng, names);
}

// ---------------------------------------------------------------------------
// Derivation search

namespace {

void reserve_scheme_names(const SchemeFormula& f, NameAllocator& names) {
  switch (f.kind()) {
    case SchemeKind::Atom:
      names.reserve(f.name());
      return;
    case SchemeKind::PredApp:
      names.reserve(f.name());
      if (f.term().kind == TermKind::Constant) names.reserve(f.term().name);
      return;
    case SchemeKind::UnaryVar:
      if (f.term().kind == TermKind::Constant) names.reserve(f.term().name);
      return;
    case SchemeKind::Not:
    case SchemeKind::Forall:
      reserve_scheme_names(f.child(), names);
      return;
    case SchemeKind::And:
    case SchemeKind::Or:
    case SchemeKind::Implies:
      reserve_scheme_names(f.left(), names);
      reserve_scheme_names(f.right(), names);
      return;
    default:
      return;
  }
}

struct Search {
  std::vector<const ArgumentScheme*> axioms;  // sorted by id
  std::vector<Formula> premises;
  std::vector<Formula> universe;
  std::vector<Abstraction> abstractions;
  std::vector<Term> constants;

  std::size_t cap = 0;
  std::size_t expansions = 0;
  std::unordered_set<std::string> failed;              // goal#budget
  std::unordered_map<std::string, int> leaf_node;      // premise text -> node id
  std::unordered_map<std::string, std::pair<int, int>> proven;  // text -> {depth, node}
  ProofTree arena;

  int make_leaf(const Formula& f) {
    auto [it, fresh] = leaf_node.try_emplace(f.text(), 0);
    if (fresh) {
      arena.nodes.push_back({f, std::nullopt});
      it->second = static_cast<int>(arena.nodes.size()) - 1;
    }
    return it->second;
  }

  std::optional<int> prove(const Formula& goal, int budget);

  // Enumerates values for metavariables the conclusion match left unbound,
  // then tries to prove every premise instance.
  std::optional<std::vector<int>> try_premises(const ArgumentScheme& scheme, const Binding& b,
                                               int budget);
  bool complete(const ArgumentScheme& scheme, Binding& b,
                const std::vector<std::pair<std::string, MetavarKind>>& vars, std::size_t vi,
                const std::vector<std::string>& slots, std::size_t si,
                const std::function<bool(const Binding&)>& sink);
};

bool Search::complete(const ArgumentScheme& scheme, Binding& b,
                      const std::vector<std::pair<std::string, MetavarKind>>& vars, std::size_t vi,
                      const std::vector<std::string>& slots, std::size_t si,
                      const std::function<bool(const Binding&)>& sink) {
  if (vi == vars.size() && si == slots.size()) return sink(b);
  if (vi < vars.size()) {
    const auto& [name, kind] = vars[vi];
    if (kind == MetavarKind::Sentence) {
      for (const Formula& candidate : universe) {
        Binding next = b;
        next.bind(name, candidate);
        if (complete(scheme, next, vars, vi + 1, slots, si, sink)) return true;
      }
    } else {
      for (const Abstraction& candidate : abstractions) {
        Binding next = b;
        next.bind(name, candidate);
        if (complete(scheme, next, vars, vi + 1, slots, si, sink)) return true;
      }
    }
    return false;
  }
  for (const Term& c : constants) {
    Binding next = b;
    next.bind_term(slots[si], c);
    if (complete(scheme, next, vars, vi, slots, si + 1, sink)) return true;
  }
  return false;
}

std::optional<int> Search::prove(const Formula& goal, int budget) {
  for (const Formula& p : premises) {
    if (p == goal) return make_leaf(goal);
  }
  const std::string text = goal.text();
  if (auto it = proven.find(text); it != proven.end() && it->second.first <= budget) {
    return it->second.second;
  }
  if (budget == 0) return std::nullopt;
  const std::string key = text + "#" + std::to_string(budget);
  if (failed.contains(key)) return std::nullopt;
  if (++expansions > cap) {
    throw SearchBudgetError("derivation search exceeded the node-expansion cap");
  }

  for (const ArgumentScheme* scheme : axioms) {
    for (const Binding& b0 : match_backward(*scheme, goal)) {
      std::vector<std::pair<std::string, MetavarKind>> unbound_vars;
      for (const auto& [name, kind] : metavar_kinds(*scheme)) {
        if (!b0.formula(name) && !b0.abstraction(name)) unbound_vars.push_back({name, kind});
      }
      std::vector<std::string> unbound_slots;
      for (const std::string& slot : all_term_slots(*scheme)) {
        if (!b0.term_slot(slot)) unbound_slots.push_back(slot);
      }
      std::optional<int> made;
      Binding seed = b0;
      complete(*scheme, seed, unbound_vars, 0, unbound_slots, 0, [&](const Binding& b) {
        Argument arg = instantiate(*scheme, b);
        if (arg.conclusion != goal) return false;
        std::vector<int> children;
        for (const Formula& premise : arg.premises) {
          std::optional<int> child = prove(premise, budget - 1);
          if (!child) return false;
          children.push_back(*child);
        }
        arena.nodes.push_back({goal, Application{scheme->id, std::move(children)}});
        made = static_cast<int>(arena.nodes.size()) - 1;
        return true;
      });
      if (made) {
        proven[text] = {arena.depth(*made), *made};
        return made;
      }
    }
  }
  failed.insert(key);
  return std::nullopt;
}

void collect_reachable(const ProofTree& t, int id, std::vector<int>& order,
                       std::unordered_map<int, int>& seen) {
  if (seen.contains(id)) return;
  if (t.nodes[id].derivation) {
    for (int p : t.nodes[id].derivation->premises) collect_reachable(t, p, order, seen);
  }
  seen.emplace(id, static_cast<int>(order.size()));
  order.push_back(id);
}

ProofTree compact(const ProofTree& t, int root) {
  std::vector<int> order;
  std::unordered_map<int, int> remap;
  collect_reachable(t, root, order, remap);
  ProofTree out;
  for (int old_id : order) {
    ProofNode node = t.nodes[old_id];
    if (node.derivation) {
      for (int& p : node.derivation->premises) p = remap.at(p);
    }
    out.nodes.push_back(std::move(node));
  }
  out.root = remap.at(root);
  return out;
}

}  // namespace

std::optional<ProofTree> derive_argument(const ArgumentScheme& target,
                                         const std::vector<ArgumentScheme>& schemes,
                                         int max_depth, std::size_t expansion_cap) {
  if (max_depth < 1) throw Error("derive_argument needs max_depth >= 1");

  // Instantiate the target's metavariables with fresh symbols; the search is
  // then over concrete formulas. Fresh symbols keep the instance fully
  // general.
  NameAllocator names;
  for (const SchemeFormula& p : target.premises) reserve_scheme_names(p, names);
  reserve_scheme_names(target.conclusion, names);
  for (const ArgumentScheme& s : schemes) {
    for (const SchemeFormula& p : s.premises) reserve_scheme_names(p, names);
    reserve_scheme_names(s.conclusion, names);
  }

  Binding skolem;
  for (const auto& [name, kind] : metavar_kinds(target)) {
    if (kind == MetavarKind::Sentence) {
      skolem.bind(name, Formula::atom(names.next_atom()));
    } else {
      skolem.bind(name, Abstraction{"x", Formula::pred(names.next_predicate(),
                                                       Term::variable("x"))});
    }
  }
  for (const std::string& slot : all_term_slots(target)) {
    skolem.bind_term(slot, Term::constant(names.next_constant()));
  }
  Argument instance = instantiate(target, skolem);

  Search search;
  search.cap = expansion_cap;
  search.premises = instance.premises;
  for (const ArgumentScheme& s : schemes) search.axioms.push_back(&s);
  std::sort(search.axioms.begin(), search.axioms.end(),
            [](const ArgumentScheme* a, const ArgumentScheme* b) { return a->id < b->id; });

  // Candidate universe: subformulas of the instance, their quantifier
  // instantiations, and single negations of all of those.
  std::vector<std::string> constant_names;
  auto add_constants = [&](const Formula& f) {
    for (const std::string& c : collect_constants(f)) {
      if (std::find(constant_names.begin(), constant_names.end(), c) == constant_names.end()) {
        constant_names.push_back(c);
      }
    }
  };
  for (const Formula& p : search.premises) add_constants(p);
  add_constants(instance.conclusion);
  for (const std::string& c : constant_names) search.constants.push_back(Term::constant(c));
  search.constants.push_back(Term::constant(names.next_constant()));

  auto add_universe = [&](const Formula& f) {
    for (const Formula& u : search.universe) {
      if (u == f) return;
    }
    search.universe.push_back(f);
  };
  std::vector<Formula> base = search.premises;
  base.push_back(instance.conclusion);
  for (const Formula& f : base) {
    for (const Formula& sub : subformulas(f)) {
      if (is_closed(sub)) add_universe(sub);
      if (sub.kind() == FormulaKind::Forall) {
        for (const Term& c : search.constants) {
          Formula inst = substitute_variable(sub.child(), sub.name(), c);
          for (const Formula& sub2 : subformulas(inst)) {
            if (is_closed(sub2)) add_universe(sub2);
          }
        }
      }
    }
  }
  for (std::size_t i = 0, n = search.universe.size(); i < n; ++i) {
    add_universe(negate(search.universe[i]));
  }

  auto add_abstraction = [&](Abstraction a) {
    for (const Abstraction& existing : search.abstractions) {
      if (existing.same_as(a)) return;
    }
    search.abstractions.push_back(std::move(a));
  };
  for (const Formula& u : search.universe) {
    if (u.kind() == FormulaKind::Forall) add_abstraction({u.name(), u.child()});
  }
  for (const Formula& u : search.universe) {
    for (const std::string& c : collect_constants(u)) {
      add_abstraction({"x", abstract_constant(u, c, "x")});
    }
  }

  for (int depth = 1; depth <= max_depth; ++depth) {
    std::optional<int> found = search.prove(instance.conclusion, depth);
    if (found) return compact(search.arena, *found);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Saturation

bool SaturationResult::contains(const Formula& f) const {
  for (const Formula& g : closure) {
    if (g == f) return true;
  }
  return false;
}

namespace {

struct KindBuckets {
  std::vector<Formula> by_kind[7];
  std::vector<Formula> all;

  void add(const Formula& f) {
    by_kind[static_cast<int>(f.kind())].push_back(f);
    all.push_back(f);
  }
  const std::vector<Formula>& bucket(const SchemeFormula& pattern) const {
    switch (pattern.kind()) {
      case SchemeKind::SentenceVar:
      case SchemeKind::UnaryVar:
        return all;
      case SchemeKind::Atom:
        return by_kind[static_cast<int>(FormulaKind::Atom)];
      case SchemeKind::PredApp:
        return by_kind[static_cast<int>(FormulaKind::PredApp)];
      case SchemeKind::Not:
        return by_kind[static_cast<int>(FormulaKind::Not)];
      case SchemeKind::And:
        return by_kind[static_cast<int>(FormulaKind::And)];
      case SchemeKind::Or:
        return by_kind[static_cast<int>(FormulaKind::Or)];
      case SchemeKind::Implies:
        return by_kind[static_cast<int>(FormulaKind::Implies)];
      case SchemeKind::Forall:
        return by_kind[static_cast<int>(FormulaKind::Forall)];
    }
    return all;
  }
};

bool premise_fully_bound(const SchemeFormula& premise, const Binding& b) {
  for (const std::string& name : premise.metavariables()) {
    if (!b.formula(name) && !b.abstraction(name)) return false;
  }
  for (const std::string& slot : premise.term_slots()) {
    if (!b.term_slot(slot)) return false;
  }
  return true;
}

struct Saturator {
  const std::vector<ArgumentScheme>* schemes;
  std::unordered_set<Formula, FormulaHash> universe_set;
  KindBuckets universe;
  std::unordered_set<Formula, FormulaHash> derived_set;
  KindBuckets derived;
  std::vector<Formula> closure_order;
  bool contradiction = false;
  std::size_t max_formulas = 10000;

  bool in_universe(const Formula& f) const { return universe_set.contains(f); }

  bool add_derived(const Formula& f) {
    if (derived_set.contains(f)) return false;
    derived_set.insert(f);
    derived.add(f);
    closure_order.push_back(f);
    const Formula counterpart = f.kind() == FormulaKind::Not ? f.child() : Formula::negation(f);
    if (derived_set.contains(counterpart)) contradiction = true;
    return true;
  }

  // Matches the remaining premises in cheapest-first order.
  bool match_premises(const ArgumentScheme& scheme, std::vector<bool>& done, const Binding& b,
                      int& added) {
    std::size_t best = scheme.premises.size();
    std::size_t best_cost = 0;
    bool best_bound = false;
    for (std::size_t i = 0; i < scheme.premises.size(); ++i) {
      if (done[i]) continue;
      const bool bound = premise_fully_bound(scheme.premises[i], b);
      const std::size_t cost = bound ? 0 : derived.bucket(scheme.premises[i]).size();
      if (best == scheme.premises.size() || cost < best_cost) {
        best = i;
        best_cost = cost;
        best_bound = bound;
      }
    }
    if (best == scheme.premises.size()) {
      emit_conclusion(scheme, b, added);
      return true;
    }
    done[best] = true;
    if (best_bound) {
      const Formula f = instantiate_formula(scheme.premises[best], b);
      if (derived_set.contains(f)) match_premises(scheme, done, b, added);
    } else {
      // Bucket contents can grow while we iterate; snapshot the size so a
      // pass only consumes formulas that existed when it started.
      const std::vector<Formula>& bucket = derived.bucket(scheme.premises[best]);
      const std::size_t snapshot = bucket.size();
      for (std::size_t k = 0; k < snapshot; ++k) {
        for (const Binding& b2 : match(scheme.premises[best], bucket[k], b)) {
          match_premises(scheme, done, b2, added);
        }
      }
    }
    done[best] = false;
    return true;
  }

  void emit_conclusion(const ArgumentScheme& scheme, const Binding& b, int& added) {
    if (premise_fully_bound(scheme.conclusion, b)) {
      const Formula c = instantiate_formula(scheme.conclusion, b);
      if (in_universe(c) && add_derived(c)) ++added;
      return;
    }
    const std::vector<Formula>& bucket = universe.bucket(scheme.conclusion);
    for (const Formula& u : bucket) {
      if (derived_set.contains(u)) continue;
      if (!match(scheme.conclusion, u, b).empty() && add_derived(u)) ++added;
    }
  }
};

}  // namespace

SaturationResult saturate(const std::vector<Formula>& facts,
                          const std::vector<ArgumentScheme>& schemes, std::size_t max_formulas,
                          int max_rounds, const std::vector<Formula>& goal_hints) {
  Saturator s;
  s.schemes = &schemes;
  s.max_formulas = max_formulas;

  // Universe: subformula closure of facts and hints, quantifier
  // instantiations over the instance constants, single negations of all.
  std::vector<std::string> constant_names;
  std::vector<Formula> base = facts;
  base.insert(base.end(), goal_hints.begin(), goal_hints.end());
  for (const Formula& f : base) {
    for (const std::string& c : collect_constants(f)) {
      if (std::find(constant_names.begin(), constant_names.end(), c) == constant_names.end()) {
        constant_names.push_back(c);
      }
    }
  }
  auto add_universe = [&](const Formula& f) {
    if (s.universe_set.insert(f).second) s.universe.add(f);
  };
  for (const Formula& f : base) {
    for (const Formula& sub : subformulas(f)) {
      if (is_closed(sub)) add_universe(sub);
      if (sub.kind() == FormulaKind::Forall) {
        for (const std::string& c : constant_names) {
          Formula inst = substitute_variable(sub.child(), sub.name(), Term::constant(c));
          for (const Formula& sub2 : subformulas(inst)) {
            if (is_closed(sub2)) add_universe(sub2);
          }
        }
      }
    }
  }
  {
    const std::vector<Formula> snapshot = s.universe.all;
    for (const Formula& u : snapshot) add_universe(negate(u));
  }

  for (const Formula& f : facts) s.add_derived(f);

  SaturationResult result;
  int round = 0;
  bool saturated = false;
  while (!saturated && !s.contradiction && round < max_rounds &&
         s.closure_order.size() < max_formulas) {
    ++round;
    int added = 0;
    for (const ArgumentScheme& scheme : schemes) {
      std::vector<bool> done(scheme.premises.size(), false);
      s.match_premises(scheme, done, Binding{}, added);
      if (s.contradiction || s.closure_order.size() >= max_formulas) break;
    }
    saturated = added == 0;
  }

  result.closure = std::move(s.closure_order);
  result.contradiction = s.contradiction;
  result.complete = saturated || s.contradiction;
  return result;
}

}  // namespace fld
