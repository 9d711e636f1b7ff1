#pragma once

#include <map>
#include <string>
#include <vector>

#include "fld/formula.hpp"
#include "fld/rng.hpp"

namespace fld::testutil {

// ---------------------------------------------------------------------------
// Independent validity oracle.
//
// Deliberately separate from check_validity: its own evaluator, its own unit
// collection, and an odometer loop instead of bit counting. Ground
// (quantifier-free) formulas only.

inline void oracle_units(const Formula& f, std::vector<std::string>& out) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::PredApp: {
      const std::string name = atomic_unit_name(f);
      for (const std::string& u : out) {
        if (u == name) return;
      }
      out.push_back(name);
      return;
    }
    case FormulaKind::Not:
      oracle_units(f.child(), out);
      return;
    case FormulaKind::Forall:
      throw Error("oracle handles ground formulas only");
    default:
      oracle_units(f.left(), out);
      oracle_units(f.right(), out);
      return;
  }
}

inline bool oracle_eval(const Formula& f, const std::map<std::string, bool>& row) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::PredApp:
      return row.at(atomic_unit_name(f));
    case FormulaKind::Not:
      return !oracle_eval(f.child(), row);
    case FormulaKind::And:
      return oracle_eval(f.left(), row) && oracle_eval(f.right(), row);
    case FormulaKind::Or:
      return oracle_eval(f.left(), row) || oracle_eval(f.right(), row);
    case FormulaKind::Implies:
      return !oracle_eval(f.left(), row) || oracle_eval(f.right(), row);
    case FormulaKind::Forall:
      throw Error("oracle handles ground formulas only");
  }
  throw Error("corrupt formula");
}

inline bool oracle_valid(const std::vector<Formula>& premises, const Formula& conclusion) {
  std::vector<std::string> units;
  for (const Formula& p : premises) oracle_units(p, units);
  oracle_units(conclusion, units);

  std::vector<int> odometer(units.size(), 0);
  for (;;) {
    std::map<std::string, bool> row;
    for (std::size_t i = 0; i < units.size(); ++i) row[units[i]] = odometer[i] == 1;
    bool premises_hold = true;
    for (const Formula& p : premises) premises_hold = premises_hold && oracle_eval(p, row);
    if (premises_hold && !oracle_eval(conclusion, row)) return false;

    std::size_t i = 0;
    while (i < odometer.size() && odometer[i] == 1) odometer[i++] = 0;
    if (i == odometer.size()) break;
    odometer[i] = 1;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Random closed formulas for round-trip and property tests.

inline Formula random_formula(Rng& rng, int budget, const std::vector<std::string>& bound_vars = {}) {
  static const std::vector<std::string> atoms = {"A", "B", "C", "D", "E"};
  static const std::vector<std::string> preds = {"F", "G", "H"};
  static const std::vector<std::string> consts = {"a", "b", "c"};

  const std::size_t kinds = budget <= 0 ? 2 : (bound_vars.size() < 2 ? 7 : 6);
  switch (rng.index(kinds)) {
    case 0:
      return Formula::atom(rng.pick(atoms));
    case 1: {
      Term t = !bound_vars.empty() && rng.chance(0.5) ? Term::variable(rng.pick(bound_vars))
                                                      : Term::constant(rng.pick(consts));
      return Formula::pred(rng.pick(preds), std::move(t));
    }
    case 2:
      return Formula::negation(random_formula(rng, budget - 1, bound_vars));
    case 3:
      return Formula::conj(random_formula(rng, budget - 1, bound_vars),
                           random_formula(rng, budget - 1, bound_vars));
    case 4:
      return Formula::disj(random_formula(rng, budget - 1, bound_vars),
                           random_formula(rng, budget - 1, bound_vars));
    case 5:
      return Formula::implies(random_formula(rng, budget - 1, bound_vars),
                              random_formula(rng, budget - 1, bound_vars));
    default: {
      static const std::vector<std::string> vars = {"x", "y", "z"};
      std::string var = vars[bound_vars.size()];
      std::vector<std::string> inner = bound_vars;
      inner.push_back(var);
      return Formula::forall(std::move(var), random_formula(rng, budget - 1, inner));
    }
  }
}

// Collapses fresh symbol names onto small shared pools, so instantiations
// built from fresh material gain overlapping atoms. Renaming a whole
// argument consistently keeps it an instance of its scheme.
inline Formula pool_names(const Formula& f, std::map<std::string, std::string>& renames, Rng& rng) {
  static const std::vector<std::string> upper_pool = {"A", "B", "C"};
  static const std::vector<std::string> const_pool = {"a", "b"};
  auto target = [&](const std::string& name, const std::vector<std::string>& pool) {
    auto it = renames.find(name);
    if (it == renames.end()) it = renames.emplace(name, pool[rng.index(pool.size())]).first;
    return it->second;
  };
  switch (f.kind()) {
    case FormulaKind::Atom:
      return Formula::atom(target("atom:" + f.name(), upper_pool));
    case FormulaKind::PredApp: {
      Term t = f.term();
      if (t.kind == TermKind::Constant) t = Term::constant(target("const:" + t.name, const_pool));
      return Formula::pred(target("pred:" + f.name(), upper_pool), std::move(t));
    }
    case FormulaKind::Not:
      return Formula::negation(pool_names(f.child(), renames, rng));
    case FormulaKind::Forall:
      return Formula::forall(f.name(), pool_names(f.child(), renames, rng));
    case FormulaKind::And:
      return Formula::conj(pool_names(f.left(), renames, rng),
                           pool_names(f.right(), renames, rng));
    case FormulaKind::Or:
      return Formula::disj(pool_names(f.left(), renames, rng),
                           pool_names(f.right(), renames, rng));
    case FormulaKind::Implies:
      return Formula::implies(pool_names(f.left(), renames, rng),
                              pool_names(f.right(), renames, rng));
  }
  throw Error("corrupt formula");
}

inline Argument pool_names(const Argument& arg, Rng& rng) {
  std::map<std::string, std::string> renames;
  Argument out;
  for (const Formula& p : arg.premises) out.premises.push_back(pool_names(p, renames, rng));
  out.conclusion = pool_names(arg.conclusion, renames, rng);
  return out;
}

// Quantifier-free random formula over a small shared atom pool.
inline Formula random_ground_formula(Rng& rng, int budget) {
  static const std::vector<std::string> atoms = {"A", "B", "C", "D"};
  if (budget <= 0) return Formula::atom(rng.pick(atoms));
  switch (rng.index(5)) {
    case 0:
      return Formula::atom(rng.pick(atoms));
    case 1:
      return Formula::negation(random_ground_formula(rng, budget - 1));
    case 2:
      return Formula::conj(random_ground_formula(rng, budget - 1),
                           random_ground_formula(rng, budget - 1));
    case 3:
      return Formula::disj(random_ground_formula(rng, budget - 1),
                           random_ground_formula(rng, budget - 1));
    default:
      return Formula::implies(random_ground_formula(rng, budget - 1),
                              random_ground_formula(rng, budget - 1));
  }
}

}  // namespace fld::testutil
