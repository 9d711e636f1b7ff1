#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fld {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Syntax error carrying the byte offset and the token classes that would
// have been accepted there.
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& message);
  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

class EvalError : public Error {
 public:
  using Error::Error;
};

// Raised when a validity check would have to enumerate more atomic units
// than the configured cap allows.
class EnumerationCapError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Terms

enum class TermKind { Constant, Variable };

// Single-letter x, y, z are variables; every other lowercase identifier is a
// constant.
bool is_variable_name(std::string_view name);

struct Term {
  TermKind kind = TermKind::Constant;
  std::string name;

  static Term constant(std::string name) { return {TermKind::Constant, std::move(name)}; }
  static Term variable(std::string name) { return {TermKind::Variable, std::move(name)}; }
  // Classifies by the lexical rule above.
  static Term from_name(std::string name);

  bool operator==(const Term&) const = default;
  bool operator<(const Term& o) const {
    return kind != o.kind ? kind < o.kind : name < o.name;
  }
};

// ---------------------------------------------------------------------------
// Formulas
//
// Immutable tree with value-semantics handles; copying shares nodes, so
// formulas are cheap to pass around and safe to use across threads.

enum class FormulaKind { Atom, PredApp, Not, And, Or, Implies, Forall };

class Formula {
 public:
  Formula() = default;  // empty handle; only valid for later assignment

  static Formula atom(std::string name);
  static Formula pred(std::string name, Term term);
  static Formula negation(Formula child);
  static Formula conj(Formula left, Formula right);
  static Formula disj(Formula left, Formula right);
  static Formula implies(Formula left, Formula right);
  static Formula forall(std::string var, Formula body);

  bool empty() const { return node_ == nullptr; }
  FormulaKind kind() const;
  // Atom name, PredApp predicate name, or Forall bound variable.
  const std::string& name() const;
  const Term& term() const;  // PredApp only
  Formula child() const;     // Not and Forall
  Formula left() const;
  Formula right() const;

  bool operator==(const Formula& other) const;
  bool operator!=(const Formula& other) const { return !(*this == other); }
  std::size_t hash() const;

  // Canonical text: fully parenthesized binary connectives, "!" negation,
  // "all x. body" quantification. parse_formula(text()) reproduces the tree.
  std::string text() const;

  struct Node;  // opaque; defined in the implementation

 private:
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  const Node& node() const;
  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// Parses the concrete grammar:
//   formula := "all" VAR "." formula | "!" formula
//            | "(" formula [BINOP formula] ")"
//            | ATOM | PRED "(" term ")"
// Atoms and predicates start uppercase; constants and variables lowercase.
Formula parse_formula(std::string_view text);

// Truth assignment over atomic units. An atomic unit is an atom name ("A")
// or a ground predicate application rendered as text ("F(a)").
using Assignment = std::map<std::string, bool>;

std::string atomic_unit_name(const Formula& atom_or_predapp);

// Standard Boolean semantics; a universally quantified body is evaluated as
// the conjunction of its instantiations over `domain`. Throws EvalError on a
// missing atomic unit or an empty domain under a quantifier.
bool eval(const Formula& f, const Assignment& assignment, const std::vector<Term>& domain = {});

// ---------------------------------------------------------------------------
// Arguments (deduction rule instances)

struct Argument {
  std::vector<Formula> premises;  // may be empty (tautology arguments)
  Formula conclusion;
};

struct ValidityResult {
  bool valid = false;
  Assignment counterexample;  // set when !valid: premises all 1, conclusion 0
};

// Brute-force validity: grounds quantifiers over the argument's constants
// plus one fresh constant, then enumerates all assignments of the atomic
// units. Throws EnumerationCapError above `unit_cap` units.
ValidityResult check_validity(const Argument& argument, std::size_t unit_cap = 20);

// Not(f), except that a top-level Not is stripped instead of doubled.
Formula negate(const Formula& f);

// ---------------------------------------------------------------------------
// Structural helpers

// Distinct subformulas in first-occurrence order (includes f itself).
std::vector<Formula> subformulas(const Formula& f);
// Component names in first-occurrence order, deduplicated.
std::vector<std::string> collect_atoms(const Formula& f);
std::vector<std::string> collect_predicates(const Formula& f);
std::vector<std::string> collect_constants(const Formula& f);
// Number of atomic-formula occurrences (atoms plus predicate applications).
int atom_occurrences(const Formula& f);
bool contains_forall(const Formula& f);
// Variables free in f (not bound by an enclosing quantifier).
std::vector<std::string> free_variables(const Formula& f);
bool is_closed(const Formula& f);
// Replaces free occurrences of variable `var` with `replacement`.
Formula substitute_variable(const Formula& f, const std::string& var, const Term& replacement);
// Replaces every occurrence of constant `constant` with variable `var`.
Formula abstract_constant(const Formula& f, const std::string& constant, const std::string& var);

}  // namespace fld
