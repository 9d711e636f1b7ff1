#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fld/formula.hpp"

namespace fld {

class UnboundMetavariable : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Scheme formulas: the formula grammar extended with metavariables.
//
//   %F      sentence metavariable, stands for any closed formula
//   %F{x}   unary metavariable applied to a term; under a quantifier the slot
//           is the bound variable, elsewhere it is a constant slot that
//           unifies with any constant
//
// Constants written in a scheme act as term slots: "a" in `%F{a}` binds to
// whichever constant the matched formula supplies.

enum class SchemeKind { Atom, PredApp, Not, And, Or, Implies, Forall, SentenceVar, UnaryVar };

class SchemeFormula {
 public:
  SchemeFormula() = default;

  static SchemeFormula atom(std::string name);
  static SchemeFormula pred(std::string name, Term term);
  static SchemeFormula negation(SchemeFormula child);
  static SchemeFormula conj(SchemeFormula l, SchemeFormula r);
  static SchemeFormula disj(SchemeFormula l, SchemeFormula r);
  static SchemeFormula implies(SchemeFormula l, SchemeFormula r);
  static SchemeFormula forall(std::string var, SchemeFormula body);
  static SchemeFormula sentence_var(std::string name);
  static SchemeFormula unary_var(std::string name, Term slot);
  static SchemeFormula lift(const Formula& f);  // concrete formula as a scheme

  bool empty() const { return node_ == nullptr; }
  SchemeKind kind() const;
  const std::string& name() const;  // Atom/PredApp/Forall var/metavariable name
  const Term& term() const;         // PredApp term or UnaryVar slot
  SchemeFormula child() const;
  SchemeFormula left() const;
  SchemeFormula right() const;

  bool operator==(const SchemeFormula& other) const;
  bool operator!=(const SchemeFormula& other) const { return !(*this == other); }

  std::string text() const;

  // Names of %-metavariables in first-occurrence order.
  std::vector<std::string> metavariables() const;
  // Constant term slots in first-occurrence order.
  std::vector<std::string> term_slots() const;

  struct Node;  // opaque; defined in the implementation

 private:
  explicit SchemeFormula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  const Node& node() const;
  std::shared_ptr<const Node> node_;
};

SchemeFormula parse_scheme_formula(std::string_view text);

// A formula with one designated free variable; what a unary metavariable
// binds to.
struct Abstraction {
  std::string hole;
  Formula body;

  Formula apply(const Term& t) const { return substitute_variable(body, hole, t); }
  bool same_as(const Abstraction& other) const;
};

// Internal hole name for abstractions built by matching; distinct from every
// parseable variable, so quantifiers in the body can never capture it.
inline constexpr const char* kAbstractionHole = "$";

// Accumulated match results: formula metavariables map to closed formulas or
// abstractions, constant slots map to constants.
class Binding {
 public:
  const Formula* formula(const std::string& name) const;
  const Abstraction* abstraction(const std::string& name) const;
  const Term* term_slot(const std::string& name) const;
  bool has(const std::string& name) const { return vars_.contains(name); }
  bool has_term(const std::string& name) const { return terms_.contains(name); }

  void bind(const std::string& name, Formula f) { vars_.insert_or_assign(name, std::move(f)); }
  void bind(const std::string& name, Abstraction a) { vars_.insert_or_assign(name, std::move(a)); }
  void bind_term(const std::string& name, Term t) { terms_.insert_or_assign(name, std::move(t)); }

  std::string text() const;  // debug rendering, deterministic

 private:
  std::map<std::string, std::variant<Formula, Abstraction>> vars_;
  std::map<std::string, Term> terms_;
};

// ---------------------------------------------------------------------------
// Argument schemes

struct ArgumentScheme {
  std::string id;
  std::vector<SchemeFormula> premises;  // may be empty (tautology scheme)
  SchemeFormula conclusion;

  // Metavariable names over premises then conclusion, first occurrence order.
  std::vector<std::string> metavariables() const;
  // True when some conclusion metavariable appears in no premise; such
  // schemes need caller-supplied material when applied backward or forward.
  bool introduction_style() const;

  std::string text() const;  // one line in the scheme file format
};

// One-way matching. Metavariables bind to parts of the concrete target;
// metavariables not constrained by the matched formula stay unbound.
// Results are in deterministic order (leftmost-innermost alternatives first).
std::vector<Binding> match(const SchemeFormula& pattern, const Formula& target,
                           const Binding& seed = {});

struct ForwardMatch {
  int premise_index = 0;
  Binding binding;
};

// All ways some premise of the scheme matches `root`, premise index ascending.
std::vector<ForwardMatch> match_forward(const ArgumentScheme& scheme, const Formula& root);
// All ways the scheme's conclusion matches `leaf`.
std::vector<Binding> match_backward(const ArgumentScheme& scheme, const Formula& leaf);

// Builds the concrete argument. Throws UnboundMetavariable if the binding
// does not cover every metavariable and term slot of the scheme.
Argument instantiate(const ArgumentScheme& scheme, const Binding& binding);
Formula instantiate_formula(const SchemeFormula& pattern, const Binding& binding);

// ---------------------------------------------------------------------------
// Scheme files
//
// One scheme per line:  id: premise, premise, ... |- conclusion
// '#' starts a comment; blank lines are skipped.

std::vector<ArgumentScheme> parse_schemes(std::string_view text, const std::string& source = "<string>");
std::vector<ArgumentScheme> load_schemes(const std::string& path);
std::string print_schemes(const std::vector<ArgumentScheme>& schemes);

// The shipped deduction rule sets. Every scheme in both sets passes
// check_validity for any instantiation of its metavariables.
const std::vector<ArgumentScheme>& builtin_axioms();
const std::vector<ArgumentScheme>& builtin_implication();

}  // namespace fld
