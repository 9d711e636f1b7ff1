#include "fld/formula.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <set>
#include <sstream>

namespace fld {

namespace {

std::size_t combine_hash(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9E3779B97F4A7C15ull + (seed << 6) + (seed >> 2));
}

}  // namespace

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected,
                       const std::string& message)
    : Error(message), offset_(offset), expected_(std::move(expected)) {}

bool is_variable_name(std::string_view name) {
  return name.size() == 1 && (name[0] == 'x' || name[0] == 'y' || name[0] == 'z');
}

Term Term::from_name(std::string name) {
  return is_variable_name(name) ? variable(std::move(name)) : constant(std::move(name));
}

// ---------------------------------------------------------------------------
// Nodes

struct Formula::Node {
  FormulaKind kind;
  std::string name;  // Atom, PredApp predicate, Forall variable
  Term term;         // PredApp
  std::shared_ptr<const Node> a;
  std::shared_ptr<const Node> b;
  std::size_t hash = 0;
};

const Formula::Node& Formula::node() const {
  assert(node_ && "operation on an empty Formula handle");
  return *node_;
}

static std::size_t node_hash(FormulaKind kind, const std::string& name, const Term& term,
                             const Formula::Node* a, const Formula::Node* b) {
  std::size_t h = static_cast<std::size_t>(kind) * 0x9E3779B9u + 1;
  h = combine_hash(h, std::hash<std::string>{}(name));
  h = combine_hash(h, static_cast<std::size_t>(term.kind));
  h = combine_hash(h, std::hash<std::string>{}(term.name));
  if (a) h = combine_hash(h, a->hash);
  if (b) h = combine_hash(h, b->hash);
  return h;
}

Formula Formula::atom(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Atom;
  n->name = std::move(name);
  n->hash = node_hash(n->kind, n->name, n->term, nullptr, nullptr);
  return Formula(std::move(n));
}

Formula Formula::pred(std::string name, Term term) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::PredApp;
  n->name = std::move(name);
  n->term = std::move(term);
  n->hash = node_hash(n->kind, n->name, n->term, nullptr, nullptr);
  return Formula(std::move(n));
}

Formula Formula::negation(Formula child) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Not;
  n->a = child.node_;
  n->hash = node_hash(n->kind, n->name, n->term, n->a.get(), nullptr);
  return Formula(std::move(n));
}

Formula Formula::conj(Formula left, Formula right) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::And;
  n->a = left.node_;
  n->b = right.node_;
  n->hash = node_hash(n->kind, n->name, n->term, n->a.get(), n->b.get());
  return Formula(std::move(n));
}

Formula Formula::disj(Formula left, Formula right) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Or;
  n->a = left.node_;
  n->b = right.node_;
  n->hash = node_hash(n->kind, n->name, n->term, n->a.get(), n->b.get());
  return Formula(std::move(n));
}

Formula Formula::implies(Formula left, Formula right) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Implies;
  n->a = left.node_;
  n->b = right.node_;
  n->hash = node_hash(n->kind, n->name, n->term, n->a.get(), n->b.get());
  return Formula(std::move(n));
}

Formula Formula::forall(std::string var, Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Forall;
  n->name = std::move(var);
  n->a = body.node_;
  n->hash = node_hash(n->kind, n->name, n->term, n->a.get(), nullptr);
  return Formula(std::move(n));
}

FormulaKind Formula::kind() const { return node().kind; }
const std::string& Formula::name() const { return node().name; }
const Term& Formula::term() const { return node().term; }
Formula Formula::child() const { return Formula(node().a); }
Formula Formula::left() const { return Formula(node().a); }
Formula Formula::right() const { return Formula(node().b); }
std::size_t Formula::hash() const { return node().hash; }

static bool nodes_equal(const Formula::Node* a, const Formula::Node* b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->hash != b->hash || a->kind != b->kind) return false;
  if (a->name != b->name || !(a->term == b->term)) return false;
  return nodes_equal(a->a.get(), b->a.get()) && nodes_equal(a->b.get(), b->b.get());
}

bool Formula::operator==(const Formula& other) const {
  return nodes_equal(node_.get(), other.node_.get());
}

// ---------------------------------------------------------------------------
// Printing

static void print_node(const Formula::Node& n, std::string& out) {
  switch (n.kind) {
    case FormulaKind::Atom:
      out += n.name;
      break;
    case FormulaKind::PredApp:
      out += n.name;
      out += '(';
      out += n.term.name;
      out += ')';
      break;
    case FormulaKind::Not:
      out += '!';
      print_node(*n.a, out);
      break;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies: {
      out += '(';
      print_node(*n.a, out);
      out += n.kind == FormulaKind::And ? " & " : n.kind == FormulaKind::Or ? " | " : " -> ";
      print_node(*n.b, out);
      out += ')';
      break;
    }
    case FormulaKind::Forall:
      out += "all ";
      out += n.name;
      out += ". ";
      print_node(*n.a, out);
      break;
  }
}

std::string Formula::text() const {
  std::string out;
  print_node(node(), out);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Parser {
  std::string_view src;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < src.size() && (src[pos] == ' ' || src[pos] == '\t')) ++pos;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) {
    std::string msg = "syntax error at offset " + std::to_string(pos) + ": expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) msg += " | ";
      msg += expected[i];
    }
    throw ParseError(pos, std::move(expected), msg);
  }

  bool peek(char c) {
    skip_ws();
    return pos < src.size() && src[pos] == c;
  }

  bool consume(char c) {
    if (peek(c)) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect(char c, const std::string& what) {
    if (!consume(c)) fail({what});
  }

  static bool ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
  }
  static bool ident_char(char c) {
    return ident_start(c) || (c >= '0' && c <= '9') || c == '_';
  }

  // Empty result means "no identifier here".
  std::string ident() {
    skip_ws();
    if (pos >= src.size() || !ident_start(src[pos])) return {};
    std::size_t start = pos;
    while (pos < src.size() && ident_char(src[pos])) ++pos;
    return std::string(src.substr(start, pos - start));
  }

  Term term() {
    skip_ws();
    std::size_t at = pos;
    std::string name = ident();
    if (name.empty() || !(name[0] >= 'a' && name[0] <= 'z')) {
      pos = at;
      fail({"lowercase term"});
    }
    return Term::from_name(std::move(name));
  }

  Formula formula() {
    skip_ws();
    if (pos >= src.size()) fail({"formula"});
    char c = src[pos];
    if (c == '!') {
      ++pos;
      return Formula::negation(formula());
    }
    if (c == '(') {
      ++pos;
      Formula lhs = formula();
      skip_ws();
      if (consume(')')) return lhs;  // redundant grouping
      FormulaKind op;
      if (consume('&')) {
        op = FormulaKind::And;
      } else if (peek('|') && !(pos + 1 < src.size() && src[pos + 1] == '-')) {
        ++pos;
        op = FormulaKind::Or;
      } else if (peek('-') && pos + 1 < src.size() && src[pos + 1] == '>') {
        pos += 2;
        op = FormulaKind::Implies;
      } else {
        fail({"'&'", "'|'", "'->'", "')'"});
      }
      Formula rhs = formula();
      expect(')', "')'");
      switch (op) {
        case FormulaKind::And:
          return Formula::conj(lhs, rhs);
        case FormulaKind::Or:
          return Formula::disj(lhs, rhs);
        default:
          return Formula::implies(lhs, rhs);
      }
    }
    if (ident_start(c)) {
      std::size_t at = pos;
      std::string name = ident();
      if (name == "all") {
        skip_ws();
        std::size_t var_at = pos;
        std::string var = ident();
        if (!is_variable_name(var)) {
          pos = var_at;
          fail({"quantified variable (x, y or z)"});
        }
        expect('.', "'.'");
        return Formula::forall(std::move(var), formula());
      }
      if (name[0] >= 'A' && name[0] <= 'Z') {
        if (consume('(')) {
          Term t = term();
          expect(')', "')'");
          return Formula::pred(std::move(name), std::move(t));
        }
        return Formula::atom(std::move(name));
      }
      pos = at;
      fail({"formula (atoms and predicates start uppercase)"});
    }
    fail({"'!'", "'('", "'all'", "identifier"});
  }
};

}  // namespace

Formula parse_formula(std::string_view text) {
  Parser p{text};
  Formula f = p.formula();
  p.skip_ws();
  if (p.pos != text.size()) p.fail({"end of input"});
  return f;
}

// ---------------------------------------------------------------------------
// Evaluation

std::string atomic_unit_name(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      return f.name();
    case FormulaKind::PredApp:
      return f.name() + "(" + f.term().name + ")";
    default:
      throw EvalError("not an atomic formula: " + f.text());
  }
}

bool eval(const Formula& f, const Assignment& assignment, const std::vector<Term>& domain) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::PredApp: {
      if (f.kind() == FormulaKind::PredApp && f.term().kind == TermKind::Variable) {
        throw EvalError("unbound variable in " + f.text());
      }
      auto it = assignment.find(atomic_unit_name(f));
      if (it == assignment.end()) {
        throw EvalError("assignment is missing atomic unit " + atomic_unit_name(f));
      }
      return it->second;
    }
    case FormulaKind::Not:
      return !eval(f.child(), assignment, domain);
    case FormulaKind::And:
      return eval(f.left(), assignment, domain) && eval(f.right(), assignment, domain);
    case FormulaKind::Or:
      return eval(f.left(), assignment, domain) || eval(f.right(), assignment, domain);
    case FormulaKind::Implies:
      return !eval(f.left(), assignment, domain) || eval(f.right(), assignment, domain);
    case FormulaKind::Forall: {
      if (domain.empty()) throw EvalError("empty domain under quantifier in " + f.text());
      for (const Term& c : domain) {
        if (!eval(substitute_variable(f.child(), f.name(), c), assignment, domain)) return false;
      }
      return true;
    }
  }
  throw EvalError("corrupt formula");
}

// ---------------------------------------------------------------------------
// Structural helpers

static void walk(const Formula& f, const std::function<void(const Formula&)>& fn) {
  fn(f);
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::PredApp:
      break;
    case FormulaKind::Not:
    case FormulaKind::Forall:
      walk(f.child(), fn);
      break;
    default:
      walk(f.left(), fn);
      walk(f.right(), fn);
  }
}

std::vector<Formula> subformulas(const Formula& f) {
  std::vector<Formula> out;
  walk(f, [&](const Formula& g) {
    for (const Formula& h : out) {
      if (h == g) return;
    }
    out.push_back(g);
  });
  return out;
}

static std::vector<std::string> collect_names(const Formula& f,
                                              const std::function<void(const Formula&, std::vector<std::string>&)>& grab) {
  std::vector<std::string> out;
  walk(f, [&](const Formula& g) { grab(g, out); });
  return out;
}

static void push_unique(std::vector<std::string>& v, const std::string& s) {
  if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
}

std::vector<std::string> collect_atoms(const Formula& f) {
  return collect_names(f, [](const Formula& g, std::vector<std::string>& out) {
    if (g.kind() == FormulaKind::Atom) push_unique(out, g.name());
  });
}

std::vector<std::string> collect_predicates(const Formula& f) {
  return collect_names(f, [](const Formula& g, std::vector<std::string>& out) {
    if (g.kind() == FormulaKind::PredApp) push_unique(out, g.name());
  });
}

std::vector<std::string> collect_constants(const Formula& f) {
  return collect_names(f, [](const Formula& g, std::vector<std::string>& out) {
    if (g.kind() == FormulaKind::PredApp && g.term().kind == TermKind::Constant) {
      push_unique(out, g.term().name);
    }
  });
}

int atom_occurrences(const Formula& f) {
  int n = 0;
  walk(f, [&](const Formula& g) {
    if (g.kind() == FormulaKind::Atom || g.kind() == FormulaKind::PredApp) ++n;
  });
  return n;
}

bool contains_forall(const Formula& f) {
  bool found = false;
  walk(f, [&](const Formula& g) { found |= g.kind() == FormulaKind::Forall; });
  return found;
}

static void free_vars_rec(const Formula& f, std::set<std::string>& bound,
                          std::vector<std::string>& out) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      break;
    case FormulaKind::PredApp:
      if (f.term().kind == TermKind::Variable && !bound.contains(f.term().name)) {
        push_unique(out, f.term().name);
      }
      break;
    case FormulaKind::Not:
      free_vars_rec(f.child(), bound, out);
      break;
    case FormulaKind::Forall: {
      bool inserted = bound.insert(f.name()).second;
      free_vars_rec(f.child(), bound, out);
      if (inserted) bound.erase(f.name());
      break;
    }
    default:
      free_vars_rec(f.left(), bound, out);
      free_vars_rec(f.right(), bound, out);
  }
}

std::vector<std::string> free_variables(const Formula& f) {
  std::set<std::string> bound;
  std::vector<std::string> out;
  free_vars_rec(f, bound, out);
  return out;
}

bool is_closed(const Formula& f) { return free_variables(f).empty(); }

Formula substitute_variable(const Formula& f, const std::string& var, const Term& replacement) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      return f;
    case FormulaKind::PredApp:
      if (f.term().kind == TermKind::Variable && f.term().name == var) {
        return Formula::pred(f.name(), replacement);
      }
      return f;
    case FormulaKind::Not:
      return Formula::negation(substitute_variable(f.child(), var, replacement));
    case FormulaKind::And:
      return Formula::conj(substitute_variable(f.left(), var, replacement),
                           substitute_variable(f.right(), var, replacement));
    case FormulaKind::Or:
      return Formula::disj(substitute_variable(f.left(), var, replacement),
                           substitute_variable(f.right(), var, replacement));
    case FormulaKind::Implies:
      return Formula::implies(substitute_variable(f.left(), var, replacement),
                              substitute_variable(f.right(), var, replacement));
    case FormulaKind::Forall:
      if (f.name() == var) return f;  // shadowed
      if (replacement.kind == TermKind::Variable && f.name() == replacement.name) {
        throw Error("variable capture substituting " + var + " in " + f.text());
      }
      return Formula::forall(f.name(), substitute_variable(f.child(), var, replacement));
  }
  throw Error("corrupt formula");
}

Formula abstract_constant(const Formula& f, const std::string& constant, const std::string& var) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      return f;
    case FormulaKind::PredApp:
      if (f.term().kind == TermKind::Constant && f.term().name == constant) {
        return Formula::pred(f.name(), Term::variable(var));
      }
      return f;
    case FormulaKind::Not:
      return Formula::negation(abstract_constant(f.child(), constant, var));
    case FormulaKind::And:
      return Formula::conj(abstract_constant(f.left(), constant, var),
                           abstract_constant(f.right(), constant, var));
    case FormulaKind::Or:
      return Formula::disj(abstract_constant(f.left(), constant, var),
                           abstract_constant(f.right(), constant, var));
    case FormulaKind::Implies:
      return Formula::implies(abstract_constant(f.left(), constant, var),
                              abstract_constant(f.right(), constant, var));
    case FormulaKind::Forall:
      return Formula::forall(f.name(), abstract_constant(f.child(), constant, var));
  }
  throw Error("corrupt formula");
}

// ---------------------------------------------------------------------------
// Validity

Formula negate(const Formula& f) {
  if (f.kind() == FormulaKind::Not) return f.child();
  return Formula::negation(f);
}

namespace {

// Expands quantifiers into conjunctions over the domain.
Formula ground(const Formula& f, const std::vector<Term>& domain) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::PredApp:
      return f;
    case FormulaKind::Not:
      return Formula::negation(ground(f.child(), domain));
    case FormulaKind::And:
      return Formula::conj(ground(f.left(), domain), ground(f.right(), domain));
    case FormulaKind::Or:
      return Formula::disj(ground(f.left(), domain), ground(f.right(), domain));
    case FormulaKind::Implies:
      return Formula::implies(ground(f.left(), domain), ground(f.right(), domain));
    case FormulaKind::Forall: {
      Formula acc;
      for (const Term& c : domain) {
        Formula inst = ground(substitute_variable(f.child(), f.name(), c), domain);
        acc = acc.empty() ? inst : Formula::conj(acc, inst);
      }
      return acc;
    }
  }
  throw Error("corrupt formula");
}

void collect_units(const Formula& f, std::vector<std::string>& out) {
  walk(f, [&](const Formula& g) {
    if (g.kind() == FormulaKind::Atom || g.kind() == FormulaKind::PredApp) {
      push_unique(out, atomic_unit_name(g));
    }
  });
}

std::string fresh_constant(const std::vector<std::string>& used) {
  for (int round = 0;; ++round) {
    for (char c = 'a'; c <= 'w'; ++c) {
      std::string name(1, c);
      if (round > 0) name += std::to_string(round + 1);
      if (std::find(used.begin(), used.end(), name) == used.end()) return name;
    }
  }
}

}  // namespace

ValidityResult check_validity(const Argument& argument, std::size_t unit_cap) {
  std::vector<std::string> constants;
  auto gather = [&](const Formula& f) {
    for (const std::string& c : collect_constants(f)) push_unique(constants, c);
  };
  for (const Formula& p : argument.premises) gather(p);
  gather(argument.conclusion);

  std::vector<Term> domain;
  for (const std::string& c : constants) domain.push_back(Term::constant(c));
  domain.push_back(Term::constant(fresh_constant(constants)));

  std::vector<Formula> grounded;
  for (const Formula& p : argument.premises) grounded.push_back(ground(p, domain));
  Formula conclusion = ground(argument.conclusion, domain);

  std::vector<std::string> units;
  for (const Formula& p : grounded) collect_units(p, units);
  collect_units(conclusion, units);

  if (units.size() > unit_cap) {
    throw EnumerationCapError("validity check needs " + std::to_string(units.size()) +
                              " atomic units, cap is " + std::to_string(unit_cap));
  }

  const std::size_t n = units.size();
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    Assignment a;
    for (std::size_t i = 0; i < n; ++i) a[units[i]] = (bits >> i) & 1;
    bool premises_hold = true;
    for (const Formula& p : grounded) {
      if (!eval(p, a)) {
        premises_hold = false;
        break;
      }
    }
    if (premises_hold && !eval(conclusion, a)) {
      return {false, std::move(a)};
    }
  }
  return {true, {}};
}

}  // namespace fld
