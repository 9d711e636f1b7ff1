#include "fld/arguments.hpp"

#include <algorithm>
#include <cassert>
#include <fstream>
#include <functional>
#include <sstream>

namespace fld {

// ---------------------------------------------------------------------------
// Nodes

struct SchemeFormula::Node {
  SchemeKind kind;
  std::string name;
  Term term;  // PredApp term or UnaryVar slot
  std::shared_ptr<const Node> a;
  std::shared_ptr<const Node> b;
};

const SchemeFormula::Node& SchemeFormula::node() const {
  assert(node_ && "operation on an empty SchemeFormula handle");
  return *node_;
}

SchemeFormula SchemeFormula::atom(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = SchemeKind::Atom;
  n->name = std::move(name);
  return SchemeFormula(std::move(n));
}

SchemeFormula SchemeFormula::pred(std::string name, Term term) {
  auto n = std::make_shared<Node>();
  n->kind = SchemeKind::PredApp;
  n->name = std::move(name);
  n->term = std::move(term);
  return SchemeFormula(std::move(n));
}

SchemeFormula SchemeFormula::negation(SchemeFormula child) {
  auto n = std::make_shared<Node>();
  n->kind = SchemeKind::Not;
  n->a = child.node_;
  return SchemeFormula(std::move(n));
}

SchemeFormula SchemeFormula::conj(SchemeFormula l, SchemeFormula r) {
  auto n = std::make_shared<Node>();
  n->kind = SchemeKind::And;
  n->a = l.node_;
  n->b = r.node_;
  return SchemeFormula(std::move(n));
}

SchemeFormula SchemeFormula::disj(SchemeFormula l, SchemeFormula r) {
  auto n = std::make_shared<Node>();
  n->kind = SchemeKind::Or;
  n->a = l.node_;
  n->b = r.node_;
  return SchemeFormula(std::move(n));
}

SchemeFormula SchemeFormula::implies(SchemeFormula l, SchemeFormula r) {
  auto n = std::make_shared<Node>();
  n->kind = SchemeKind::Implies;
  n->a = l.node_;
  n->b = r.node_;
  return SchemeFormula(std::move(n));
}

SchemeFormula SchemeFormula::forall(std::string var, SchemeFormula body) {
  auto n = std::make_shared<Node>();
  n->kind = SchemeKind::Forall;
  n->name = std::move(var);
  n->a = body.node_;
  return SchemeFormula(std::move(n));
}

SchemeFormula SchemeFormula::sentence_var(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = SchemeKind::SentenceVar;
  n->name = std::move(name);
  return SchemeFormula(std::move(n));
}

SchemeFormula SchemeFormula::unary_var(std::string name, Term slot) {
  auto n = std::make_shared<Node>();
  n->kind = SchemeKind::UnaryVar;
  n->name = std::move(name);
  n->term = std::move(slot);
  return SchemeFormula(std::move(n));
}

SchemeFormula SchemeFormula::lift(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      return atom(f.name());
    case FormulaKind::PredApp:
      return pred(f.name(), f.term());
    case FormulaKind::Not:
      return negation(lift(f.child()));
    case FormulaKind::And:
      return conj(lift(f.left()), lift(f.right()));
    case FormulaKind::Or:
      return disj(lift(f.left()), lift(f.right()));
    case FormulaKind::Implies:
      return implies(lift(f.left()), lift(f.right()));
    case FormulaKind::Forall:
      return forall(f.name(), lift(f.child()));
  }
  throw Error("corrupt formula");
}

SchemeKind SchemeFormula::kind() const { return node().kind; }
const std::string& SchemeFormula::name() const { return node().name; }
const Term& SchemeFormula::term() const { return node().term; }
SchemeFormula SchemeFormula::child() const { return SchemeFormula(node().a); }
SchemeFormula SchemeFormula::left() const { return SchemeFormula(node().a); }
SchemeFormula SchemeFormula::right() const { return SchemeFormula(node().b); }

static bool scheme_nodes_equal(const SchemeFormula::Node* a, const SchemeFormula::Node* b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->name != b->name || !(a->term == b->term)) return false;
  return scheme_nodes_equal(a->a.get(), b->a.get()) && scheme_nodes_equal(a->b.get(), b->b.get());
}

bool SchemeFormula::operator==(const SchemeFormula& other) const {
  return scheme_nodes_equal(node_.get(), other.node_.get());
}

static void print_scheme_node(const SchemeFormula::Node& n, std::string& out) {
  switch (n.kind) {
    case SchemeKind::Atom:
      out += n.name;
      break;
    case SchemeKind::PredApp:
      out += n.name;
      out += '(';
      out += n.term.name;
      out += ')';
      break;
    case SchemeKind::SentenceVar:
      out += '%';
      out += n.name;
      break;
    case SchemeKind::UnaryVar:
      out += '%';
      out += n.name;
      out += '{';
      out += n.term.name;
      out += '}';
      break;
    case SchemeKind::Not:
      out += '!';
      print_scheme_node(*n.a, out);
      break;
    case SchemeKind::And:
    case SchemeKind::Or:
    case SchemeKind::Implies:
      out += '(';
      print_scheme_node(*n.a, out);
      out += n.kind == SchemeKind::And ? " & " : n.kind == SchemeKind::Or ? " | " : " -> ";
      print_scheme_node(*n.b, out);
      out += ')';
      break;
    case SchemeKind::Forall:
      out += "all ";
      out += n.name;
      out += ". ";
      print_scheme_node(*n.a, out);
      break;
  }
}

std::string SchemeFormula::text() const {
  std::string out;
  print_scheme_node(node(), out);
  return out;
}

static void walk_scheme(const SchemeFormula& f, const std::function<void(const SchemeFormula&)>& fn) {
  fn(f);
  switch (f.kind()) {
    case SchemeKind::Not:
    case SchemeKind::Forall:
      walk_scheme(f.child(), fn);
      break;
    case SchemeKind::And:
    case SchemeKind::Or:
    case SchemeKind::Implies:
      walk_scheme(f.left(), fn);
      walk_scheme(f.right(), fn);
      break;
    default:
      break;
  }
}

static void push_unique(std::vector<std::string>& v, const std::string& s) {
  if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
}

std::vector<std::string> SchemeFormula::metavariables() const {
  std::vector<std::string> out;
  walk_scheme(*this, [&](const SchemeFormula& g) {
    if (g.kind() == SchemeKind::SentenceVar || g.kind() == SchemeKind::UnaryVar) {
      push_unique(out, g.name());
    }
  });
  return out;
}

std::vector<std::string> SchemeFormula::term_slots() const {
  std::vector<std::string> out;
  walk_scheme(*this, [&](const SchemeFormula& g) {
    if (g.kind() == SchemeKind::UnaryVar && g.term().kind == TermKind::Constant) {
      push_unique(out, g.term().name);
    }
    if (g.kind() == SchemeKind::PredApp && g.term().kind == TermKind::Constant) {
      push_unique(out, g.term().name);
    }
  });
  return out;
}

// ---------------------------------------------------------------------------
// Binding

bool Abstraction::same_as(const Abstraction& other) const {
  const Term probe = Term::variable("\x01");
  return apply(probe) == other.apply(probe);
}

const Formula* Binding::formula(const std::string& name) const {
  auto it = vars_.find(name);
  if (it == vars_.end()) return nullptr;
  return std::get_if<Formula>(&it->second);
}

const Abstraction* Binding::abstraction(const std::string& name) const {
  auto it = vars_.find(name);
  if (it == vars_.end()) return nullptr;
  return std::get_if<Abstraction>(&it->second);
}

const Term* Binding::term_slot(const std::string& name) const {
  auto it = terms_.find(name);
  if (it == terms_.end()) return nullptr;
  return &it->second;
}

std::string Binding::text() const {
  std::string out;
  for (const auto& [name, value] : vars_) {
    if (!out.empty()) out += ", ";
    out += '%' + name + " = ";
    if (const Formula* f = std::get_if<Formula>(&value)) {
      out += f->text();
    } else {
      const Abstraction& a = std::get<Abstraction>(value);
      out += a.hole + " :: " + a.body.text();
    }
  }
  for (const auto& [name, term] : terms_) {
    if (!out.empty()) out += ", ";
    out += name + " = " + term.name;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Matching

namespace {

struct VarPair {
  std::string pattern_var;
  std::string target_var;
};

const std::string* env_lookup(const std::vector<VarPair>& env, const std::string& pattern_var) {
  for (auto it = env.rbegin(); it != env.rend(); ++it) {
    if (it->pattern_var == pattern_var) return &it->target_var;
  }
  return nullptr;
}

void match_rec(const SchemeFormula& pat, const Formula& tgt, const Binding& b,
               std::vector<VarPair>& env, std::vector<Binding>& out);

void match_unary_var(const SchemeFormula& pat, const Formula& tgt, const Binding& b,
                     std::vector<VarPair>& env, std::vector<Binding>& out) {
  const std::string& name = pat.name();
  const Term& slot = pat.term();
  const Abstraction* bound = b.abstraction(name);
  if (b.formula(name)) return;  // bound as a sentence elsewhere

  if (slot.kind == TermKind::Variable) {
    const std::string* tv = env_lookup(env, slot.name);
    if (!tv) return;  // slot variable not bound by an enclosing quantifier
    const Term hole = Term::variable(*tv);
    if (bound) {
      if (bound->apply(hole) == tgt) out.push_back(b);
      return;
    }
    // The body may mention only the quantified variable.
    for (const std::string& v : free_variables(tgt)) {
      if (v != *tv) return;
    }
    Binding next = b;
    next.bind(name, Abstraction{*tv, tgt});
    out.push_back(std::move(next));
    return;
  }

  // Constant slot: unifies with any constant occurring in the target.
  const Term* slot_value = b.term_slot(slot.name);
  if (slot_value) {
    if (bound) {
      if (bound->apply(*slot_value) == tgt) out.push_back(b);
      return;
    }
    const std::vector<std::string> constants = collect_constants(tgt);
    if (std::find(constants.begin(), constants.end(), slot_value->name) == constants.end()) {
      return;
    }
    Binding next = b;
    next.bind(name, Abstraction{"x", abstract_constant(tgt, slot_value->name, "x")});
    out.push_back(std::move(next));
    return;
  }
  for (const std::string& c : collect_constants(tgt)) {
    if (bound) {
      if (bound->apply(Term::constant(c)) == tgt) {
        Binding next = b;
        next.bind_term(slot.name, Term::constant(c));
        out.push_back(std::move(next));
      }
      continue;
    }
    Binding next = b;
    next.bind_term(slot.name, Term::constant(c));
    next.bind(name, Abstraction{"x", abstract_constant(tgt, c, "x")});
    out.push_back(std::move(next));
  }
}

void match_rec(const SchemeFormula& pat, const Formula& tgt, const Binding& b,
               std::vector<VarPair>& env, std::vector<Binding>& out) {
  switch (pat.kind()) {
    case SchemeKind::SentenceVar: {
      if (b.abstraction(pat.name())) return;
      if (!is_closed(tgt)) return;  // open subformulas never bind to sentence vars
      if (const Formula* bound = b.formula(pat.name())) {
        if (*bound == tgt) out.push_back(b);
        return;
      }
      Binding next = b;
      next.bind(pat.name(), tgt);
      out.push_back(std::move(next));
      return;
    }
    case SchemeKind::UnaryVar:
      match_unary_var(pat, tgt, b, env, out);
      return;
    case SchemeKind::Atom:
      if (tgt.kind() == FormulaKind::Atom && tgt.name() == pat.name()) out.push_back(b);
      return;
    case SchemeKind::PredApp: {
      if (tgt.kind() != FormulaKind::PredApp || tgt.name() != pat.name()) return;
      const Term& pt = pat.term();
      const Term& tt = tgt.term();
      if (pt.kind == TermKind::Variable) {
        const std::string* tv = env_lookup(env, pt.name);
        if (tv && tt.kind == TermKind::Variable && tt.name == *tv) out.push_back(b);
        return;
      }
      if (tt.kind != TermKind::Constant) return;
      if (const Term* bound = b.term_slot(pt.name)) {
        if (*bound == tt) out.push_back(b);
        return;
      }
      Binding next = b;
      next.bind_term(pt.name, tt);
      out.push_back(std::move(next));
      return;
    }
    case SchemeKind::Not:
      if (tgt.kind() == FormulaKind::Not) match_rec(pat.child(), tgt.child(), b, env, out);
      return;
    case SchemeKind::Forall: {
      if (tgt.kind() != FormulaKind::Forall) return;
      env.push_back({pat.name(), tgt.name()});
      match_rec(pat.child(), tgt.child(), b, env, out);
      env.pop_back();
      return;
    }
    case SchemeKind::And:
    case SchemeKind::Or:
    case SchemeKind::Implies: {
      FormulaKind want = pat.kind() == SchemeKind::And   ? FormulaKind::And
                         : pat.kind() == SchemeKind::Or  ? FormulaKind::Or
                                                         : FormulaKind::Implies;
      if (tgt.kind() != want) return;
      std::vector<Binding> after_left;
      match_rec(pat.left(), tgt.left(), b, env, after_left);
      for (const Binding& bl : after_left) {
        match_rec(pat.right(), tgt.right(), bl, env, out);
      }
      return;
    }
  }
}

}  // namespace

std::vector<Binding> match(const SchemeFormula& pattern, const Formula& target,
                           const Binding& seed) {
  std::vector<Binding> out;
  std::vector<VarPair> env;
  match_rec(pattern, target, seed, env, out);
  return out;
}

std::vector<ForwardMatch> match_forward(const ArgumentScheme& scheme, const Formula& root) {
  std::vector<ForwardMatch> out;
  for (std::size_t i = 0; i < scheme.premises.size(); ++i) {
    for (Binding& b : match(scheme.premises[i], root)) {
      out.push_back({static_cast<int>(i), std::move(b)});
    }
  }
  return out;
}

std::vector<Binding> match_backward(const ArgumentScheme& scheme, const Formula& leaf) {
  return match(scheme.conclusion, leaf);
}

// ---------------------------------------------------------------------------
// Instantiation

Formula instantiate_formula(const SchemeFormula& pattern, const Binding& binding) {
  switch (pattern.kind()) {
    case SchemeKind::SentenceVar: {
      const Formula* f = binding.formula(pattern.name());
      if (!f) throw UnboundMetavariable("unbound metavariable %" + pattern.name());
      return *f;
    }
    case SchemeKind::UnaryVar: {
      const Abstraction* a = binding.abstraction(pattern.name());
      if (!a) throw UnboundMetavariable("unbound metavariable %" + pattern.name());
      const Term& slot = pattern.term();
      if (slot.kind == TermKind::Variable) return a->apply(slot);
      const Term* c = binding.term_slot(slot.name);
      if (!c) throw UnboundMetavariable("unbound term slot " + slot.name);
      return a->apply(*c);
    }
    case SchemeKind::Atom:
      return Formula::atom(pattern.name());
    case SchemeKind::PredApp: {
      const Term& t = pattern.term();
      if (t.kind == TermKind::Variable) return Formula::pred(pattern.name(), t);
      const Term* c = binding.term_slot(t.name);
      if (!c) throw UnboundMetavariable("unbound term slot " + t.name);
      return Formula::pred(pattern.name(), *c);
    }
    case SchemeKind::Not:
      return Formula::negation(instantiate_formula(pattern.child(), binding));
    case SchemeKind::And:
      return Formula::conj(instantiate_formula(pattern.left(), binding),
                           instantiate_formula(pattern.right(), binding));
    case SchemeKind::Or:
      return Formula::disj(instantiate_formula(pattern.left(), binding),
                           instantiate_formula(pattern.right(), binding));
    case SchemeKind::Implies:
      return Formula::implies(instantiate_formula(pattern.left(), binding),
                              instantiate_formula(pattern.right(), binding));
    case SchemeKind::Forall:
      return Formula::forall(pattern.name(), instantiate_formula(pattern.child(), binding));
  }
  throw Error("corrupt scheme formula");
}

Argument instantiate(const ArgumentScheme& scheme, const Binding& binding) {
  Argument arg;
  for (const SchemeFormula& p : scheme.premises) {
    arg.premises.push_back(instantiate_formula(p, binding));
  }
  arg.conclusion = instantiate_formula(scheme.conclusion, binding);
  return arg;
}

// ---------------------------------------------------------------------------
// ArgumentScheme

std::vector<std::string> ArgumentScheme::metavariables() const {
  std::vector<std::string> out;
  for (const SchemeFormula& p : premises) {
    for (const std::string& m : p.metavariables()) push_unique(out, m);
  }
  for (const std::string& m : conclusion.metavariables()) push_unique(out, m);
  return out;
}

bool ArgumentScheme::introduction_style() const {
  std::vector<std::string> premise_vars;
  std::vector<std::string> premise_slots;
  for (const SchemeFormula& p : premises) {
    for (const std::string& m : p.metavariables()) push_unique(premise_vars, m);
    for (const std::string& s : p.term_slots()) push_unique(premise_slots, s);
  }
  for (const std::string& m : conclusion.metavariables()) {
    if (std::find(premise_vars.begin(), premise_vars.end(), m) == premise_vars.end()) return true;
  }
  for (const std::string& s : conclusion.term_slots()) {
    if (std::find(premise_slots.begin(), premise_slots.end(), s) == premise_slots.end()) return true;
  }
  return false;
}

std::string ArgumentScheme::text() const {
  std::string out = id + ": ";
  for (std::size_t i = 0; i < premises.size(); ++i) {
    if (i) out += ", ";
    out += premises[i].text();
  }
  if (!premises.empty()) out += ' ';
  out += "|- " + conclusion.text();
  return out;
}

// ---------------------------------------------------------------------------
// Scheme formula parsing

namespace {

struct SchemeParser {
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

  bool at_turnstile() {
    skip_ws();
    return pos + 1 < src.size() && src[pos] == '|' && src[pos + 1] == '-';
  }

  static bool ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
  }
  static bool ident_char(char c) {
    return ident_start(c) || (c >= '0' && c <= '9') || c == '_';
  }

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

  SchemeFormula formula() {
    skip_ws();
    if (pos >= src.size()) fail({"formula"});
    char c = src[pos];
    if (c == '%') {
      ++pos;
      std::string name = ident();
      if (name.empty()) fail({"metavariable name"});
      if (consume('{')) {
        Term slot = term();
        expect('}', "'}'");
        return SchemeFormula::unary_var(std::move(name), std::move(slot));
      }
      return SchemeFormula::sentence_var(std::move(name));
    }
    if (c == '!') {
      ++pos;
      return SchemeFormula::negation(formula());
    }
    if (c == '(') {
      ++pos;
      SchemeFormula lhs = formula();
      skip_ws();
      if (consume(')')) return lhs;
      SchemeKind op;
      if (consume('&')) {
        op = SchemeKind::And;
      } else if (peek('|') && !at_turnstile()) {
        ++pos;
        op = SchemeKind::Or;
      } else if (peek('-') && pos + 1 < src.size() && src[pos + 1] == '>') {
        pos += 2;
        op = SchemeKind::Implies;
      } else {
        fail({"'&'", "'|'", "'->'", "')'"});
      }
      SchemeFormula rhs = formula();
      expect(')', "')'");
      switch (op) {
        case SchemeKind::And:
          return SchemeFormula::conj(lhs, rhs);
        case SchemeKind::Or:
          return SchemeFormula::disj(lhs, rhs);
        default:
          return SchemeFormula::implies(lhs, rhs);
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
        return SchemeFormula::forall(std::move(var), formula());
      }
      if (name[0] >= 'A' && name[0] <= 'Z') {
        if (consume('(')) {
          Term t = term();
          expect(')', "')'");
          return SchemeFormula::pred(std::move(name), std::move(t));
        }
        return SchemeFormula::atom(std::move(name));
      }
      pos = at;
      fail({"formula (atoms and predicates start uppercase)"});
    }
    fail({"'%'", "'!'", "'('", "'all'", "identifier"});
  }
};

// Scope rules: under a quantifier a unary metavariable's slot must be the
// bound variable; outside one it must be a constant slot. Plain variables
// must be quantifier-bound.
void validate_scheme_formula(const SchemeFormula& f, std::vector<std::string>& binders,
                             const std::string& context) {
  switch (f.kind()) {
    case SchemeKind::UnaryVar: {
      const Term& slot = f.term();
      if (slot.kind == TermKind::Variable) {
        if (std::find(binders.begin(), binders.end(), slot.name) == binders.end()) {
          throw Error(context + ": slot variable '" + slot.name +
                      "' of %" + f.name() + " is not quantifier-bound");
        }
      } else if (!binders.empty()) {
        throw Error(context + ": %" + f.name() +
                    " under a quantifier must use the bound variable as slot");
      }
      return;
    }
    case SchemeKind::PredApp:
      if (f.term().kind == TermKind::Variable &&
          std::find(binders.begin(), binders.end(), f.term().name) == binders.end()) {
        throw Error(context + ": free variable '" + f.term().name + "'");
      }
      return;
    case SchemeKind::Forall: {
      binders.push_back(f.name());
      validate_scheme_formula(f.child(), binders, context);
      binders.pop_back();
      return;
    }
    case SchemeKind::Not:
      validate_scheme_formula(f.child(), binders, context);
      return;
    case SchemeKind::And:
    case SchemeKind::Or:
    case SchemeKind::Implies:
      validate_scheme_formula(f.left(), binders, context);
      validate_scheme_formula(f.right(), binders, context);
      return;
    default:
      return;
  }
}

}  // namespace

SchemeFormula parse_scheme_formula(std::string_view text) {
  SchemeParser p{text};
  SchemeFormula f = p.formula();
  p.skip_ws();
  if (p.pos != text.size()) p.fail({"end of input"});
  std::vector<std::string> binders;
  validate_scheme_formula(f, binders, "scheme formula");
  return f;
}

// ---------------------------------------------------------------------------
// Scheme files

namespace {

ArgumentScheme parse_scheme_line(std::string_view line, const std::string& context) {
  std::size_t colon = line.find(':');
  if (colon == std::string_view::npos) throw Error(context + ": missing ':' after scheme id");
  std::string id;
  for (char c : line.substr(0, colon)) {
    if (c == ' ' || c == '\t') continue;
    id += c;
  }
  if (id.empty()) throw Error(context + ": empty scheme id");

  ArgumentScheme scheme;
  scheme.id = std::move(id);
  SchemeParser p{line};
  p.pos = colon + 1;
  if (!p.at_turnstile()) {
    for (;;) {
      scheme.premises.push_back(p.formula());
      if (p.at_turnstile()) break;
      if (!p.consume(',')) p.fail({"','", "'|-'"});
    }
  }
  p.pos += 2;  // consume "|-"
  scheme.conclusion = p.formula();
  p.skip_ws();
  if (p.pos != line.size()) p.fail({"end of line"});

  std::vector<std::string> binders;
  for (const SchemeFormula& f : scheme.premises) validate_scheme_formula(f, binders, context);
  validate_scheme_formula(scheme.conclusion, binders, context);
  return scheme;
}

}  // namespace

std::vector<ArgumentScheme> parse_schemes(std::string_view text, const std::string& source) {
  std::vector<ArgumentScheme> out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;

    if (std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    std::size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) continue;
    std::size_t e = line.find_last_not_of(" \t\r");
    line = line.substr(b, e - b + 1);

    const std::string context = source + ":" + std::to_string(line_no);
    ArgumentScheme scheme;
    try {
      scheme = parse_scheme_line(line, context);
    } catch (const ParseError& pe) {
      throw Error(context + ": " + pe.what());
    }
    for (const ArgumentScheme& existing : out) {
      if (existing.id == scheme.id) {
        throw Error(context + ": duplicate scheme id '" + scheme.id + "'");
      }
    }
    out.push_back(std::move(scheme));
  }
  return out;
}

std::vector<ArgumentScheme> load_schemes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open scheme file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_schemes(buf.str(), path);
}

std::string print_schemes(const std::vector<ArgumentScheme>& schemes) {
  std::string out;
  for (const ArgumentScheme& s : schemes) {
    out += s.text();
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Built-in rule sets

namespace {

// Flat premises-to-conclusion rules only: no assumption discharge. The
// implication bridges (impl_to_or, or_to_impl, impl_trans) keep conclusions
// with an implication shape reachable, which rules of the elimination /
// introduction kind alone cannot produce.
constexpr const char* kAxiomSchemes = R"(
modus_ponens: %F, (%F -> %G) |- %G
and_intro: %F, %G |- (%F & %G)
and_elim_left: (%F & %G) |- %F
and_elim_right: (%F & %G) |- %G
or_intro_left: %F |- (%F | %G)
or_intro_right: %G |- (%F | %G)
or_elim: (%F | %G), (%F -> %H), (%G -> %H) |- %H
neg_intro: (%F -> %G), (%F -> !%G) |- !%F
dneg_elim: !!%F |- %F
impl_to_or: (%F -> %G) |- (!%F | %G)
or_to_impl: (%F | %G) |- (!%G -> %F)
impl_trans: (%F -> %G), (%G -> %H) |- (%F -> %H)
forall_elim: all x. %F{x} |- %F{a}
forall_mp: all x. (%F{x} -> %G{x}), all x. %F{x} |- all x. %G{x}
)";

// Two base shapes, ground and quantified modus ponens, each with a
// conjunctive-antecedent variant.
constexpr const char* kImplicationSchemes = R"(
impl_mp: %F, (%F -> %G) |- %G
impl_mp_and: %F1, %F2, ((%F1 & %F2) -> %G) |- %G
impl_mp_forall: all x. (%F{x} -> %G{x}), %F{a} |- %G{a}
impl_mp_forall_and: all x. ((%F1{x} & %F2{x}) -> %G{x}), %F1{a}, %F2{a} |- %G{a}
)";

}  // namespace

const std::vector<ArgumentScheme>& builtin_axioms() {
  static const std::vector<ArgumentScheme> schemes = parse_schemes(kAxiomSchemes, "<builtin:axioms>");
  return schemes;
}

const std::vector<ArgumentScheme>& builtin_implication() {
  static const std::vector<ArgumentScheme> schemes =
      parse_schemes(kImplicationSchemes, "<builtin:implication>");
  return schemes;
}

}  // namespace fld
