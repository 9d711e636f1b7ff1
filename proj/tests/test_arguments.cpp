#include <fstream>

#include "doctest.h"
#include "fld/arguments.hpp"
#include "fld/names.hpp"
#include "fld/proofgen.hpp"
#include "fld/rng.hpp"
#include "testutil.hpp"

using namespace fld;

TEST_SUITE_BEGIN("arguments");

TEST_CASE("scheme lines parse into schemes") {
  auto schemes = parse_schemes("modus_ponens: %F, (%F -> %G) |- %G");
  REQUIRE(schemes.size() == 1);
  CHECK(schemes[0].id == "modus_ponens");
  CHECK(schemes[0].premises.size() == 2);
  CHECK(schemes[0].conclusion.kind() == SchemeKind::SentenceVar);

  auto elim = parse_schemes("and_elim_left: (%F & %G) |- %F");
  REQUIRE(elim.size() == 1);
  CHECK(elim[0].premises.size() == 1);
  CHECK(!elim[0].introduction_style());

  auto intro = parse_schemes("or_intro_left: %F |- (%F | %G)");
  CHECK(intro[0].introduction_style());

  auto taut = parse_schemes("excluded_middle: |- (%F | !%F)");
  CHECK(taut[0].premises.empty());
}

TEST_CASE("duplicate ids and malformed lines are rejected") {
  CHECK_THROWS_AS(parse_schemes("a: %F |- %F\na: %G |- %G"), Error);
  CHECK_THROWS_AS(parse_schemes("missing_turnstile: %F, %G"), Error);
  CHECK_THROWS_AS(parse_schemes("no_colon |- %F"), Error);
  // slot variable must be quantifier-bound
  CHECK_THROWS_AS(parse_schemes("bad_slot: %F{x} |- %F{x}"), Error);
  // under a quantifier the slot must be the bound variable
  CHECK_THROWS_AS(parse_schemes("bad_quant: all x. %F{a} |- %F{a}"), Error);
}

TEST_CASE("scheme files load from disk with line numbers in errors") {
  const std::string path = "schemes_test.txt";
  {
    std::ofstream out(path);
    out << "# comment line\n\n";
    out << "mp: %F, (%F -> %G) |- %G\n";
    out << "lem: |- (%F | !%F)\n";
  }
  auto schemes = load_schemes(path);
  REQUIRE(schemes.size() == 2);
  CHECK(schemes[0].id == "mp");
  CHECK(schemes[1].id == "lem");

  {
    std::ofstream out(path);
    out << "mp: %F, (%F -> %G) |- %G\n";
    out << "broken: %F |- (%G\n";
  }
  try {
    load_schemes(path);
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find(":2") != std::string::npos);
  }
  std::remove(path.c_str());
}

TEST_CASE("builtin axiom set has the advertised members") {
  const auto& axioms = builtin_axioms();
  CHECK(axioms.size() >= 10);
  CHECK(axioms.size() <= 15);
  bool has_mp = false;
  for (const ArgumentScheme& s : axioms) has_mp |= s.id == "modus_ponens";
  CHECK(has_mp);
}

TEST_CASE("every builtin scheme instantiates to a valid argument") {
  Rng rng(123);
  std::vector<ArgumentScheme> all = builtin_axioms();
  for (const ArgumentScheme& s : builtin_implication()) all.push_back(s);
  for (const ArgumentScheme& scheme : all) {
    for (int i = 0; i < 25; ++i) {
      NameAllocator names;
      SampleStats stats;
      Binding b = fill_binding(scheme, {}, Complexity::Complex, rng, names, &stats);
      Argument arg = instantiate(scheme, b);
      // also with symbols collapsed onto a shared pool, so compounds overlap
      Argument pooled = testutil::pool_names(arg, rng);
      CAPTURE(scheme.id);
      CHECK(check_validity(arg).valid);
      CHECK(check_validity(pooled).valid);
      CHECK(stats.max_atoms <= 3);
    }
  }
}

TEST_CASE("matching binds metavariables one way") {
  const auto schemes = parse_schemes(
      "and_elim_left: (%F & %G) |- %F\n"
      "modus_ponens: %F, (%F -> %G) |- %G");
  const ArgumentScheme& and_elim = schemes[0];
  const ArgumentScheme& mp = schemes[1];

  // Backward: conclusion %F against (A & B) binds %F to the whole formula.
  auto backward = match_backward(and_elim, parse_formula("(A & B)"));
  REQUIRE(backward.size() == 1);
  REQUIRE(backward[0].formula("F") != nullptr);
  CHECK(*backward[0].formula("F") == parse_formula("(A & B)"));
  CHECK(backward[0].formula("G") == nullptr);

  // Forward: %F premise matches anything, (%F -> %G) only implications.
  auto forward = match_forward(mp, parse_formula("(A & B)"));
  REQUIRE(forward.size() == 1);
  CHECK(forward[0].premise_index == 0);
  CHECK(*forward[0].binding.formula("F") == parse_formula("(A & B)"));

  auto forward_impl = match_forward(mp, parse_formula("(A -> C)"));
  REQUIRE(forward_impl.size() == 2);
  CHECK(forward_impl[0].premise_index == 0);
  CHECK(forward_impl[1].premise_index == 1);
  CHECK(*forward_impl[1].binding.formula("F") == parse_formula("A"));
  CHECK(*forward_impl[1].binding.formula("G") == parse_formula("C"));
}

TEST_CASE("matching respects existing bindings") {
  const auto schemes = parse_schemes("and_intro: %F, %G |- (%F & %G)");
  Binding seed;
  seed.bind("F", parse_formula("A"));
  auto results = match(schemes[0].conclusion, parse_formula("(A & B)"), seed);
  REQUIRE(results.size() == 1);
  CHECK(*results[0].formula("G") == parse_formula("B"));
  CHECK(match(schemes[0].conclusion, parse_formula("(B & A)"), seed).empty());
}

TEST_CASE("substituting a returned binding reproduces the target") {
  Rng rng(5150);
  std::vector<ArgumentScheme> all = builtin_axioms();
  for (const ArgumentScheme& s : builtin_implication()) all.push_back(s);
  int matches_seen = 0;
  for (int i = 0; i < 300; ++i) {
    Formula target = testutil::random_formula(rng, 3);
    for (const ArgumentScheme& scheme : all) {
      for (const Binding& b : match_backward(scheme, target)) {
        Formula rebuilt = instantiate_formula(scheme.conclusion, b);
        CHECK(rebuilt == target);
        ++matches_seen;
      }
      for (const ForwardMatch& fm : match_forward(scheme, target)) {
        Formula rebuilt =
            instantiate_formula(scheme.premises[static_cast<std::size_t>(fm.premise_index)],
                                fm.binding);
        CHECK(rebuilt == target);
        ++matches_seen;
      }
    }
  }
  CHECK(matches_seen > 1000);
}

TEST_CASE("quantified matching binds abstractions") {
  const auto schemes = parse_schemes("forall_elim: all x. %F{x} |- %F{a}");
  const ArgumentScheme& elim = schemes[0];

  auto forward = match_forward(elim, parse_formula("all x. (F(x) -> G(x))"));
  REQUIRE(forward.size() == 1);
  Binding b = forward[0].binding;
  b.bind_term("a", Term::constant("c"));
  Argument arg = instantiate(elim, b);
  CHECK(arg.conclusion == parse_formula("(F(c) -> G(c))"));

  // Backward from a ground application: abstract over its constant.
  auto backward = match_backward(elim, parse_formula("G(b)"));
  REQUIRE(backward.size() == 1);
  Argument arg2 = instantiate(elim, backward[0]);
  CHECK(arg2.premises[0] == parse_formula("all x. G(x)"));
}

TEST_CASE("instantiation with a missing metavariable fails") {
  const auto schemes = parse_schemes("modus_ponens: %F, (%F -> %G) |- %G");
  Binding b;
  b.bind("F", parse_formula("A"));
  CHECK_THROWS_AS(instantiate(schemes[0], b), UnboundMetavariable);

  b.bind("G", parse_formula("B"));
  Argument arg = instantiate(schemes[0], b);
  CHECK(arg.premises[0] == parse_formula("A"));
  CHECK(arg.premises[1] == parse_formula("(A -> B)"));
  CHECK(arg.conclusion == parse_formula("B"));
}

TEST_CASE("a syllogism-shaped binding instantiates to a valid argument") {
  const auto schemes =
      parse_schemes("syllogism: ((%F -> %G) & (%G -> %H)) |- (%F -> %H)");
  Binding b;
  b.bind("F", parse_formula("A"));
  b.bind("G", parse_formula("B"));
  b.bind("H", parse_formula("C"));
  Argument arg = instantiate(schemes[0], b);
  CHECK(arg.premises[0] == parse_formula("((A -> B) & (B -> C))"));
  CHECK(arg.conclusion == parse_formula("(A -> C)"));
  CHECK(check_validity(arg).valid);
}

TEST_CASE("the builtin sets round-trip through print and parse") {
  for (const auto* set : {&builtin_axioms(), &builtin_implication()}) {
    const std::string text = print_schemes(*set);
    const auto back = parse_schemes(text);
    REQUIRE(back.size() == set->size());
    for (std::size_t i = 0; i < back.size(); ++i) {
      CHECK(back[i].id == (*set)[i].id);
      CHECK(back[i].conclusion == (*set)[i].conclusion);
      REQUIRE(back[i].premises.size() == (*set)[i].premises.size());
      for (std::size_t p = 0; p < back[i].premises.size(); ++p) {
        CHECK(back[i].premises[p] == (*set)[i].premises[p]);
      }
    }
  }
}

TEST_CASE("the implication set keeps its two base shapes") {
  const auto& schemes = builtin_implication();
  int quantified = 0;
  int ground = 0;
  for (const ArgumentScheme& s : schemes) {
    bool has_forall = false;
    for (const SchemeFormula& p : s.premises) has_forall |= p.kind() == SchemeKind::Forall;
    (has_forall ? quantified : ground)++;
  }
  CHECK(quantified > 0);
  CHECK(ground > 0);

  // the quantified variant in rule form
  const auto target =
      parse_schemes("quantified_mp: all x. (%F{x} -> %G{x}), %F{a} |- %G{a}");
  NameAllocator names;
  Rng rng(1);
  Argument arg =
      instantiate(target[0], fill_binding(target[0], {}, Complexity::Complex, rng, names));
  CHECK(check_validity(arg).valid);
}

TEST_SUITE_END();
