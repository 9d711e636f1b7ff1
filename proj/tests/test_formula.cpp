#include "doctest.h"
#include "fld/formula.hpp"
#include "fld/rng.hpp"
#include "testutil.hpp"

using namespace fld;

TEST_SUITE_BEGIN("formula");

TEST_CASE("parse builds the expected trees") {
  Formula f = parse_formula("(A & B)");
  CHECK(f.kind() == FormulaKind::And);
  CHECK(f.left().kind() == FormulaKind::Atom);
  CHECK(f.left().name() == "A");
  CHECK(f.right().name() == "B");

  Formula g = parse_formula("!(A | !B)");
  CHECK(g.kind() == FormulaKind::Not);
  CHECK(g.child().kind() == FormulaKind::Or);
  CHECK(g.child().right().kind() == FormulaKind::Not);
  CHECK(g.child().right().child().name() == "B");

  Formula q = parse_formula("all x. (F(x) -> G(x))");
  CHECK(q.kind() == FormulaKind::Forall);
  CHECK(q.name() == "x");
  CHECK(q.child().kind() == FormulaKind::Implies);
  CHECK(q.child().left().term().kind == TermKind::Variable);
}

TEST_CASE("unbalanced input reports the failing byte offset") {
  try {
    parse_formula("(A &");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 4);
    CHECK(!e.expected().empty());
  }
}

TEST_CASE("lexical classes separate constants from variables") {
  CHECK(parse_formula("F(a)").term().kind == TermKind::Constant);
  CHECK(parse_formula("F(hamburger)").term().kind == TermKind::Constant);
  CHECK_THROWS_AS(parse_formula("all a. F(a)"), ParseError);
  CHECK_THROWS_AS(parse_formula("f"), ParseError);
}

TEST_CASE("print emits canonical text") {
  CHECK(Formula::conj(Formula::atom("A"), Formula::atom("B")).text() == "(A & B)");
  CHECK(Formula::negation(Formula::atom("A")).text() == "!A");
  Formula q = Formula::forall(
      "x", Formula::implies(Formula::pred("F", Term::variable("x")),
                            Formula::pred("G", Term::variable("x"))));
  CHECK(q.text() == "all x. (F(x) -> G(x))");
}

TEST_CASE("parse-print round trip on random formulas") {
  Rng rng(20240811);
  for (int i = 0; i < 10000; ++i) {
    Formula f = testutil::random_formula(rng, 4);
    Formula back = parse_formula(f.text());
    CHECK(back == f);
    CHECK(back.text() == f.text());
  }
}

TEST_CASE("eval follows Boolean semantics") {
  Assignment a{{"A", true}, {"B", false}};
  CHECK(eval(parse_formula("(A & B)"), a) == false);
  CHECK(eval(parse_formula("(A | B)"), a) == true);
  CHECK(eval(parse_formula("(A -> B)"), a) == false);
  CHECK(eval(parse_formula("(B -> A)"), a) == true);

  Assignment all_true{{"F", true}, {"G", true}, {"H", true}};
  CHECK(eval(parse_formula("((F -> G) & (G -> H))"), all_true) == true);

  Assignment both_false{{"F", false}, {"G", false}};
  CHECK(eval(parse_formula("(F | G)"), both_false) == false);
}

TEST_CASE("eval handles quantification over a domain") {
  const std::vector<Term> domain{Term::constant("a"), Term::constant("b")};
  Formula f = parse_formula("all x. F(x)");
  CHECK(eval(f, {{"F(a)", true}, {"F(b)", true}}, domain) == true);
  CHECK(eval(f, {{"F(a)", true}, {"F(b)", false}}, domain) == false);
  CHECK_THROWS_AS(eval(f, {{"F(a)", true}}, {}), EvalError);
  CHECK_THROWS_AS(eval(parse_formula("A"), {}, domain), EvalError);
}

TEST_CASE("semantics sanity properties hold on random inputs") {
  Rng rng(7);
  for (int i = 0; i < 500; ++i) {
    Formula f = testutil::random_ground_formula(rng, 3);
    Formula g = testutil::random_ground_formula(rng, 3);
    std::vector<std::string> units;
    testutil::oracle_units(f, units);
    testutil::oracle_units(g, units);
    Assignment a;
    for (const std::string& u : units) a[u] = rng.chance(0.5);
    CHECK(eval(Formula::negation(f), a) == !eval(f, a));
    CHECK(eval(Formula::conj(f, g), a) == (eval(f, a) && eval(g, a)));
    CHECK(eval(Formula::disj(f, g), a) == (eval(f, a) || eval(g, a)));
    CHECK(eval(Formula::implies(f, g), a) == (!eval(f, a) || eval(g, a)));
  }
}

TEST_CASE("named single-step rules check as expected") {
  // modus ponens
  Argument mp{{parse_formula("F"), parse_formula("(F -> G)")}, parse_formula("G")};
  CHECK(check_validity(mp).valid);

  // syllogism
  Argument syl{{parse_formula("((F -> G) & (G -> H))")}, parse_formula("(F -> H)")};
  CHECK(check_validity(syl).valid);

  // conjunction elimination, both sides
  Argument and_l{{parse_formula("(F & G)")}, parse_formula("F")};
  Argument and_r{{parse_formula("(F & G)")}, parse_formula("G")};
  CHECK(check_validity(and_l).valid);
  CHECK(check_validity(and_r).valid);

  // affirming a disjunct is invalid, with the documented counterexample
  Argument bad{{parse_formula("F"), parse_formula("(F | G)")}, parse_formula("G")};
  ValidityResult r = check_validity(bad);
  CHECK(!r.valid);
  CHECK(r.counterexample.at("F") == true);
  CHECK(r.counterexample.at("G") == false);
}

TEST_CASE("tautologies are valid from no premises") {
  Argument taut{{}, parse_formula("(F | !F)")};
  CHECK(check_validity(taut).valid);
}

TEST_CASE("quantified arguments are grounded over constants plus one fresh one") {
  Argument univ{{parse_formula("all x. F(x)")}, parse_formula("F(a)")};
  CHECK(check_validity(univ).valid);

  // One observed instance does not support the universal claim.
  Argument gen{{parse_formula("F(a)")}, parse_formula("all x. F(x)")};
  CHECK(!check_validity(gen).valid);
}

TEST_CASE("enumeration cap is enforced") {
  Argument wide;
  for (int i = 0; i < 21; ++i) {
    wide.premises.push_back(Formula::atom("A" + std::to_string(i)));
  }
  wide.conclusion = Formula::atom("A0");
  CHECK_THROWS_AS(check_validity(wide), EnumerationCapError);
  CHECK(check_validity(wide, 21).valid);
}

TEST_CASE("check_validity agrees with the independent oracle") {
  Rng rng(424242);
  int valid_seen = 0;
  for (int i = 0; i < 400; ++i) {
    Argument arg;
    const int premise_count = static_cast<int>(rng.range(0, 2));
    for (int p = 0; p < premise_count; ++p) {
      arg.premises.push_back(testutil::random_ground_formula(rng, 2));
    }
    arg.conclusion = testutil::random_ground_formula(rng, 2);
    const bool expected = testutil::oracle_valid(arg.premises, arg.conclusion);
    CHECK(check_validity(arg).valid == expected);
    valid_seen += expected;
  }
  // the sample covers both outcomes
  CHECK(valid_seen > 0);
  CHECK(valid_seen < 400);
}

TEST_CASE("negate collapses a top-level negation only") {
  Formula a = parse_formula("A");
  CHECK(negate(a).text() == "!A");
  CHECK(negate(negate(a)) == a);
  CHECK(negate(parse_formula("!A")).text() == "A");
  CHECK(negate(parse_formula("(A & B)")).text() == "!(A & B)");

  Rng rng(99);
  for (int i = 0; i < 200; ++i) {
    Formula f = testutil::random_ground_formula(rng, 3);
    if (f.kind() == FormulaKind::Not && f.child().kind() == FormulaKind::Not) continue;
    CHECK(negate(negate(f)) == f);
  }
}

TEST_SUITE_END();
