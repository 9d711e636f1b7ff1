#include <fstream>
#include <set>

#include "doctest.h"
#include "fld/formula.hpp"
#include "fld/translator.hpp"

using namespace fld;

TEST_SUITE_BEGIN("translator");

TEST_CASE("template lines parse with alternatives") {
  TemplateBank bank = TemplateBank::parse(
      "implies: \"if {left}, then {right}\" | \"{left} leads to {right}\"\n"
      "atom: \"{atom}\"\n");
  CHECK(bank.alternatives("implies").size() == 2);
  CHECK(bank.alternatives("atom").size() == 1);
  CHECK_THROWS_AS(bank.alternatives("or"), Error);
}

TEST_CASE("cyclic template references are rejected at load") {
  CHECK_THROWS_AS(TemplateBank::parse("a: \"{ref:b}\"\nb: \"{ref:a}\"\n"), Error);
  CHECK_THROWS_AS(TemplateBank::parse("a: \"{ref:a}\"\n"), Error);
}

TEST_CASE("missing referenced shapes are rejected at load") {
  CHECK_THROWS_AS(TemplateBank::parse("a: \"{ref:missing}\"\n"), Error);
  CHECK_THROWS_AS(TemplateBank::parse("a: \"{bogus}\"\n"), Error);
  CHECK_THROWS_AS(TemplateBank::parse("a \"no colon\"\n"), Error);
}

TEST_CASE("redirection through another shape works") {
  TemplateBank bank = TemplateBank::parse(
      "implies: \"{ref:implies_formal}\"\n"
      "implies_formal: \"{left} implies {right}\"\n"
      "atom: \"{atom}\"\n");
  Rng rng(4);
  StatementMap statements =
      assign_statements(collect_components(parse_formula("(A -> B)")),
                        Vocabulary::builtin(Diversity::Less), rng);
  Sentence s = render(parse_formula("(A -> B)"), bank, statements, rng);
  CHECK(s.text.find(" implies ") != std::string::npos);
}

TEST_CASE("builtin vocabularies have the exact advertised sizes") {
  const Vocabulary less = Vocabulary::builtin(Diversity::Less);
  CHECK(less.nouns.size() == 100);
  CHECK(less.verbs.size() == 100);
  CHECK(less.adjectives.size() == 100);

  const Vocabulary more = Vocabulary::builtin(Diversity::More);
  CHECK(more.nouns.size() == 5000);
  CHECK(more.verbs.size() == 5000);
  CHECK(more.adjectives.size() == 5000);

  for (const auto* list : {&more.nouns, &more.verbs, &more.adjectives}) {
    std::set<std::string> unique(list->begin(), list->end());
    CHECK(unique.size() == list->size());
  }
}

TEST_CASE("vocabulary files load and reject duplicates") {
  const std::string path = "vocab_test.tsv";
  {
    std::ofstream out(path);
    out << "sun\tnoun\nrise\tverb\nred\tadjective\n";
  }
  Vocabulary v = Vocabulary::load(path);
  CHECK(v.nouns == std::vector<std::string>{"sun"});
  CHECK(v.verbs == std::vector<std::string>{"rise"});
  {
    std::ofstream out(path);
    out << "sun\tnoun\nsun\tnoun\n";
  }
  CHECK_THROWS_AS(Vocabulary::load(path), Error);
  {
    std::ofstream out(path);
    out << "sun noun\n";  // no tab
  }
  CHECK_THROWS_AS(Vocabulary::load(path), Error);
  std::remove(path.c_str());
}

TEST_CASE("statements follow the class of their component") {
  Rng rng(9);
  const Vocabulary vocab = Vocabulary::builtin(Diversity::Less);
  StatementMap map = assign_statements(
      {{ComponentKind::Atom, "A"}, {ComponentKind::Predicate, "F"}, {ComponentKind::Constant, "a"}},
      vocab, rng);

  const AtomStatement& atom = map.atom("A");
  CHECK(!atom.text.empty());
  CHECK(!atom.annotations.empty());
  // complete sentence: either "the N is ADJ", "the N VERBs" or "a N occurs"
  const bool sentence_like = atom.text.rfind("the ", 0) == 0 || atom.text.rfind("a ", 0) == 0;
  CHECK(sentence_like);

  const PredicateStatement& pred = map.predicate("F");
  const std::string applied = pred.render("the hamburger");
  CHECK(applied.rfind("the hamburger", 0) == 0);
  CHECK(applied.size() > std::string("the hamburger ").size());

  CHECK(map.entity("a").text.rfind("the ", 0) == 0);
  CHECK_THROWS_AS(map.atom("B"), Error);
}

TEST_CASE("distinct components get distinct renderings") {
  Rng rng(10);
  const Vocabulary vocab = Vocabulary::builtin(Diversity::Less);
  std::vector<Component> components;
  for (int i = 0; i < 20; ++i) components.push_back({ComponentKind::Atom, "A" + std::to_string(i)});
  StatementMap map = assign_statements(components, vocab, rng);
  std::set<std::string> texts;
  for (const Component& c : components) texts.insert(map.atom(c.name).text);
  CHECK(texts.size() == components.size());
}

TEST_CASE("a tiny vocabulary eventually runs out of fresh statements") {
  Vocabulary tiny;
  tiny.nouns = {"sun"};
  tiny.verbs = {"rise"};
  tiny.adjectives = {"red"};
  Rng rng(11);
  std::vector<Component> components;
  for (int i = 0; i < 10; ++i) components.push_back({ComponentKind::Atom, "A" + std::to_string(i)});
  CHECK_THROWS_AS(assign_statements(components, tiny, rng), VocabularyExhausted);
}

TEST_CASE("rendering expands nested templates") {
  Rng rng(12);
  const TemplateBank& bank = TemplateBank::builtin(Diversity::Less);
  const Formula f = parse_formula("((A & B) -> C)");
  StatementMap statements =
      assign_statements(collect_components(f), Vocabulary::builtin(Diversity::Less), rng);
  Sentence s = render(f, bank, statements, rng);
  // single template per shape: "if {left}, then {right}" over "{left}, and {right}"
  CHECK(s.text.rfind("if ", 0) == 0);
  CHECK(s.text.find(", and ") != std::string::npos);
  CHECK(s.text.find(", then ") != std::string::npos);
}

TEST_CASE("one renderer gives one rendering per formula") {
  Rng rng(13);
  const Formula f = parse_formula("(A -> A)");
  StatementMap statements =
      assign_statements(collect_components(f), Vocabulary::builtin(Diversity::More), rng);
  Renderer renderer(TemplateBank::builtin(Diversity::More), statements);
  Sentence once = renderer.render(f, rng);
  // both occurrences of A rendered identically, and the cache is stable
  const std::string& atom_text = statements.atom("A").text;
  CHECK(once.text.find(atom_text) != std::string::npos);
  CHECK(once.text.find(atom_text) != once.text.rfind(atom_text));
  CHECK(renderer.render(f, rng).text == once.text);
}

TEST_CASE("quantified formulas render with a subject placeholder") {
  Rng rng(14);
  const Formula f = parse_formula("all x. (F(x) -> G(x))");
  StatementMap statements =
      assign_statements(collect_components(f), Vocabulary::builtin(Diversity::Less), rng);
  Sentence s = render(f, TemplateBank::builtin(Diversity::Less), statements, rng);
  CHECK(s.text.rfind("for every individual, if it ", 0) == 0);
}

TEST_CASE("two alternatives at two shapes give exactly four renderings") {
  TemplateBank bank = TemplateBank::parse(
      "implies: \"if {left}, then {right}\" | \"{right}, provided {left}\"\n"
      "and: \"{left} and {right}\" | \"{right} and also {left}\"\n"
      "atom: \"{atom}\"\n");
  const Formula f = parse_formula("((A & B) -> C)");
  Rng assign_rng(15);
  StatementMap statements =
      assign_statements(collect_components(f), Vocabulary::builtin(Diversity::Less), assign_rng);

  std::set<std::string> renderings;
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    Rng rng(seed);
    renderings.insert(render(f, bank, statements, rng).text);
  }
  CHECK(renderings.size() == 4);
}

TEST_CASE("sentence finalization capitalizes and adds a period") {
  Sentence s{"the sun rises", {{"sun", Pos::Noun}}};
  CHECK(finalize_sentence(s).text == "The sun rises.");
  Sentence already{"Done."};
  CHECK(finalize_sentence(already).text == "Done.");
}

TEST_SUITE_END();
