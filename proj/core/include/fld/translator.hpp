#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fld/formula.hpp"
#include "fld/rng.hpp"

namespace fld {

class VocabularyExhausted : public Error {
 public:
  using Error::Error;
};

enum class Diversity { Less, More };
enum class Pos { Noun, Verb, Adjective };

std::string pos_name(Pos pos);

// Per-part-of-speech word lists. The Less class has exactly 100 words per
// list, More exactly 5000.
struct Vocabulary {
  std::vector<std::string> nouns;
  std::vector<std::string> verbs;
  std::vector<std::string> adjectives;

  const std::vector<std::string>& list(Pos pos) const;

  static Vocabulary builtin(Diversity size_class);
  // File format: one "word<TAB>pos" per line, pos in {noun, verb, adjective}.
  static Vocabulary load(const std::string& path);
};

struct WordAnnotation {
  std::string token;  // surface token as it appears in the text
  Pos pos;
};

struct Sentence {
  std::string text;
  std::vector<WordAnnotation> annotations;  // content words, flip targets
};

// Capitalizes the first letter and adds a terminal period.
Sentence finalize_sentence(Sentence s);

// ---------------------------------------------------------------------------
// Template bank
//
// File format, one shape per line:
//   shape: "template one" | "template two"
// Placeholders: {left} {right} for binary connectives, {body} for negation
// and quantification, {atom} for the atomic statement, and {ref:SHAPE} to
// redirect to another shape's templates for the same formula.

class TemplateBank {
 public:
  static TemplateBank parse(std::string_view text, const std::string& source = "<string>");
  static TemplateBank load(const std::string& path);
  static const TemplateBank& builtin(Diversity diversity);

  bool has(const std::string& shape) const { return shapes_.contains(shape); }
  const std::vector<std::string>& alternatives(const std::string& shape) const;

 private:
  void validate(const std::string& source) const;
  std::map<std::string, std::vector<std::string>> shapes_;
};

// Shape key of a formula's top node: atom, predapp, not, and, or, implies,
// forall.
std::string shape_of(const Formula& f);

// ---------------------------------------------------------------------------
// Statement assignment

enum class ComponentKind { Atom, Predicate, Constant };

struct Component {
  ComponentKind kind;
  std::string name;
  auto operator<=>(const Component&) const = default;
};

// All atomic components of a formula, first-occurrence order.
std::vector<Component> collect_components(const Formula& f);

struct AtomStatement {
  std::string text;  // complete sentence body, lowercase
  std::vector<WordAnnotation> annotations;
};

struct PredicateStatement {
  enum class Form { Verb, IsAdjective, IsNoun };
  Form form;
  std::string word;

  std::string render(const std::string& subject) const;
  WordAnnotation annotation() const;
};

struct EntityStatement {
  std::string text;  // noun phrase
  std::vector<WordAnnotation> annotations;
};

// Random natural-language fragments for atomic components, distinct within
// one instance. Atoms become complete sentences, predicates become predicate
// phrases, constants become entity phrases.
class StatementMap {
 public:
  // Assigns fresh statements to any component not yet covered.
  void assign(const std::vector<Component>& components, const Vocabulary& vocab, Rng& rng);

  const AtomStatement& atom(const std::string& name) const;
  const PredicateStatement& predicate(const std::string& name) const;
  const EntityStatement& entity(const std::string& name) const;

 private:
  std::map<std::string, AtomStatement> atoms_;
  std::map<std::string, PredicateStatement> predicates_;
  std::map<std::string, EntityStatement> entities_;
  std::vector<std::string> used_texts_;
};

StatementMap assign_statements(const std::vector<Component>& components, const Vocabulary& vocab,
                               Rng& rng);

// ---------------------------------------------------------------------------
// Rendering

// Expands nested templates over a formula. Renderings are cached per
// renderer, so within one instance the same formula always produces the
// same sentence.
class Renderer {
 public:
  Renderer(const TemplateBank& bank, const StatementMap& statements)
      : bank_(&bank), statements_(&statements) {}

  Sentence render(const Formula& f, Rng& rng);

 private:
  Sentence expand(const Formula& f, Rng& rng);
  Sentence expand_with_shape(const Formula& f, const std::string& shape, Rng& rng, int ref_depth);
  Sentence atomic_statement(const Formula& f) const;

  const TemplateBank* bank_;
  const StatementMap* statements_;
  std::unordered_map<Formula, Sentence, FormulaHash> cache_;
};

// Single-shot rendering without instance caching.
Sentence render(const Formula& f, const TemplateBank& bank, const StatementMap& statements,
                Rng& rng);

}  // namespace fld
