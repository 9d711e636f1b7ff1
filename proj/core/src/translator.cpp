#include "fld/translator.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace fld {

std::string pos_name(Pos pos) {
  switch (pos) {
    case Pos::Noun:
      return "noun";
    case Pos::Verb:
      return "verb";
    case Pos::Adjective:
      return "adjective";
  }
  return "?";
}

const std::vector<std::string>& Vocabulary::list(Pos pos) const {
  switch (pos) {
    case Pos::Noun:
      return nouns;
    case Pos::Verb:
      return verbs;
    case Pos::Adjective:
      return adjectives;
  }
  return nouns;
}

// ---------------------------------------------------------------------------
// Built-in vocabulary

namespace {

const std::vector<std::string> kSeedNouns = {
    "hamburger", "sun",     "lion",    "earthquake", "year",   "lawyer", "river",   "engine",
    "garden",    "museum",  "pencil",  "bridge",     "doctor", "island", "mirror",  "planet",
    "station",   "ticket",  "village", "window",     "farmer", "guitar", "helmet",  "jacket"};
const std::vector<std::string> kSeedVerbs = {
    "run",   "answer", "rise",  "sing",  "travel", "dance", "sleep", "shout",
    "listen", "paint",  "climb", "swim",  "drive",  "laugh", "read",  "jump",
    "cook",  "trade",  "march", "study", "whisper", "wander", "bloom", "glow"};
const std::vector<std::string> kSeedAdjectives = {
    "red",    "calm",  "bright", "heavy",  "quiet",  "sharp", "smooth", "tired",
    "brave",  "clever", "gentle", "proud",  "rough",  "shiny", "simple", "solid",
    "sweet",  "warm",  "young",  "narrow", "polite", "rapid", "steep",  "vivid"};

// Deterministic pronounceable pseudo-words; the three parts of speech slice
// disjoint ranges of the stream so the lists stay distinct.
std::vector<std::string> pseudo_word_stream() {
  static const std::vector<std::string> stream = [] {
    const char* onsets[] = {"b",  "br", "ch", "cl", "d",  "dr", "f",  "fl", "g",  "gr",
                            "h",  "j",  "k",  "l",  "m",  "n",  "p",  "pl", "qu", "r",
                            "s",  "sh", "sl", "sn", "sp", "st", "t",  "tr", "v",  "w"};
    const char* nuclei[] = {"a", "e", "i", "o", "u", "ai", "ea", "oo"};
    const char* codas[] = {"b",  "ck", "d",  "g",  "l",  "m",  "n",  "nd",
                           "nt", "p",  "r",  "rk", "s",  "sh", "st", "t"};
    const char* suffixes[] = {"", "a", "o", "e"};
    std::vector<std::string> out;
    for (const char* suffix : suffixes) {
      for (const char* onset : onsets) {
        for (const char* nucleus : nuclei) {
          for (const char* coda : codas) {
            out.push_back(std::string(onset) + nucleus + coda + suffix);
          }
        }
      }
    }
    return out;
  }();
  return stream;
}

std::vector<std::string> build_pos_list(const std::vector<std::string>& seeds,
                                        std::size_t stream_offset, std::size_t size) {
  const std::vector<std::string>& stream = pseudo_word_stream();
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const std::string& w : seeds) {
    if (out.size() == size) break;
    if (seen.insert(w).second) out.push_back(w);
  }
  for (std::size_t i = stream_offset; out.size() < size && i < stream.size(); ++i) {
    if (seen.insert(stream[i]).second) out.push_back(stream[i]);
  }
  if (out.size() != size) throw Error("pseudo-word stream exhausted");
  return out;
}

}  // namespace

Vocabulary Vocabulary::builtin(Diversity size_class) {
  const std::size_t size = size_class == Diversity::Less ? 100 : 5000;
  Vocabulary v;
  v.nouns = build_pos_list(kSeedNouns, 0, size);
  v.verbs = build_pos_list(kSeedVerbs, 5200, size);
  v.adjectives = build_pos_list(kSeedAdjectives, 10400, size);
  return v;
}

Vocabulary Vocabulary::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open vocabulary file: " + path);
  Vocabulary v;
  std::string line;
  std::size_t line_no = 0;
  std::set<std::string> seen[3];
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw Error(path + ":" + std::to_string(line_no) + ": expected word<TAB>pos");
    }
    std::string word = line.substr(0, tab);
    std::string pos = line.substr(tab + 1);
    int idx;
    std::vector<std::string>* target;
    if (pos == "noun") {
      idx = 0;
      target = &v.nouns;
    } else if (pos == "verb") {
      idx = 1;
      target = &v.verbs;
    } else if (pos == "adjective") {
      idx = 2;
      target = &v.adjectives;
    } else {
      throw Error(path + ":" + std::to_string(line_no) + ": unknown part of speech '" + pos + "'");
    }
    if (!seen[idx].insert(word).second) {
      throw Error(path + ":" + std::to_string(line_no) + ": duplicate word '" + word + "'");
    }
    target->push_back(std::move(word));
  }
  return v;
}

// ---------------------------------------------------------------------------
// Sentences

Sentence finalize_sentence(Sentence s) {
  for (char& c : s.text) {
    if (c >= 'a' && c <= 'z') {
      c = static_cast<char>(c - 'a' + 'A');
      break;
    }
    if (c != ' ') break;
  }
  if (!s.text.empty() && s.text.back() != '.') s.text += '.';
  return s;
}

// ---------------------------------------------------------------------------
// Template bank

namespace {

// Extracts {...} placeholder names from a template string.
std::vector<std::string> placeholders(const std::string& tmpl) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < tmpl.size()) {
    if (tmpl[i] == '{') {
      std::size_t close = tmpl.find('}', i);
      if (close == std::string::npos) throw Error("unterminated placeholder in: " + tmpl);
      out.push_back(tmpl.substr(i + 1, close - i - 1));
      i = close + 1;
    } else {
      ++i;
    }
  }
  return out;
}

}  // namespace

TemplateBank TemplateBank::parse(std::string_view text, const std::string& source) {
  TemplateBank bank;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    ++line_no;
    start = end + 1;
    const std::string context = source + ":" + std::to_string(line_no);

    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t b = line.find_first_not_of(" \t");
    if (b == std::string::npos || line[b] == '#') continue;

    std::size_t colon = line.find(':', b);
    if (colon == std::string::npos) throw Error(context + ": missing ':' after shape name");
    std::string shape = line.substr(b, colon - b);
    while (!shape.empty() && (shape.back() == ' ' || shape.back() == '\t')) shape.pop_back();
    if (shape.empty()) throw Error(context + ": empty shape name");
    if (bank.shapes_.contains(shape)) throw Error(context + ": duplicate shape '" + shape + "'");

    std::vector<std::string> alts;
    std::size_t i = colon + 1;
    for (;;) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      if (i >= line.size() || line[i] != '"') throw Error(context + ": expected quoted template");
      ++i;
      std::string tmpl;
      while (i < line.size() && line[i] != '"') {
        if (line[i] == '\\' && i + 1 < line.size()) ++i;
        tmpl += line[i++];
      }
      if (i >= line.size()) throw Error(context + ": unterminated template string");
      ++i;  // closing quote
      alts.push_back(std::move(tmpl));
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      if (i >= line.size()) break;
      if (line[i] != '|') throw Error(context + ": expected '|' between templates");
      ++i;
    }
    bank.shapes_.emplace(std::move(shape), std::move(alts));
  }
  bank.validate(source);
  return bank;
}

void TemplateBank::validate(const std::string& source) const {
  // Placeholder sanity plus the {ref:...} graph: references must exist and
  // must not form a cycle.
  std::map<std::string, std::vector<std::string>> refs;
  for (const auto& [shape, alts] : shapes_) {
    for (const std::string& tmpl : alts) {
      for (const std::string& ph : placeholders(tmpl)) {
        if (ph == "left" || ph == "right" || ph == "body" || ph == "atom") continue;
        if (ph.rfind("ref:", 0) == 0) {
          std::string target = ph.substr(4);
          if (!shapes_.contains(target)) {
            throw Error(source + ": shape '" + shape + "' references missing shape '" + target +
                        "'");
          }
          refs[shape].push_back(std::move(target));
          continue;
        }
        throw Error(source + ": unknown placeholder '{" + ph + "}' in shape '" + shape + "'");
      }
    }
  }
  // Depth-first cycle check over the reference edges.
  std::set<std::string> done;
  std::set<std::string> path;
  std::function<void(const std::string&)> visit = [&](const std::string& shape) {
    if (done.contains(shape)) return;
    if (!path.insert(shape).second) {
      throw Error(source + ": cyclic template reference through shape '" + shape + "'");
    }
    auto it = refs.find(shape);
    if (it != refs.end()) {
      for (const std::string& next : it->second) visit(next);
    }
    path.erase(shape);
    done.insert(shape);
  };
  for (const auto& [shape, _] : refs) visit(shape);
}

TemplateBank TemplateBank::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open template file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path);
}

const std::vector<std::string>& TemplateBank::alternatives(const std::string& shape) const {
  auto it = shapes_.find(shape);
  if (it == shapes_.end()) throw Error("no template for shape '" + shape + "'");
  return it->second;
}

namespace {

constexpr const char* kLessTemplates = R"(
atom: "{atom}"
predapp: "{atom}"
not: "it is not the fact that {body}"
and: "{left}, and {right}"
or: "{left}, or {right}"
implies: "if {left}, then {right}"
forall: "for every individual, {body}"
)";

constexpr const char* kMoreTemplates = R"(
atom: "{atom}"
predapp: "{atom}"
not: "it is not the fact that {body}" | "it is wrong that {body}" | "the claim that {body} does not hold"
and: "{left}, and {right}" | "both of these hold: {left}, and {right}" | "{left}; {right} as well"
or: "{left}, or {right}" | "{left} or else {right}" | "at least one of these holds: {left}, or {right}"
implies: "if {left}, then {right}" | "{left} leads to {right}" | "when {left}, {right}" | "{right}, provided that {left}"
forall: "for every individual, {body}" | "whatever it may be, {body}" | "no matter the individual, {body}"
)";

}  // namespace

const TemplateBank& TemplateBank::builtin(Diversity diversity) {
  static const TemplateBank less = parse(kLessTemplates, "<builtin:less>");
  static const TemplateBank more = parse(kMoreTemplates, "<builtin:more>");
  return diversity == Diversity::Less ? less : more;
}

std::string shape_of(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      return "atom";
    case FormulaKind::PredApp:
      return "predapp";
    case FormulaKind::Not:
      return "not";
    case FormulaKind::And:
      return "and";
    case FormulaKind::Or:
      return "or";
    case FormulaKind::Implies:
      return "implies";
    case FormulaKind::Forall:
      return "forall";
  }
  throw Error("corrupt formula");
}

// ---------------------------------------------------------------------------
// Statements

std::vector<Component> collect_components(const Formula& f) {
  std::vector<Component> out;
  auto add = [&](Component c) {
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(std::move(c));
  };
  for (const std::string& a : collect_atoms(f)) add({ComponentKind::Atom, a});
  for (const std::string& p : collect_predicates(f)) add({ComponentKind::Predicate, p});
  for (const std::string& c : collect_constants(f)) add({ComponentKind::Constant, c});
  return out;
}

std::string PredicateStatement::render(const std::string& subject) const {
  switch (form) {
    case Form::Verb: {
      // naive third person singular
      std::string inflected = word;
      if (word.size() >= 2 && (word.ends_with("sh") || word.ends_with("ch"))) {
        inflected += "es";
      } else if (word.ends_with("s") || word.ends_with("x")) {
        inflected += "es";
      } else {
        inflected += "s";
      }
      return subject + " " + inflected;
    }
    case Form::IsAdjective:
      return subject + " is " + word;
    case Form::IsNoun:
      return subject + " is a " + word;
  }
  return subject;
}

WordAnnotation PredicateStatement::annotation() const {
  switch (form) {
    case Form::Verb: {
      std::string inflected = word;
      if (word.size() >= 2 && (word.ends_with("sh") || word.ends_with("ch"))) {
        inflected += "es";
      } else if (word.ends_with("s") || word.ends_with("x")) {
        inflected += "es";
      } else {
        inflected += "s";
      }
      return {inflected, Pos::Verb};
    }
    case Form::IsAdjective:
      return {word, Pos::Adjective};
    case Form::IsNoun:
      return {word, Pos::Noun};
  }
  return {word, Pos::Noun};
}

void StatementMap::assign(const std::vector<Component>& components, const Vocabulary& vocab,
                          Rng& rng) {
  auto unique_text = [&](const std::string& text) {
    return std::find(used_texts_.begin(), used_texts_.end(), text) == used_texts_.end();
  };
  auto pick_word = [&](Pos pos) -> const std::string& {
    const std::vector<std::string>& list = vocab.list(pos);
    if (list.empty()) throw VocabularyExhausted("empty " + pos_name(pos) + " list");
    return list[rng.index(list.size())];
  };

  for (const Component& c : components) {
    const int kMaxTries = 200;
    switch (c.kind) {
      case ComponentKind::Atom: {
        if (atoms_.contains(c.name)) break;
        bool placed = false;
        for (int t = 0; t < kMaxTries && !placed; ++t) {
          AtomStatement st;
          switch (rng.index(3)) {
            case 0: {
              const std::string& noun = pick_word(Pos::Noun);
              const std::string& adj = pick_word(Pos::Adjective);
              st.text = "the " + noun + " is " + adj;
              st.annotations = {{noun, Pos::Noun}, {adj, Pos::Adjective}};
              break;
            }
            case 1: {
              const std::string& noun = pick_word(Pos::Noun);
              PredicateStatement verb{PredicateStatement::Form::Verb, pick_word(Pos::Verb)};
              st.text = verb.render("the " + noun);
              st.annotations = {{noun, Pos::Noun}, verb.annotation()};
              break;
            }
            default: {
              const std::string& noun = pick_word(Pos::Noun);
              st.text = "a " + noun + " occurs";
              st.annotations = {{noun, Pos::Noun}};
              break;
            }
          }
          if (unique_text(st.text)) {
            used_texts_.push_back(st.text);
            atoms_.emplace(c.name, std::move(st));
            placed = true;
          }
        }
        if (!placed) throw VocabularyExhausted("cannot find a fresh statement for atom " + c.name);
        break;
      }
      case ComponentKind::Predicate: {
        if (predicates_.contains(c.name)) break;
        bool placed = false;
        for (int t = 0; t < kMaxTries && !placed; ++t) {
          PredicateStatement st;
          switch (rng.index(3)) {
            case 0:
              st = {PredicateStatement::Form::Verb, pick_word(Pos::Verb)};
              break;
            case 1:
              st = {PredicateStatement::Form::IsAdjective, pick_word(Pos::Adjective)};
              break;
            default:
              st = {PredicateStatement::Form::IsNoun, pick_word(Pos::Noun)};
              break;
          }
          const std::string probe = st.render("it");
          if (unique_text(probe)) {
            used_texts_.push_back(probe);
            predicates_.emplace(c.name, std::move(st));
            placed = true;
          }
        }
        if (!placed) {
          throw VocabularyExhausted("cannot find a fresh phrase for predicate " + c.name);
        }
        break;
      }
      case ComponentKind::Constant: {
        if (entities_.contains(c.name)) break;
        bool placed = false;
        for (int t = 0; t < kMaxTries && !placed; ++t) {
          const std::string& noun = pick_word(Pos::Noun);
          EntityStatement st{"the " + noun, {{noun, Pos::Noun}}};
          if (unique_text(st.text)) {
            used_texts_.push_back(st.text);
            entities_.emplace(c.name, std::move(st));
            placed = true;
          }
        }
        if (!placed) {
          throw VocabularyExhausted("cannot find a fresh phrase for constant " + c.name);
        }
        break;
      }
    }
  }
}

const AtomStatement& StatementMap::atom(const std::string& name) const {
  auto it = atoms_.find(name);
  if (it == atoms_.end()) throw Error("no statement assigned to atom " + name);
  return it->second;
}

const PredicateStatement& StatementMap::predicate(const std::string& name) const {
  auto it = predicates_.find(name);
  if (it == predicates_.end()) throw Error("no statement assigned to predicate " + name);
  return it->second;
}

const EntityStatement& StatementMap::entity(const std::string& name) const {
  auto it = entities_.find(name);
  if (it == entities_.end()) throw Error("no statement assigned to constant " + name);
  return it->second;
}

StatementMap assign_statements(const std::vector<Component>& components, const Vocabulary& vocab,
                               Rng& rng) {
  StatementMap map;
  map.assign(components, vocab, rng);
  return map;
}

// ---------------------------------------------------------------------------
// Rendering

Sentence Renderer::atomic_statement(const Formula& f) const {
  if (f.kind() == FormulaKind::Atom) {
    const AtomStatement& st = statements_->atom(f.name());
    return {st.text, st.annotations};
  }
  const PredicateStatement& pred = statements_->predicate(f.name());
  Sentence out;
  if (f.term().kind == TermKind::Variable) {
    out.text = pred.render("it");
    out.annotations = {pred.annotation()};
  } else {
    const EntityStatement& subject = statements_->entity(f.term().name);
    out.text = pred.render(subject.text);
    out.annotations = subject.annotations;
    out.annotations.push_back(pred.annotation());
  }
  return out;
}

Sentence Renderer::expand_with_shape(const Formula& f, const std::string& shape, Rng& rng,
                                     int ref_depth) {
  if (ref_depth > 32) throw Error("template reference chain too deep at shape '" + shape + "'");
  if (!bank_->has(shape)) {
    if (shape == "atom" || shape == "predapp") return atomic_statement(f);
    throw Error("no template for shape '" + shape + "'");
  }
  const std::vector<std::string>& alts = bank_->alternatives(shape);
  const std::string& tmpl = alts[rng.index(alts.size())];

  Sentence out;
  std::size_t i = 0;
  auto splice = [&](const Sentence& part) {
    out.text += part.text;
    out.annotations.insert(out.annotations.end(), part.annotations.begin(),
                           part.annotations.end());
  };
  while (i < tmpl.size()) {
    if (tmpl[i] != '{') {
      out.text += tmpl[i++];
      continue;
    }
    std::size_t close = tmpl.find('}', i);
    std::string ph = tmpl.substr(i + 1, close - i - 1);
    i = close + 1;
    if (ph == "left") {
      splice(expand(f.left(), rng));
    } else if (ph == "right") {
      splice(expand(f.right(), rng));
    } else if (ph == "body") {
      splice(expand(f.child(), rng));
    } else if (ph == "atom") {
      splice(atomic_statement(f));
    } else if (ph.rfind("ref:", 0) == 0) {
      splice(expand_with_shape(f, ph.substr(4), rng, ref_depth + 1));
    } else {
      throw Error("unknown placeholder '{" + ph + "}'");
    }
  }
  return out;
}

Sentence Renderer::expand(const Formula& f, Rng& rng) {
  auto it = cache_.find(f);
  if (it != cache_.end()) return it->second;
  Sentence s = expand_with_shape(f, shape_of(f), rng, 0);
  cache_.emplace(f, s);
  return s;
}

Sentence Renderer::render(const Formula& f, Rng& rng) { return expand(f, rng); }

Sentence render(const Formula& f, const TemplateBank& bank, const StatementMap& statements,
                Rng& rng) {
  Renderer r(bank, statements);
  return r.render(f, rng);
}

}  // namespace fld
