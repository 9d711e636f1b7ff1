#include "fld/dataset.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <thread>

#include "json.hpp"

namespace fld {

using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Answers

std::string answer_name(Answer a) {
  switch (a) {
    case Answer::Proved:
      return "proved";
    case Answer::Disproved:
      return "disproved";
    case Answer::Unknown:
      return "unknown";
  }
  return "?";
}

std::string answer_token(Answer a) {
  switch (a) {
    case Answer::Proved:
      return "__PROVED__";
    case Answer::Disproved:
      return "__DISPROVED__";
    case Answer::Unknown:
      return "__UNKNOWN__";
  }
  return "?";
}

std::optional<Answer> answer_from_name(const std::string& name) {
  if (name == "proved") return Answer::Proved;
  if (name == "disproved") return Answer::Disproved;
  if (name == "unknown") return Answer::Unknown;
  return std::nullopt;
}

std::optional<Answer> answer_from_token(const std::string& token) {
  if (token == "__PROVED__") return Answer::Proved;
  if (token == "__DISPROVED__") return Answer::Disproved;
  if (token == "__UNKNOWN__") return Answer::Unknown;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Serialization

std::string serialize_proof(const DeductionInstance& instance) {
  std::string out;
  for (const ProofStepRecord& step : instance.proof) {
    for (std::size_t i = 0; i < step.premises.size(); ++i) {
      if (i) out += " & ";
      out += step.premises[i];
    }
    out += " -> ";
    if (step.conclusion_id == "hypothesis") {
      out += "hypothesis";
    } else {
      out += step.conclusion_id + ": " + step.sentence;
    }
    out += "; ";
  }
  out += answer_token(instance.answer);
  return out;
}

std::string to_jsonl(const DeductionInstance& instance) {
  ordered_json j;
  j["facts"] = ordered_json::array();
  for (const Fact& f : instance.facts) j["facts"].push_back(f.sentence);
  j["hypothesis"] = instance.hypothesis_sentence;
  j["proof"] = serialize_proof(instance);
  j["answer"] = answer_name(instance.answer);
  j["depth"] = instance.depth;
  j["num_distractors"] = instance.num_distractors;
  j["instance_seed"] = instance.instance_seed;
  j["facts_formula"] = ordered_json::array();
  for (const Fact& f : instance.facts) {
    if (f.formula) {
      j["facts_formula"].push_back(f.formula->text());
    } else {
      j["facts_formula"].push_back(nullptr);
    }
  }
  j["hypothesis_formula"] = instance.hypothesis.text();
  j["proof_formulas"] = ordered_json::array();
  for (const ProofStepRecord& step : instance.proof) {
    j["proof_formulas"].push_back(step.formula.text());
  }
  j["max_compound_atoms"] = instance.max_compound_atoms;
  return j.dump();
}

CorpusRecord record_from_jsonl(const std::string& line) {
  ordered_json j;
  try {
    j = ordered_json::parse(line);
  } catch (const std::exception& e) {
    throw Error(std::string("bad corpus line: ") + e.what());
  }
  try {
    CorpusRecord r;
    for (const auto& f : j.at("facts")) r.facts.push_back(f.get<std::string>());
    r.hypothesis = j.at("hypothesis").get<std::string>();
    r.proof = j.at("proof").get<std::string>();
    r.answer = j.at("answer").get<std::string>();
    r.depth = j.at("depth").get<int>();
    r.num_distractors = j.at("num_distractors").get<int>();
    r.instance_seed = j.at("instance_seed").get<std::uint64_t>();
    if (j.contains("facts_formula")) {
      for (const auto& f : j.at("facts_formula")) {
        if (f.is_null()) {
          r.facts_formula.push_back(std::nullopt);
        } else {
          r.facts_formula.push_back(f.get<std::string>());
        }
      }
    }
    if (j.contains("hypothesis_formula")) {
      r.hypothesis_formula = j.at("hypothesis_formula").get<std::string>();
    }
    if (j.contains("proof_formulas")) {
      for (const auto& f : j.at("proof_formulas")) r.proof_formulas.push_back(f.get<std::string>());
    }
    if (j.contains("max_compound_atoms")) {
      r.max_compound_atoms = j.at("max_compound_atoms").get<int>();
    }
    return r;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(std::string("bad corpus record: ") + e.what());
  }
}

std::vector<CorpusRecord> read_corpus(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open corpus file: " + path);
  std::vector<CorpusRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    try {
      out.push_back(record_from_jsonl(line));
    } catch (const Error& e) {
      throw Error(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Conversion

namespace {

struct PendingFact {
  Fact fact;
  int node_id;  // -1 for distractors
};

std::vector<int> internal_topo_order(const ProofTree& tree) {
  std::vector<int> order;
  std::set<int> visited;
  std::function<void(int)> visit = [&](int id) {
    if (tree.is_leaf(id) || visited.contains(id)) return;
    visited.insert(id);
    for (int p : tree.nodes[id].derivation->premises) visit(p);
    order.push_back(id);
  };
  visit(tree.root);
  return order;
}

}  // namespace

DeductionInstance convert(const ProofTree& tree, const std::vector<DistractorFact>& distractors,
                          Renderer& renderer, Answer label, Rng& rng,
                          const std::vector<ArgumentScheme>& schemes, int saturation_rounds) {
  const std::vector<int> leaves = tree.leaf_ids();
  const Formula root = tree.nodes[tree.root].formula;
  const Formula hypothesis = label == Answer::Disproved ? negate(root) : root;
  const std::string hypothesis_sentence =
      finalize_sentence(renderer.render(hypothesis, rng)).text;

  std::string failure = "certification failed";
  const int attempts = label == Answer::Unknown ? 25 : 1;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    std::vector<int> kept = leaves;
    if (label == Answer::Unknown && !leaves.empty()) {
      const int max_drop = static_cast<int>((leaves.size() + 1) / 2);
      const int drop = static_cast<int>(rng.range(1, max_drop));
      std::vector<int> order = leaves;
      rng.shuffle(order);
      std::set<int> dropped(order.begin(), order.begin() + drop);
      kept.clear();
      for (int id : leaves) {
        if (!dropped.contains(id)) kept.push_back(id);
      }
    }

    std::vector<PendingFact> pending;
    for (int id : kept) {
      const Formula& f = tree.nodes[id].formula;
      pending.push_back({{finalize_sentence(renderer.render(f, rng)).text, f}, id});
    }
    for (const DistractorFact& d : distractors) {
      pending.push_back({{d.sentence.text, d.formula}, -1});
    }
    rng.shuffle(pending);

    // Distinct surface sentences; a collision means the instance is
    // ambiguous as text, so it is rebuilt.
    {
      std::set<std::string> seen{hypothesis_sentence};
      bool clash = false;
      for (const PendingFact& p : pending) clash |= !seen.insert(p.fact.sentence).second;
      if (clash) {
        failure = "duplicate sentence in fact list";
        continue;
      }
    }

    std::vector<Formula> fact_formulas;
    for (const PendingFact& p : pending) {
      if (p.fact.formula) fact_formulas.push_back(*p.fact.formula);
    }
    SaturationResult sat = saturate(fact_formulas, schemes, 10000, saturation_rounds,
                                    {hypothesis, negate(hypothesis)});
    if (sat.contradiction) {
      failure = "fact set is contradictory";
      continue;
    }
    if (!sat.complete) {
      failure = "saturation budget exhausted";
      continue;
    }
    bool certified = true;
    switch (label) {
      case Answer::Proved:
        certified = !sat.contains(negate(hypothesis));
        break;
      case Answer::Disproved:
        certified = !sat.contains(hypothesis);
        break;
      case Answer::Unknown:
        certified = !sat.contains(hypothesis) && !sat.contains(negate(hypothesis));
        break;
    }
    if (!certified) {
      failure = "label certification failed";
      continue;
    }

    DeductionInstance instance;
    instance.answer = label;
    instance.depth = tree.depth();
    instance.num_distractors = static_cast<int>(distractors.size());
    instance.hypothesis = hypothesis;
    instance.hypothesis_sentence = hypothesis_sentence;

    std::map<int, std::string> id_of_node;
    for (std::size_t i = 0; i < pending.size(); ++i) {
      instance.facts.push_back(pending[i].fact);
      if (pending[i].node_id >= 0) {
        id_of_node[pending[i].node_id] = "fact" + std::to_string(i + 1);
      }
    }

    if (label != Answer::Unknown && tree.depth() > 0) {
      int next_int = 1;
      for (int id : internal_topo_order(tree)) {
        ProofStepRecord step;
        for (int p : tree.nodes[id].derivation->premises) {
          step.premises.push_back(id_of_node.at(p));
        }
        step.formula = tree.nodes[id].formula;
        if (id == tree.root && label == Answer::Proved) {
          step.conclusion_id = "hypothesis";
        } else {
          step.conclusion_id = "int" + std::to_string(next_int++);
          step.sentence = finalize_sentence(renderer.render(step.formula, rng)).text;
          id_of_node[id] = step.conclusion_id;
        }
        instance.proof.push_back(std::move(step));
      }
      if (label == Answer::Disproved) {
        ProofStepRecord refute;
        refute.premises = {id_of_node.at(tree.root)};
        refute.conclusion_id = "hypothesis";
        refute.formula = hypothesis;
        instance.proof.push_back(std::move(refute));
      }
    }
    return instance;
  }
  throw CertificationError(failure);
}

// ---------------------------------------------------------------------------
// Instances

DeductionInstance make_instance(const InstanceParams& params) {
  Rng rng(params.instance_seed);
  std::string failure = "no attempt made";
  for (int attempt = 0; attempt < 12; ++attempt) {
    try {
      NameAllocator names;
      SampleStats stats;
      GenParams gen;
      gen.schemes = *params.schemes;
      gen.depth = params.depth;
      gen.extra_branches = static_cast<int>(rng.range(0, 2));
      gen.complexity = params.complexity;
      gen.stats = &stats;
      ProofTree tree = generate_tree(gen, rng, names);

      std::vector<Component> components;
      for (const ProofNode& node : tree.nodes) {
        for (Component& c : collect_components(node.formula)) {
          if (std::find(components.begin(), components.end(), c) == components.end()) {
            components.push_back(std::move(c));
          }
        }
      }
      StatementMap statements;
      statements.assign(components, *params.vocab, rng);
      Renderer renderer(*params.bank, statements);

      const std::vector<Formula> gold_formulas = tree.leaf_formulas();
      std::vector<Sentence> gold_sentences;
      for (const Formula& f : gold_formulas) {
        gold_sentences.push_back(finalize_sentence(renderer.render(f, rng)));
      }
      MixContext ctx{gold_formulas, gold_sentences, *params.schemes, params.complexity,
                     *params.vocab,  names,          statements,      renderer,
                     &stats};
      std::vector<DistractorFact> mix = mix_distractors(params.distractors, ctx, rng);

      DeductionInstance instance = convert(tree, mix, renderer, params.label, rng,
                                           *params.schemes, 2 * kMaxTreeDepth);
      instance.instance_seed = params.instance_seed;
      instance.max_compound_atoms = stats.max_atoms;
      return instance;
    } catch (const GenerationError& e) {
      failure = e.what();
    } catch (const CertificationError& e) {
      failure = e.what();
    } catch (const VocabularyExhausted& e) {
      failure = e.what();
    }
  }
  throw GenerationError("instance generation failed after 12 attempts: " + failure);
}

// ---------------------------------------------------------------------------
// Corpus

std::vector<ArgumentScheme> resolve_argset(const std::string& argset) {
  if (argset == "axioms") return builtin_axioms();
  if (argset == "implication") return builtin_implication();
  return load_schemes(argset);
}

namespace {

// Largest-remainder apportionment; category shares land within one item of
// the exact target, which keeps corpus histograms inside the stated
// tolerances at any size.
std::vector<int> quota_counts(const std::vector<double>& weights, int total) {
  double sum = 0.0;
  for (double w : weights) sum += w;
  if (sum <= 0.0) throw Error("weights must not all be zero");
  std::vector<int> counts(weights.size(), 0);
  std::vector<std::pair<double, std::size_t>> remainders;
  int assigned = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double exact = total * weights[i] / sum;
    counts[i] = static_cast<int>(exact);
    assigned += counts[i];
    remainders.push_back({exact - counts[i], i});
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (int i = 0; assigned < total; ++i, ++assigned) {
    counts[remainders[static_cast<std::size_t>(i) % remainders.size()].second]++;
  }
  return counts;
}

std::string split_file_name(const std::string& base, const std::string& split) {
  const std::size_t dot = base.rfind('.');
  const std::size_t slash = base.rfind('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return base + "." + split;
  }
  return base.substr(0, dot) + "." + split + base.substr(dot);
}

void write_lines(const std::string& path, const std::vector<std::string>& lines,
                 std::size_t begin, std::size_t end) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open output file: " + path);
  for (std::size_t i = begin; i < end; ++i) {
    out << lines[i] << '\n';
  }
  if (!out) throw Error("failed writing " + path);
}

}  // namespace

std::string CorpusStats::to_json() const {
  ordered_json j;
  j["label_histogram"] = ordered_json::object();
  for (const auto& [label, n] : label_histogram) j["label_histogram"][label] = n;
  j["depth_histogram"] = ordered_json::object();
  for (const auto& [depth, n] : depth_histogram) {
    j["depth_histogram"][std::to_string(depth)] = n;
  }
  j["mean_facts"] = mean_facts;
  j["mean_distractors"] = mean_distractors;
  return j.dump(2);
}

CorpusStats generate_corpus(const CorpusConfig& cfg) {
  if (cfg.count < 1) throw Error("instance count must be >= 1");
  if (cfg.depth_lo < 0 || cfg.depth_lo > cfg.depth_hi || cfg.depth_hi > kMaxTreeDepth) {
    throw Error("depth range must satisfy 0 <= lo <= hi <= " + std::to_string(kMaxTreeDepth));
  }
  if (cfg.max_distractors < 0 || cfg.max_distractors > 20) {
    throw Error("max distractors must be in 0..20");
  }
  if (cfg.out_path.empty()) throw Error("output path is required");
  if (!cfg.splits.empty()) {
    int sum = 0;
    for (const auto& [name, n] : cfg.splits) {
      if (name.empty() || n < 0) throw Error("bad split specification");
      sum += n;
    }
    if (sum != cfg.count) throw Error("split sizes must sum to the instance count");
  }

  const std::vector<ArgumentScheme> schemes = resolve_argset(cfg.argset);
  const TemplateBank bank = cfg.template_path.empty() ? TemplateBank::builtin(cfg.diversity)
                                                      : TemplateBank::load(cfg.template_path);
  const Vocabulary vocab = cfg.vocab_path.empty() ? Vocabulary::builtin(cfg.diversity)
                                                  : Vocabulary::load(cfg.vocab_path);

  // Label and depth sequences are laid out by quota and then shuffled, so
  // the empirical distributions track the targets at any corpus size.
  Rng master(cfg.seed);
  std::vector<Answer> labels;
  {
    std::vector<double> w(cfg.label_weights.begin(), cfg.label_weights.end());
    std::vector<int> counts = quota_counts(w, cfg.count);
    for (int i = 0; i < counts[0]; ++i) labels.push_back(Answer::Proved);
    for (int i = 0; i < counts[1]; ++i) labels.push_back(Answer::Disproved);
    for (int i = 0; i < counts[2]; ++i) labels.push_back(Answer::Unknown);
    master.shuffle(labels);
  }
  std::vector<int> depths;
  {
    std::vector<double> w;
    for (int d = cfg.depth_lo; d <= cfg.depth_hi; ++d) {
      w.push_back(cfg.depth_dist == DepthDistribution::Uniform ? 1.0 : std::pow(2.0, -d));
    }
    std::vector<int> counts = quota_counts(w, cfg.count);
    for (std::size_t i = 0; i < counts.size(); ++i) {
      for (int k = 0; k < counts[i]; ++k) depths.push_back(cfg.depth_lo + static_cast<int>(i));
    }
    master.shuffle(depths);
  }

  struct Meta {
    Answer label;
    int depth = 0;
    int facts = 0;
    int distractors = 0;
  };
  std::vector<std::string> lines(static_cast<std::size_t>(cfg.count));
  std::vector<Meta> metas(static_cast<std::size_t>(cfg.count));

  auto build = [&](int i) {
    InstanceParams params;
    params.schemes = &schemes;
    params.bank = &bank;
    params.vocab = &vocab;
    params.label = labels[static_cast<std::size_t>(i)];
    params.depth = depths[static_cast<std::size_t>(i)];
    params.complexity = cfg.complexity;
    params.distractors.max_count = cfg.max_distractors;
    params.instance_seed = Rng::derive(cfg.seed, static_cast<std::uint64_t>(i));
    DeductionInstance instance = make_instance(params);
    lines[static_cast<std::size_t>(i)] = to_jsonl(instance);
    metas[static_cast<std::size_t>(i)] = {instance.answer, instance.depth,
                                          static_cast<int>(instance.facts.size()),
                                          instance.num_distractors};
  };

  const int jobs = std::max(1, std::min(cfg.jobs, static_cast<int>(
                                                      std::thread::hardware_concurrency() > 0
                                                          ? std::thread::hardware_concurrency()
                                                          : 1)));
  if (jobs == 1) {
    for (int i = 0; i < cfg.count; ++i) {
      try {
        build(i);
      } catch (const Error& e) {
        throw Error("instance " + std::to_string(i) + ": " + e.what());
      }
    }
  } else {
    std::atomic<int> next{0};
    std::atomic<int> failed_index{-1};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(jobs));
    std::vector<std::thread> workers;
    for (int t = 0; t < jobs; ++t) {
      workers.emplace_back([&, t] {
        for (;;) {
          const int i = next.fetch_add(1);
          if (i >= cfg.count || failed_index.load() >= 0) return;
          try {
            build(i);
          } catch (...) {
            errors[static_cast<std::size_t>(t)] = std::current_exception();
            failed_index.store(i);
            return;
          }
        }
      });
    }
    for (std::thread& w : workers) w.join();
    if (failed_index.load() >= 0) {
      for (const std::exception_ptr& e : errors) {
        if (!e) continue;
        try {
          std::rethrow_exception(e);
        } catch (const Error& err) {
          throw Error("instance " + std::to_string(failed_index.load()) + ": " + err.what());
        }
      }
    }
  }

  if (cfg.splits.empty()) {
    write_lines(cfg.out_path, lines, 0, lines.size());
  } else {
    std::size_t begin = 0;
    for (const auto& [name, n] : cfg.splits) {
      write_lines(split_file_name(cfg.out_path, name), lines, begin,
                  begin + static_cast<std::size_t>(n));
      begin += static_cast<std::size_t>(n);
    }
  }

  CorpusStats stats;
  double fact_sum = 0.0;
  double distractor_sum = 0.0;
  for (const Meta& m : metas) {
    stats.label_histogram[answer_name(m.label)]++;
    stats.depth_histogram[m.depth]++;
    fact_sum += m.facts;
    distractor_sum += m.distractors;
  }
  stats.mean_facts = fact_sum / cfg.count;
  stats.mean_distractors = distractor_sum / cfg.count;

  std::ofstream side(cfg.out_path + ".stats.json", std::ios::binary);
  if (!side) throw Error("cannot open stats sidecar for " + cfg.out_path);
  side << stats.to_json() << '\n';
  return stats;
}

}  // namespace fld
