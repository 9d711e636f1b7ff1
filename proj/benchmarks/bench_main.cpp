#include <benchmark/benchmark.h>

#include "fld/dataset.hpp"
#include "fld/proofgen.hpp"
#include "fld/scorer.hpp"
#include "fld/translator.hpp"

using namespace fld;

namespace {

void BM_ParsePrint(benchmark::State& state) {
  const std::string text = "((!A & B) -> all x. (F(x) -> (G(x) | !H(x))))";
  for (auto _ : state) {
    Formula f = parse_formula(text);
    benchmark::DoNotOptimize(f.text());
  }
}
BENCHMARK(BM_ParsePrint);

void BM_CheckValidity(benchmark::State& state) {
  const Argument syllogism{{parse_formula("((F -> G) & (G -> H))")}, parse_formula("(F -> H)")};
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_validity(syllogism));
  }
}
BENCHMARK(BM_CheckValidity);

void BM_GenerateTree(benchmark::State& state) {
  GenParams params;
  params.schemes = builtin_axioms();
  params.depth = static_cast<int>(state.range(0));
  params.extra_branches = 2;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    params.rng_seed = seed++;
    benchmark::DoNotOptimize(generate_tree(params));
  }
}
BENCHMARK(BM_GenerateTree)->Arg(2)->Arg(5)->Arg(8);

void BM_DeriveSyllogism(benchmark::State& state) {
  const auto target = parse_schemes("syllogism: ((%F -> %G) & (%G -> %H)) |- (%F -> %H)");
  for (auto _ : state) {
    benchmark::DoNotOptimize(derive_argument(target[0], builtin_axioms(), kMaxTreeDepth));
  }
}
BENCHMARK(BM_DeriveSyllogism);

void BM_Saturate(benchmark::State& state) {
  GenParams params;
  params.schemes = builtin_axioms();
  params.depth = 5;
  params.rng_seed = 7;
  const ProofTree tree = generate_tree(params);
  const std::vector<Formula> facts = tree.leaf_formulas();
  const Formula root = tree.nodes[static_cast<std::size_t>(tree.root)].formula;
  for (auto _ : state) {
    benchmark::DoNotOptimize(saturate(facts, builtin_axioms(), 10000, 16, {root, negate(root)}));
  }
}
BENCHMARK(BM_Saturate);

void BM_MakeInstance(benchmark::State& state) {
  const auto& schemes = builtin_axioms();
  const TemplateBank& bank = TemplateBank::builtin(Diversity::More);
  const Vocabulary vocab = Vocabulary::builtin(Diversity::More);
  InstanceParams params;
  params.schemes = &schemes;
  params.bank = &bank;
  params.vocab = &vocab;
  params.label = Answer::Proved;
  params.depth = static_cast<int>(state.range(0));
  params.distractors.max_count = 20;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    params.instance_seed = seed++;
    benchmark::DoNotOptimize(make_instance(params));
  }
}
BENCHMARK(BM_MakeInstance)->Arg(2)->Arg(8);

void BM_ParseProof(benchmark::State& state) {
  const std::string text =
      "fact1 & fact3 -> int1: the gentle river glows.; int1 & fact2 -> int2: a quiet sun "
      "rises.; int2 -> hypothesis; __PROVED__";
  for (auto _ : state) {
    benchmark::DoNotOptimize(parse_proof(text));
  }
}
BENCHMARK(BM_ParseProof);

}  // namespace

BENCHMARK_MAIN();
