// Copyright 2026 The slg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "slg/conceptualize.hpp"
#include "slg/events.hpp"
#include "slg/generator.hpp"
#include "slg/grammar.hpp"
#include "slg/harness.hpp"
#include "slg/qsr.hpp"
#include "slg/semantics.hpp"

namespace {

using namespace slg;

const ScenePair& sample_pair() {
  static const ScenePair pair = [] {
    GenerationConfig c;
    c.family = TrajectoryFamily::kCross;
    c.regions_on_path = 2;
    return generate_scene_pair(c, 7);
  }();
  return pair;
}

void BM_ExtractFluents(benchmark::State& state) {
  const Scene& s = sample_pair().a;
  for (auto _ : state) benchmark::DoNotOptimize(extract_fluents(s));
}
BENCHMARK(BM_ExtractFluents);

void BM_DetectEvents(benchmark::State& state) {
  const auto fluents = extract_fluents(sample_pair().a);
  for (auto _ : state) benchmark::DoNotOptimize(detect_events(fluents));
}
BENCHMARK(BM_DetectEvents);

void BM_PossibleExtensions(benchmark::State& state) {
  const auto fluents = extract_fluents(sample_pair().a);
  const auto psi = detect_events(fluents);
  const auto s = final_state(fluents);
  const int depth = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(possible_extensions(psi, s, depth));
}
BENCHMARK(BM_PossibleExtensions)->DenseRange(1, 3);

void BM_Evaluate(benchmark::State& state) {
  const EvaluationContext ctx = speaker_context(sample_pair().a);
  const SemanticProgram p = Grammar::default_grammar().parse(tokenize("the block moves across the red region"));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(p, ctx));
}
BENCHMARK(BM_Evaluate);

void BM_Parse(benchmark::State& state) {
  const Utterance u = tokenize("the green block moves from left of you to right of me");
  for (auto _ : state) benchmark::DoNotOptimize(Grammar::default_grammar().parse(u));
}
BENCHMARK(BM_Parse);

void BM_Produce(benchmark::State& state) {
  const SemanticProgram m = Grammar::default_grammar().parse(tokenize("the green block moves from left of you to right of me"));
  for (auto _ : state) benchmark::DoNotOptimize(Grammar::default_grammar().produce(m));
}
BENCHMARK(BM_Produce);

void BM_Interpret(benchmark::State& state) {
  const EvaluationContext ctx = speaker_context(sample_pair().a);
  const SemanticProgram p = Grammar::default_grammar().parse(tokenize("the red moves block region the into"));
  for (auto _ : state) benchmark::DoNotOptimize(interpret(p, ctx));
}
BENCHMARK(BM_Interpret)->Unit(benchmark::kMillisecond);

void BM_Interaction(benchmark::State& state) {
  InteractionConfig c;
  c.reasoning = Reasoning::kWith;
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_interaction(sample_pair(), true, c, seed++));
}
BENCHMARK(BM_Interaction)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
