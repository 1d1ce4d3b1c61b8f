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

#include <algorithm>
#include <sstream>

#include "doctest.h"
#include "slg/error.hpp"
#include "slg/harness.hpp"
#include "slg/rng.hpp"
#include "support.hpp"

using namespace slg;
using namespace slg::testing;

namespace {

// One red region that the block crosses from left to right.
Scene crossing_world() {
  return build_scene({{"reg-36", ColorCategory::kRed, {1.5, 1.0}}}, {{0.5, 1.0}, {2.5, 1.0}}, 120);
}

// Keeps the frames up to time `t_end`.
Scene truncated(Scene s, double t_end) {
  std::erase_if(s.frames, [&](const ObservationFrame& f) { return f.t > t_end; });
  return s;
}

ExperimentConfig small_config(Study study) {
  ExperimentConfig c;
  c.study = study;
  c.scenes = 6;
  c.interactions = 12;
  c.generation.min_frames = 40;
  c.generation.max_frames = 80;
  return c;
}

}  // namespace

TEST_CASE("fscore examples") {
  const FScore same = fscore({"a", "b"}, {"b", "a"});
  CHECK(same.precision == 1.0);
  CHECK(same.recall == 1.0);
  CHECK(same.fscore == 1.0);
  CHECK_FALSE(same.degenerate);

  const FScore half = fscore({"a", "b", "c", "d"}, {"a", "b", "x"});
  CHECK(half.precision == doctest::Approx(2.0 / 3.0));
  CHECK(half.recall == doctest::Approx(0.5));
  CHECK(half.fscore == doctest::Approx(4.0 / 7.0));

  const FScore none = fscore({}, {});
  CHECK(none.degenerate);
  CHECK(none.fscore == 0.0);
  CHECK(fscore({"a"}, {}).degenerate);
  CHECK(fscore({"a"}, {"b"}).fscore == 0.0);
}

TEST_CASE("fscore agrees with a counting oracle") {
  Rng rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::string> a, b;
    for (int k = 0; k < 8; ++k) {
      if (rng.bernoulli(0.5)) a.push_back(std::string(1, char('a' + k)));
      if (rng.bernoulli(0.5)) b.push_back(std::string(1, char('a' + k)));
    }
    int tp = 0;
    for (const auto& x : a) tp += std::count(b.begin(), b.end(), x) > 0;
    const FScore f = fscore(a, b);
    if (tp == 0) {
      CHECK(f.fscore == 0.0);
      continue;
    }
    const double p = double(tp) / double(b.size());
    const double r = double(tp) / double(a.size());
    CHECK(f.precision == doctest::Approx(p));
    CHECK(f.recall == doctest::Approx(r));
    CHECK(f.fscore == doctest::Approx(2 * p * r / (p + r)));
    // Swapping the reference swaps precision and recall.
    const FScore g = fscore(b, a);
    CHECK(g.precision == doctest::Approx(f.recall));
    CHECK(g.recall == doctest::Approx(f.precision));
  }
}

TEST_CASE("enumerate_descriptions examples") {
  const Scene world = three_region_scene();
  const auto sentences = enumerate_descriptions(world, "robot-1", "robot-2");
  CHECK(std::is_sorted(sentences.begin(), sentences.end()));
  CHECK(std::adjacent_find(sentences.begin(), sentences.end()) == sentences.end());
  auto has = [&](const std::string& s) { return std::binary_search(sentences.begin(), sentences.end(), s); };
  CHECK(has("the block moves across the red region"));
  CHECK(has("the block moves across the blue region"));
  CHECK(has("the block moves into the green region"));
  CHECK(has("the block moves out of the red region"));
  CHECK_FALSE(has("the block moves out of the green region"));
  CHECK_FALSE(has("the block moves across the green region"));

  const Scene still = build_scene({{"reg-36", ColorCategory::kRed, {1.0, 1.0}}}, {{2.0, 2.0}, {2.0, 2.0}});
  for (const auto& s : enumerate_descriptions(still, "robot-1", "robot-2"))
    CHECK(s.find("moves") == std::string::npos);

  // Without deviation both agents describe the same scene the same way.
  const ScenePair p = exact_pair(world);
  CHECK(enumerate_descriptions(p.a, p.a.observer, p.b.observer) ==
        enumerate_descriptions(p.b, p.a.observer, p.b.observer));
}

TEST_CASE("an interaction without deviation succeeds on every flag") {
  const ScenePair p = exact_pair(three_region_scene());
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const InteractionResult r = run_interaction(p, seed % 2 == 0, InteractionConfig{}, seed);
    CHECK(r.succ);
    CHECK(r.cm);
    CHECK(r.pu);
    CHECK(r.pm);
    CHECK(r.im);
    CHECK(r.ol);
    CHECK_FALSE(r.utterance.empty());
    CHECK(r.heard == r.utterance);
  }
}

TEST_CASE("reasoning recovers an exit the hearer did not see") {
  const Scene world = crossing_world();
  ScenePair p = exact_pair(world);
  // The hearer stops observing while the block is inside the region.
  p.b = truncated(p.b, 2.0);
  InteractionConfig wor;
  InteractionConfig wr;
  wr.reasoning = Reasoning::kWith;
  int across = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const InteractionResult without = run_interaction(p, true, wor, seed);
    const InteractionResult with = run_interaction(p, true, wr, seed);
    CHECK(without.topic == with.topic);
    if (without.topic.find("across") == std::string::npos) continue;
    ++across;
    // One region, so the color is not needed to discriminate it.
    CHECK(join(without.utterance) == "the block moves across the region");
    CHECK_FALSE(without.succ);
    CHECK(with.succ);
  }
  CHECK(across > 0);
}

TEST_CASE("pipeline flags are ordered") {
  ExperimentConfig c = small_config(Study::kLanguage);
  for (const auto& pair : generate_pool(c)) {
    for (int d : {0, 2, 3}) {
      for (bool permute : {false, true}) {
        InteractionConfig ic;
        ic.drop_words = d;
        ic.permute = permute;
        for (std::uint64_t seed = 0; seed < 4; ++seed) {
          const InteractionResult r = run_interaction(pair, seed % 2 == 1, ic, seed);
          if (r.pu) CHECK(r.cm);
          if (r.pm) CHECK(r.pu);
          CHECK(r.succ == r.im);
          if (r.cm) CHECK(r.heard.size() + static_cast<std::size_t>(d) == r.utterance.size());
        }
      }
    }
  }
}

TEST_CASE("condition rows per study") {
  ExperimentConfig c;
  c.study = Study::kVisual;
  CHECK(conditions(c).size() == 16);
  c.drop_rate = 0.5;
  CHECK(conditions(c).size() == 3);
  c.study = Study::kLanguage;
  CHECK(conditions(c).size() == 8);
  c.study = Study::kMisaligned;
  const auto rows = conditions(c);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].reasoning == Reasoning::kWithout);
  CHECK(rows[1].reasoning == Reasoning::kWith);
  c.study = Study::kBaseline;
  CHECK(conditions(c).size() == 1);
}

TEST_CASE("experiments are reproducible") {
  const ExperimentConfig c = small_config(Study::kVisual);
  std::ostringstream log1, log2;
  const std::string t1 = format_table(run_experiment(c, generate_pool(c), &log1));
  const std::string t2 = format_table(run_experiment(c, generate_pool(c), &log2));
  CHECK(t1 == t2);
  CHECK(log1.str() == log2.str());
  CHECK(t1.rfind("study,drop_rate,target,reasoning,drop_words,permute,interactions,succ,cm,pu,pm,im,ol,", 0) == 0);
  CHECK(std::count(t1.begin(), t1.end(), '\n') == 17);

  ExperimentConfig other = c;
  other.seed = 2;
  CHECK(format_table(run_experiment(other)) != t1);
}

TEST_CASE("the pool round trips through json") {
  const ExperimentConfig c = small_config(Study::kBaseline);
  const auto pool = generate_pool(c);
  CHECK(load_pool(pool_to_json(pool)) == pool);
  CHECK_THROWS_AS(load_pool("{\"scene_pairs\": 3}"), SceneError);
}

TEST_CASE("experiment configs round trip and reject unknown keys") {
  ExperimentConfig c = small_config(Study::kMisaligned);
  c.reasoning = Reasoning::kWith;
  c.generation.noise_std = 0.003;
  const ExperimentConfig back = experiment_config_from_json(to_json(c));
  CHECK(to_json(back) == to_json(c));
  CHECK_THROWS_AS(experiment_config_from_json(nlohmann::json{{"scenez", 3}}), ConfigError);
  CHECK_THROWS_AS(experiment_config_from_json(nlohmann::json{{"generation", {{"min_frames", 3}}}}), ConfigError);
  CHECK_THROWS_AS(experiment_config_from_json(nlohmann::json{{"scenes", 0}}), ConfigError);
  CHECK_THROWS_AS(experiment_config_from_json(nlohmann::json{{"drop_rates", {0.5, 1.5}}}), ConfigError);
}

TEST_CASE("misaligned pairs") {
  const ScenePair same = exact_pair(three_region_scene());
  CHECK_FALSE(misaligned(same));
  ScenePair cut = exact_pair(crossing_world());
  cut.b = truncated(cut.b, 2.0);
  CHECK(misaligned(cut));
}
