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

#ifndef SLG_HARNESS_HPP_
#define SLG_HARNESS_HPP_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "slg/conceptualize.hpp"
#include "slg/generator.hpp"
#include "slg/grammar.hpp"

namespace slg {

enum class Study { kBaseline, kVisual, kMisaligned, kLanguage };
/// Whose observations lose frames in the visual study.
enum class Target { kBoth, kOnlyA, kOnlyB };
/// Meaning overlap compares programs; utterance overlap compares sentences.
enum class OverlapLevel { kMeaning, kUtterance };

std::string_view to_string(Study s);
std::string_view to_string(Target t);
std::string_view to_string(OverlapLevel o);
std::optional<Study> parse_study(std::string_view s);
std::optional<Target> parse_target(std::string_view s);
std::optional<OverlapLevel> parse_overlap(std::string_view s);

struct InteractionConfig {
  Reasoning reasoning = Reasoning::kWithout;
  int depth = kDefaultHypothesisDepth;
  int drop_words = 0;
  bool permute = false;
  int completion_budget = 4;
  ConceptualizeOptions conceptualize;
  OverlapLevel overlap = OverlapLevel::kMeaning;
};

struct InteractionResult {
  bool succ = false;
  bool cm = false;
  bool pu = false;
  bool pm = false;
  bool im = false;
  bool ol = false;
  std::string speaker;
  std::string hearer;
  std::string topic;
  std::optional<SemanticProgram> meaning;
  Utterance utterance;
  Utterance heard;
  /// Best interpretation, rendered as bindings; empty when none.
  std::string interpretation;
};

/// One speaker-hearer exchange. The speaker's view is `a` when `a_speaks`.
/// Topic choice and word perturbation draw from `seed`.
InteractionResult run_interaction(const ScenePair& pair, bool a_speaks, const InteractionConfig& config,
                                  std::uint64_t seed, const Grammar& grammar = Grammar::default_grammar());

/// Precomputed contexts of both agents for repeated interactions on a pair.
struct AgentContexts {
  EvaluationContext a_speaking;
  EvaluationContext b_hearing;
  EvaluationContext b_speaking;
  EvaluationContext a_hearing;
};
AgentContexts make_agent_contexts(const ScenePair& pair, const ContextOptions& hearer_options);

InteractionResult run_interaction(const AgentContexts& contexts, bool a_speaks, const InteractionConfig& config,
                                  std::uint64_t seed, const Grammar& grammar = Grammar::default_grammar());

/// Sorted, deduplicated sentences of the simple descriptions of `scene`,
/// with `me` and `you` resolved to the given robots.
std::vector<std::string> enumerate_descriptions(const Scene& scene, const std::string& me, const std::string& you,
                                                const Grammar& grammar = Grammar::default_grammar());

struct FScore {
  double precision = 0.0;
  double recall = 0.0;
  double fscore = 0.0;
  /// A denominator was empty and the value defaulted to 0.
  bool degenerate = false;
};

/// Set `a` is the reference: true positives are in both, false negatives
/// only in `a`, false positives only in `b`.
FScore fscore(const std::vector<std::string>& a, const std::vector<std::string>& b);

struct Condition {
  Study study = Study::kBaseline;
  double drop_rate = 0.0;
  Target target = Target::kBoth;
  Reasoning reasoning = Reasoning::kWithout;
  int drop_words = 0;
  bool permute = false;
};

struct ExperimentConfig {
  std::uint64_t seed = 1;
  int scenes = 200;
  int interactions = 10000;
  GenerationConfig generation;
  Study study = Study::kBaseline;
  std::vector<double> drop_rates = {0.10, 0.25, 0.40, 0.50, 0.75};
  std::vector<Target> targets = {Target::kBoth, Target::kOnlyA, Target::kOnlyB};
  std::vector<int> drop_words = {0, 1, 2, 3};
  std::vector<bool> permute = {false, true};
  /// Pins a single value of a swept dimension.
  std::optional<double> drop_rate;
  std::optional<Target> target;
  std::optional<Reasoning> reasoning;
  std::optional<int> drop_words_only;
  std::optional<bool> permute_only;
  int depth = kDefaultHypothesisDepth;
  int completion_budget = 4;
  int node_budget = 12;
  OverlapLevel overlap = OverlapLevel::kMeaning;
  /// Description-set f-scores over the pool for every row.
  bool fscores = true;
};

/// Throws ConfigError on invalid values.
void validate(const ExperimentConfig& config);
ExperimentConfig experiment_config_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const ExperimentConfig& config);

/// Rows of the study, in table order.
std::vector<Condition> conditions(const ExperimentConfig& config);

struct MetricsRow {
  Condition condition;
  int interactions = 0;
  double succ = 0.0;
  double cm = 0.0;
  double pu = 0.0;
  double pm = 0.0;
  double im = 0.0;
  double ol = 0.0;
  /// Means over the pairs whose description sets are not both empty.
  double precision = 0.0;
  double recall = 0.0;
  double fscore = 0.0;
};

struct MetricsTable {
  std::vector<MetricsRow> rows;
};

/// Pairs whose agents detect different kinds or landmarks of events.
bool misaligned(const ScenePair& pair);

std::vector<ScenePair> generate_pool(const ExperimentConfig& config);
/// `{"scene_pairs": [...]}`. Throws SceneError when unloadable.
std::vector<ScenePair> load_pool(std::string_view text);
std::string pool_to_json(const std::vector<ScenePair>& pool);

/// Runs every condition over the pool. When `log` is set, writes one line
/// per interaction.
MetricsTable run_experiment(const ExperimentConfig& config, const std::vector<ScenePair>& pool,
                            std::ostream* log = nullptr);
/// Generates the pool from the config, then runs.
MetricsTable run_experiment(const ExperimentConfig& config);

/// Comma-separated, header first, fixed precision.
std::string format_table(const MetricsTable& table);

}  // namespace slg

#endif  // SLG_HARNESS_HPP_
