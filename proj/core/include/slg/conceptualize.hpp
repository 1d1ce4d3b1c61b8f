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

#ifndef SLG_CONCEPTUALIZE_HPP_
#define SLG_CONCEPTUALIZE_HPP_

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "slg/semantics.hpp"

namespace slg {

/// `the [color] class`. An empty symbol leaves the entity open.
struct NounPhrase {
  std::string cls;
  std::optional<std::string> color;
  friend bool operator==(const NounPhrase&, const NounPhrase&) = default;
};

/// A pronoun (`me`, `you`) or a noun phrase.
using LandmarkPhrase = std::variant<std::string, NounPhrase>;

struct DynamicPhrase {
  std::string relation;
  NounPhrase landmark;
  friend bool operator==(const DynamicPhrase&, const DynamicPhrase&) = default;
};

/// Pronoun landmarks use their intrinsic frame; object landmarks the
/// relative frame from the speaker's viewpoint.
struct StaticPhrase {
  std::string relation;
  LandmarkPhrase landmark;
  friend bool operator==(const StaticPhrase&, const StaticPhrase&) = default;
};

/// The shape of every meaning the agents talk about: a noun phrase, and
/// optionally `moves` with a dynamic phrase or with a source and/or goal.
struct Description {
  NounPhrase subject;
  std::optional<DynamicPhrase> path;
  std::optional<StaticPhrase> source;
  std::optional<StaticPhrase> goal;
  friend bool operator==(const Description&, const Description&) = default;

  bool moves() const { return path || source || goal; }
  /// At most one prepositional phrase.
  bool simple() const { return int(path.has_value()) + int(source.has_value()) + int(goal.has_value()) <= 1; }
};

/// Plain English rendering, used for ordering and logs.
std::string to_string(const Description& d);

SemanticProgram build_program(const Description& d);

/// Search cost: operation nodes plus a tenth per bind statement.
double program_cost(const SemanticProgram& p);

enum class Goal { kDescribe, kDiscriminate };

struct Topic {
  enum class Kind { kEvent, kSource, kGoal, kSourceGoal, kObject };
  Kind kind = Kind::kObject;
  MovementEvent event;
  std::string object;
};

std::string to_string(const Topic& t);

/// Event topics for every event of the movement sequence, then source, goal
/// and source-goal of the movement; just the block when it does not move.
std::vector<Topic> topics(const EvaluationContext& ctx);

struct ConceptualizeOptions {
  int node_budget = 12;
  /// near/far are offered only when set.
  bool proximal = false;
};

struct Conceptualization {
  Description description;
  SemanticProgram program;
  double score = 0.0;
};

/// Cheapest description that reaches the goal, ties broken by higher score
/// then by rendering. nullopt when none fits within the node budget.
std::optional<Conceptualization> conceptualize(Goal goal, const Topic& topic, const EvaluationContext& ctx,
                                               const ConceptualizeOptions& options = {});

/// Every consistent description of the moving block, in rendering order.
/// With `simple_only`, descriptions carry at most one prepositional phrase.
std::vector<Description> enumerate_consistent(const EvaluationContext& ctx, bool simple_only = true,
                                              const ConceptualizeOptions& options = {});

struct Interpretation {
  SemanticProgram program;
  EvaluationResult result;
  /// Fraction of the completed program contributed by the parsed one.
  double score = 0.0;
  int inserted_nodes = 0;
  /// Parsed links that had to be detached before the program embedded.
  int dissolved_links = 0;
};

/// Upper bound on detached links when embedding a misordered parse.
inline constexpr int kMaxDissolvedLinks = 2;

/// Program shapes used to complete partial meanings, all entities open.
const std::vector<SemanticProgram>& completion_templates();

/// Evaluates a program that is consistent as it stands; otherwise embeds it
/// into each completion template that needs at most `budget` further
/// operations and evaluates the completion. Embeddings are also tried with up
/// to kMaxDissolvedLinks shared variables detached. Ranked by score, then
/// fewer detached links, then fewer inserted nodes, then search order.
std::vector<Interpretation> interpret(const SemanticProgram& program, const EvaluationContext& ctx, int budget = 4);

}  // namespace slg

#endif  // SLG_CONCEPTUALIZE_HPP_
