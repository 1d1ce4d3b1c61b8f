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

#ifndef SLG_SEMANTICS_HPP_
#define SLG_SEMANTICS_HPP_

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "slg/events.hpp"
#include "slg/program.hpp"
#include "slg/qsr.hpp"
#include "slg/scene.hpp"

namespace slg {

/// Every object of the scene.
struct ContextValue {
  friend bool operator==(const ContextValue&, const ContextValue&) = default;
};
/// Object ids, sorted.
struct ObjectSet {
  std::vector<std::string> ids;
  friend bool operator==(const ObjectSet&, const ObjectSet&) = default;
};
struct ObjectRef {
  std::string id;
  friend bool operator==(const ObjectRef&, const ObjectRef&) = default;
};
/// The movement of an object over the whole scene.
struct MovementValue {
  std::string undergoer;
  friend bool operator==(const MovementValue&, const MovementValue&) = default;
};
struct PathValue {
  std::string undergoer;
  friend bool operator==(const PathValue&, const PathValue&) = default;
};
/// Source or goal position of a movement.
struct LocationValue {
  std::string undergoer;
  std::string profile;
  Vec2 position;
  friend bool operator==(const LocationValue&, const LocationValue&) = default;
};
struct EventSetValue {
  std::vector<MovementEvent> events;
  friend bool operator==(const EventSetValue&, const EventSetValue&) = default;
};

using Value = std::variant<ContextValue, ObjectSet, ObjectRef, SemanticEntity, MovementValue, PathValue,
                           LocationValue, EventSetValue>;

std::string to_string(const Value& v);

enum class Reasoning { kWithout, kWith };
std::string_view to_string(Reasoning r);
std::optional<Reasoning> parse_reasoning(std::string_view s);

struct ContextOptions {
  Reasoning reasoning = Reasoning::kWithout;
  int depth = kDefaultHypothesisDepth;
  EventConfig events;
  /// A block displaced less than this has no movement.
  double min_displacement = 0.05;
  /// near below, far above this fraction of the scene diameter.
  double proximal_ratio = 0.5;
};

/// Everything one agent knows about a scene. `me` and `you` are robot ids;
/// the speaker is always `me`.
struct EvaluationContext {
  Scene scene;
  std::vector<FluentTrack> fluents;
  MovementSequence psi;
  SpatialState final_state;
  std::string me;
  std::string you;
  ContextOptions options;
  double diameter = 0.0;
  std::vector<TimedPosition> block_track;

  /// Position of a robot, box, region centroid or observed object.
  std::optional<Vec2> position_of(std::string_view id) const;
  std::optional<Pose2> pose_of(std::string_view id) const;
  /// The block, when it moved by at least the minimum displacement.
  const SceneObject* moving_block() const;
};

/// Perceives and reasons over a scene. Throws SceneError when `me` or `you`
/// is not a robot of the scene.
EvaluationContext make_context(Scene scene, std::string me, std::string you, const ContextOptions& options = {});

/// Context of the observer speaking to its peer.
EvaluationContext speaker_context(Scene scene, const ContextOptions& options = {});
/// Context of the observer listening to its peer.
EvaluationContext hearer_context(Scene scene, const ContextOptions& options = {});

struct EvaluationResult {
  bool consistent = false;
  std::map<std::string, Value> bindings;
  /// Product of the static relation similarities, in [0, 1].
  double score = 1.0;
};

/// All consistent total binding sets, in search order. Empty when the
/// program is inconsistent, has no operations, uses an unknown operation, or
/// leaves a node that cannot run in any direction.
std::vector<EvaluationResult> evaluate(const SemanticProgram& program, const EvaluationContext& ctx);

/// Variable naming what the program refers to: the event set of a dynamic
/// relation, else the selected movement, else the last unique entity.
std::optional<std::string> referent_variable(const SemanticProgram& program);

/// Distinct referent values over the results, in order of first appearance.
std::vector<Value> referents(const SemanticProgram& program, const std::vector<EvaluationResult>& results);

}  // namespace slg

#endif  // SLG_SEMANTICS_HPP_
