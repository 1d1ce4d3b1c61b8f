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

#ifndef SLG_GENERATOR_HPP_
#define SLG_GENERATOR_HPP_

#include <cstdint>
#include <optional>
#include <string_view>

#include "slg/scene.hpp"

namespace slg {

/// Shape of the block's trajectory relative to the regions it visits.
enum class TrajectoryFamily {
  kCross,              // passes through one or more regions, ends outside all
  kEnter,              // crosses zero or more regions, stops inside the last
  kStopNearBoundary,   // stops within a few centimetres of a region's exit edge
  kAlong,              // runs lengthwise through an elongated region
  kStationary,         // the block does not move
};

std::string_view to_string(TrajectoryFamily f);
std::optional<TrajectoryFamily> parse_trajectory_family(std::string_view s);

struct GenerationConfig {
  int min_regions = 2;
  int max_regions = 3;
  int min_frames = 60;
  int max_frames = 240;
  double frame_dt = 1.0 / 30.0;
  /// Per-observation Gaussian position noise (m), block and box poses.
  double noise_std = 0.01;
  /// Per-corner Gaussian noise (m) of the once-observed region quadrangles.
  double region_noise_std = 0.01;
  /// Error of each robot's estimate of its peer's pose.
  double peer_position_std = 0.05;
  double peer_theta_std = 0.05;
  double box_probability = 0.5;
  /// Relative weights used when `family` is unset.
  double weight_cross = 0.45;
  double weight_enter = 0.25;
  double weight_stop_near_boundary = 0.2;
  double weight_along = 0.1;
  std::optional<TrajectoryFamily> family;
  /// Regions the trajectory passes through; unset draws from [1, regions].
  std::optional<int> regions_on_path;

  /// A zero-deviation copy: both observers see the exact world.
  GenerationConfig without_deviation() const;
};

/// Noise-free world model both observer scenes are derived from. The world
/// frame is robot-a's frame.
struct GroundTruth {
  Scene world;
  Pose2 robot_a;
  Pose2 robot_b;
  TrajectoryFamily family = TrajectoryFamily::kCross;
  friend bool operator==(const GroundTruth&, const GroundTruth&) = default;
};

struct ScenePair {
  Scene a;
  Scene b;
  GroundTruth truth;
  friend bool operator==(const ScenePair&, const ScenePair&) = default;
};

/// Deterministic in (config, seed). Throws GenerationError for infeasible
/// configs or when no valid layout is found.
ScenePair generate_scene_pair(const GenerationConfig& config, std::uint64_t seed);

/// Re-expresses a world-frame scene as seen by a robot at `observer_pose`,
/// without noise. `peer_pose_world` is the other robot's true pose.
Scene observe_exactly(const Scene& world, std::string_view observer_id, const Pose2& observer_pose,
                      const Pose2& peer_pose_world);

}  // namespace slg

#endif  // SLG_GENERATOR_HPP_
