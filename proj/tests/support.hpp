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

// Small scene builders shared by the test binaries.

#ifndef SLG_TESTS_SUPPORT_HPP_
#define SLG_TESTS_SUPPORT_HPP_

#include <string>
#include <vector>

#include "slg/generator.hpp"
#include "slg/scene.hpp"

namespace slg::testing {

struct RegionSpec {
  std::string id;
  ColorCategory color;
  Vec2 center;
  double half = 0.25;
};

inline Region square(const std::string& id, Vec2 c, double half) {
  return {id, Quad{Vec2{c.x - half, c.y - half}, Vec2{c.x + half, c.y - half}, Vec2{c.x + half, c.y + half},
                   Vec2{c.x - half, c.y + half}}};
}

/// Observer robot-1 at the origin facing +x, robot-2 at (3, 0) facing it.
/// The block visits `waypoints` at constant speed over `frames` frames.
inline Scene build_scene(const std::vector<RegionSpec>& regions, const std::vector<Vec2>& waypoints, int frames = 120,
                         ColorCategory block_color = ColorCategory::kGreen, const std::string& block = "obj-1") {
  Scene s;
  s.observer = "robot-1";
  s.peer_pose = Pose2{{3.0, 0.0}, 3.141592653589793};
  s.objects.push_back({"robot-1", ObjectClass::kRobot, ColorCategory::kBlue, color_prototype(ColorCategory::kBlue),
                       0.3, 0.2});
  s.objects.push_back({"robot-2", ObjectClass::kRobot, ColorCategory::kBlue, color_prototype(ColorCategory::kBlue),
                       0.3, 0.2});
  s.objects.push_back({block, ObjectClass::kBlock, block_color, color_prototype(block_color), 0.05, 0.05});
  for (const auto& r : regions) {
    s.objects.push_back({r.id, ObjectClass::kRegion, r.color, color_prototype(r.color), 2 * r.half, 2 * r.half});
    s.regions.push_back(square(r.id, r.center, r.half));
  }
  std::vector<double> cumulative{0.0};
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    cumulative.push_back(cumulative.back() + distance(waypoints[i - 1], waypoints[i]));
  }
  const double total = cumulative.back();
  for (int i = 0; i < frames; ++i) {
    const double along = total * i / (frames - 1);
    std::size_t k = 1;
    while (k + 1 < waypoints.size() && cumulative[k] < along) ++k;
    const double seg = cumulative[k] - cumulative[k - 1];
    const double u = seg > 0.0 ? (along - cumulative[k - 1]) / seg : 0.0;
    ObservationFrame f;
    f.t = i / 30.0;
    f.poses[block] = ObjectPose{waypoints[k - 1] + u * (waypoints[k] - waypoints[k - 1]), std::nullopt};
    s.frames.push_back(std::move(f));
  }
  validate_scene(s);
  return s;
}

/// Crosses a red region, then a blue one, and stops inside a green one.
inline Scene three_region_scene(int frames = 150) {
  return build_scene({{"reg-36", ColorCategory::kRed, {1.0, 1.0}}, {"reg-37", ColorCategory::kBlue, {2.0, 1.0}},
                      {"reg-38", ColorCategory::kGreen, {3.0, 1.0}}},
                     {{0.3, 1.0}, {3.0, 1.05}}, frames);
}

/// The same world seen from robot-2, which stands at (3, 0) facing robot-1.
inline Scene as_seen_by_peer(const Scene& world) {
  const Pose2 peer = world.peer_pose;
  return observe_exactly(world, "robot-2", peer, Pose2{});
}

inline ScenePair exact_pair(const Scene& world) {
  ScenePair p;
  p.a = world;
  p.b = as_seen_by_peer(world);
  p.truth.world = world;
  p.truth.robot_b = world.peer_pose;
  return p;
}

}  // namespace slg::testing

#endif  // SLG_TESTS_SUPPORT_HPP_
