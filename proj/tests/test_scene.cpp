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

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "slg/error.hpp"
#include "slg/events.hpp"
#include "slg/generator.hpp"
#include "slg/qsr.hpp"
#include "slg/rng.hpp"
#include "slg/scene.hpp"
#include "slg/scene_io.hpp"
#include "support.hpp"

using namespace slg;
using slg::testing::build_scene;

namespace {

nlohmann::json two_region_document() {
  const Scene s = build_scene({{"reg-1", ColorCategory::kRed, {1.0, 1.0}}, {"reg-2", ColorCategory::kBlue, {2.0, 1.0}}},
                              {{0.5, 1.0}, {2.5, 1.0}}, 120);
  return to_json(s);
}

// Winding number by summed signed angles, independent of the half-plane test.
int winding_number(Vec2 p, const Quad& q) {
  double total = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const Vec2 a = q[i] - p;
    const Vec2 b = q[(i + 1) % q.size()] - p;
    total += std::atan2(cross(a, b), dot(a, b));
  }
  return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

// Corners on a rotated ellipse at sorted angles are convex and ccw.
Quad random_convex_quad(Rng& rng) {
  const Vec2 c{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  const double rx = rng.uniform(0.2, 1.5), ry = rng.uniform(0.2, 1.5), rot = rng.uniform(0.0, 6.3);
  std::array<double, 4> angles{};
  for (auto& a : angles) a = rng.uniform(0.0, 2.0 * std::numbers::pi);
  std::sort(angles.begin(), angles.end());
  Quad q;
  for (std::size_t i = 0; i < 4; ++i) q[i] = c + rotate(Vec2{rx * std::cos(angles[i]), ry * std::sin(angles[i])}, rot);
  return q;
}

double edge_distance(Vec2 p, const Quad& q) {
  double d = 1e300;
  for (std::size_t i = 0; i < 4; ++i) d = std::min(d, point_segment_distance(p, q[i], q[(i + 1) % 4]));
  return d;
}

}  // namespace

TEST_CASE("load_scene ingests a two-region document") {
  const Scene s = load_scene(two_region_document().dump());
  CHECK(s.objects.size() == 5);
  CHECK(s.frames.size() == 120);
  CHECK(s.regions.size() == 2);
}

TEST_CASE("load_scene rejects repeated timestamps") {
  auto doc = two_region_document();
  doc["frames"][1]["t"] = doc["frames"][0]["t"];
  CHECK_THROWS_AS(load_scene(doc.dump()), SceneError);
}

TEST_CASE("load_scene reorders clockwise corners counterclockwise") {
  auto doc = two_region_document();
  auto& corners = doc["regions"][0]["corners"];
  std::reverse(corners.begin(), corners.end());
  const Scene s = load_scene(doc.dump());
  CHECK(signed_area2(s.regions[0].corners) > 0.0);
  CHECK(is_strictly_convex_ccw(s.regions[0].corners));
}

TEST_CASE("load_scene rejects unknown classes and non-convex regions") {
  auto doc = two_region_document();
  doc["objects"][0]["class"] = "table";
  CHECK_THROWS_AS(load_scene(doc.dump()), SceneError);

  auto dented = two_region_document();
  dented["regions"][0]["corners"][2] = nlohmann::json::array({0.8, 0.8});
  CHECK_THROWS_AS(load_scene(dented.dump()), SceneError);
  CHECK_THROWS_AS(load_scene("{not json"), SceneError);
}

TEST_CASE("scene documents survive a save and load") {
  const Scene s = slg::testing::three_region_scene();
  const Scene back = load_scene(to_json(s).dump());
  REQUIRE(back.frames.size() == s.frames.size());
  CHECK(back.regions == s.regions);
  CHECK(back.frames == s.frames);
}

TEST_CASE("a crossing trajectory enters and leaves both regions") {
  GenerationConfig cfg;
  cfg.min_regions = cfg.max_regions = 2;
  cfg.family = TrajectoryFamily::kCross;
  cfg.regions_on_path = 2;
  const ScenePair pair = generate_scene_pair(cfg.without_deviation(), 1);
  const auto psi = detect_events(extract_fluents(pair.truth.world));
  for (const auto& r : pair.truth.world.regions) {
    int into = 0, out_of = 0;
    for (const auto& e : psi.events) {
      into += e.landmark == r.id && e.kind == EventKind::kMovesInto;
      out_of += e.landmark == r.id && e.kind == EventKind::kMovesOutOf;
    }
    CHECK(into == 1);
    CHECK(out_of == 1);
  }
}

TEST_CASE("generation is a pure function of config and seed") {
  GenerationConfig cfg;
  for (std::uint64_t seed : {1u, 2u, 77u}) {
    CHECK(generate_scene_pair(cfg, seed) == generate_scene_pair(cfg, seed));
  }
  CHECK_FALSE(generate_scene_pair(cfg, 1) == generate_scene_pair(cfg, 2));
}

TEST_CASE("without deviation the two views differ by the exact rigid transform") {
  const GenerationConfig cfg = GenerationConfig{}.without_deviation();
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const ScenePair pair = generate_scene_pair(cfg, seed);
    // robot-1's pose in robot-2's frame is the inverse of the peer pose.
    const Pose2 b_in_a = pair.a.peer_pose;
    REQUIRE(pair.a.frames.size() == pair.b.frames.size());
    for (std::size_t i = 0; i < pair.a.frames.size(); ++i) {
      for (const auto& [id, pose_b] : pair.b.frames[i].poses) {
        const Vec2 mapped = b_in_a.apply(pose_b.position);
        const Vec2 direct = pair.a.frames[i].poses.at(id).position;
        CHECK(distance(mapped, direct) < 1e-9);
      }
    }
    for (std::size_t r = 0; r < pair.a.regions.size(); ++r) {
      for (std::size_t k = 0; k < 4; ++k) {
        CHECK(distance(b_in_a.apply(pair.b.regions[r].corners[k]), pair.a.regions[r].corners[k]) < 1e-9);
      }
    }
    const Pose2 roundtrip = b_in_a.compose(pair.b.peer_pose);
    CHECK(norm(roundtrip.position) < 1e-9);
    CHECK(std::abs(wrap_angle(roundtrip.theta)) < 1e-9);
  }
}

TEST_CASE("infeasible generation configs are rejected") {
  GenerationConfig cfg;
  cfg.min_regions = cfg.max_regions = 0;
  cfg.family = TrajectoryFamily::kCross;
  CHECK_THROWS_AS(generate_scene_pair(cfg, 1), GenerationError);
  GenerationConfig frames;
  frames.min_frames = 10;
  frames.max_frames = 5;
  CHECK_THROWS_AS(generate_scene_pair(frames, 1), GenerationError);
}

TEST_CASE("drop_frames at rate zero is the identity") {
  const ScenePair pair = generate_scene_pair(GenerationConfig{}, 3);
  CHECK(drop_frames(pair.a, 0.0, 11) == pair.a);
}

TEST_CASE("drop_frames keeps frames, timestamps and retained coordinates") {
  const ScenePair pair = generate_scene_pair(GenerationConfig{}, 4);
  const std::string block = pair.a.block()->id;
  for (double rate : {0.1, 0.5, 0.9}) {
    const Scene d = drop_frames(pair.a, rate, 99);
    REQUIRE(d.frames.size() == pair.a.frames.size());
    for (std::size_t i = 0; i < d.frames.size(); ++i) {
      CHECK(d.frames[i].t == pair.a.frames[i].t);
      for (const auto& [id, pose] : d.frames[i].poses) CHECK(pose == pair.a.frames[i].poses.at(id));
      // Only the block ever goes missing.
      CHECK(d.frames[i].poses.size() + 1 >= pair.a.frames[i].poses.size());
      if (d.frames[i].poses.size() < pair.a.frames[i].poses.size()) CHECK_FALSE(d.frames[i].poses.contains(block));
    }
    CHECK(drop_frames(pair.a, rate, 99) == d);
  }
}

TEST_CASE("dropping 75 percent of 60 frames removes about 45 observations") {
  const Scene s = build_scene({{"reg-1", ColorCategory::kRed, {1.0, 1.0}}}, {{0.5, 1.0}, {1.5, 1.0}}, 60);
  double removed = 0.0;
  const int seeds = 400;
  for (int seed = 0; seed < seeds; ++seed) {
    removed += 60.0 - static_cast<double>(drop_frames(s, 0.75, static_cast<std::uint64_t>(seed)).track("obj-1").size());
  }
  CHECK(removed / seeds == doctest::Approx(45.0).epsilon(0.02));
}

TEST_CASE("dropping every frame leaves no block observations and no events") {
  const Scene d = drop_frames(slg::testing::three_region_scene(), 1.0, 5);
  CHECK(d.track("obj-1").empty());
  CHECK(extract_fluents(d).empty());
  CHECK(detect_events(extract_fluents(d)).events.empty());
}

TEST_CASE("point_in_region on a unit square") {
  const Region r = slg::testing::square("reg", {0.5, 0.5}, 0.5);
  CHECK(point_in_region({0.5, 0.5}, r) == Containment::kInside);
  CHECK(point_in_region({10.5, 10.5}, r) == Containment::kOutside);
  CHECK(point_in_region({0.5, 0.0}, r) == Containment::kBoundary);
  CHECK(point_in_region({1.0, 1.0}, r) == Containment::kBoundary);
}

TEST_CASE("point_in_region agrees with a winding-number oracle") {
  Rng rng(20240611);
  int compared = 0;
  for (int i = 0; i < 10000; ++i) {
    const Quad q = random_convex_quad(rng);
    if (!is_strictly_convex_ccw(q, 1e-6)) continue;
    const Vec2 p{rng.uniform(-2.5, 2.5), rng.uniform(-2.5, 2.5)};
    if (edge_distance(p, q) < 1e-6) continue;
    const bool inside = winding_number(p, q) != 0;
    const Containment c = point_in_region(p, Region{"r", q});
    CHECK(c != Containment::kBoundary);
    CHECK((c == Containment::kInside) == inside);
    ++compared;
  }
  CHECK(compared > 9000);
}

TEST_CASE("validate_scene enforces the scene invariants") {
  Scene s = slg::testing::three_region_scene();
  CHECK_NOTHROW(validate_scene(s));
  Scene two_blocks = s;
  two_blocks.objects.push_back({"obj-2", ObjectClass::kBlock, ColorCategory::kRed, {}, 0.05, 0.05});
  CHECK_THROWS_AS(validate_scene(two_blocks), SceneError);
  Scene bad_observer = s;
  bad_observer.observer = "obj-1";
  CHECK_THROWS_AS(validate_scene(bad_observer), SceneError);
  Scene unknown = s;
  unknown.frames[0].poses["ghost"] = ObjectPose{};
  CHECK_THROWS_AS(validate_scene(unknown), SceneError);
}

TEST_CASE("color categorization picks the nearest prototype") {
  for (auto c : kAllColors) CHECK(categorize_color(color_prototype(c)) == c);
}
