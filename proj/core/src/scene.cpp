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

#include "slg/scene.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "slg/error.hpp"
#include "slg/rng.hpp"

namespace slg {

std::string_view to_string(ObjectClass c) {
  switch (c) {
    case ObjectClass::kBlock: return "block";
    case ObjectClass::kBox: return "box";
    case ObjectClass::kRobot: return "robot";
    case ObjectClass::kRegion: return "region";
  }
  return "?";
}

std::string_view to_string(ColorCategory c) {
  switch (c) {
    case ColorCategory::kRed: return "red";
    case ColorCategory::kGreen: return "green";
    case ColorCategory::kBlue: return "blue";
    case ColorCategory::kYellow: return "yellow";
  }
  return "?";
}

std::optional<ObjectClass> parse_object_class(std::string_view s) {
  for (auto c : {ObjectClass::kBlock, ObjectClass::kBox, ObjectClass::kRobot, ObjectClass::kRegion}) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

std::optional<ColorCategory> parse_color(std::string_view s) {
  for (auto c : kAllColors) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

YCbCr color_prototype(ColorCategory c) {
  // BT.601 conversions of the saturated RGB primaries.
  switch (c) {
    case ColorCategory::kRed: return {76.0, 85.0, 255.0};
    case ColorCategory::kGreen: return {150.0, 44.0, 21.0};
    case ColorCategory::kBlue: return {29.0, 255.0, 107.0};
    case ColorCategory::kYellow: return {226.0, 1.0, 149.0};
  }
  return {};
}

ColorCategory categorize_color(const YCbCr& raw) {
  ColorCategory best = ColorCategory::kRed;
  double best_d = std::numeric_limits<double>::infinity();
  for (auto c : kAllColors) {
    const YCbCr p = color_prototype(c);
    const double d = std::hypot(raw.cb - p.cb, raw.cr - p.cr);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

Vec2 Region::centroid() const {
  Vec2 c;
  for (const Vec2& p : corners) c = c + 0.25 * p;
  return c;
}

double Region::shorter_side() const {
  double s = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < corners.size(); ++i) {
    s = std::min(s, distance(corners[i], corners[(i + 1) % corners.size()]));
  }
  return s;
}

Vec2 Region::extent() const {
  double min_x = corners[0].x, max_x = min_x, min_y = corners[0].y, max_y = min_y;
  for (const Vec2& p : corners) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  return {max_x - min_x, max_y - min_y};
}

void Scene::refresh_region_extents() {
  for (const auto& r : regions) {
    for (auto& o : objects) {
      if (o.id != r.id) continue;
      const Vec2 e = r.extent();
      o.width = e.x;
      o.height = e.y;
    }
  }
}

const SceneObject* Scene::find_object(std::string_view id) const {
  for (const auto& o : objects) {
    if (o.id == id) return &o;
  }
  return nullptr;
}

const Region* Scene::find_region(std::string_view id) const {
  for (const auto& r : regions) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

const SceneObject* Scene::block() const {
  for (const auto& o : objects) {
    if (o.cls == ObjectClass::kBlock) return &o;
  }
  return nullptr;
}

const SceneObject* Scene::peer() const {
  for (const auto& o : objects) {
    if (o.cls == ObjectClass::kRobot && o.id != observer) return &o;
  }
  return nullptr;
}

std::vector<TimedPosition> Scene::track(std::string_view id) const {
  std::vector<TimedPosition> out;
  for (const auto& f : frames) {
    if (auto it = f.poses.find(id); it != f.poses.end()) {
      out.push_back({f.t, it->second.position});
    }
  }
  return out;
}

std::optional<Pose2> Scene::static_pose(std::string_view id) const {
  if (id == observer) return Pose2{};
  if (const SceneObject* p = peer(); p != nullptr && p->id == id) return peer_pose;
  for (const auto& f : frames) {
    if (auto it = f.poses.find(id); it != f.poses.end()) {
      return Pose2{it->second.position, it->second.theta.value_or(0.0)};
    }
  }
  return std::nullopt;
}

double Scene::diameter() const {
  std::vector<Vec2> pts{Vec2{}, peer_pose.position};
  for (const auto& r : regions) pts.insert(pts.end(), r.corners.begin(), r.corners.end());
  for (const auto& f : frames) {
    for (const auto& [id, pose] : f.poses) pts.push_back(pose.position);
  }
  double d = 0.0;
  // Hull-free quadratic scan; scenes hold a few hundred points at most after
  // deduplicating static poses.
  std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, distance(pts[i], pts[j]));
  }
  return d;
}

void validate_scene(const Scene& scene) {
  std::set<std::string, std::less<>> ids;
  int blocks = 0;
  for (const auto& o : scene.objects) {
    if (o.id.empty()) throw SceneError("object with empty id");
    if (!ids.insert(o.id).second) throw SceneError("duplicate object id '" + o.id + "'");
    if (o.cls == ObjectClass::kBlock) ++blocks;
    if (o.cls != ObjectClass::kRegion && !(o.width > 0.0 && o.height > 0.0)) {
      throw SceneError("object '" + o.id + "' must have a strictly positive extent");
    }
  }
  if (blocks != 1) throw SceneError("a scene must contain exactly one block");
  const SceneObject* self = scene.find_object(scene.observer);
  if (self == nullptr || self->cls != ObjectClass::kRobot) {
    throw SceneError("observer '" + scene.observer + "' is not a robot of the scene");
  }
  for (const auto& r : scene.regions) {
    const SceneObject* o = scene.find_object(r.id);
    if (o == nullptr || o->cls != ObjectClass::kRegion) {
      throw SceneError("region '" + r.id + "' has no region entry in the object table");
    }
    if (!is_strictly_convex_ccw(r.corners)) {
      throw SceneError("region '" + r.id + "' is not a strictly convex counterclockwise quadrangle");
    }
  }
  for (std::size_t i = 0; i < scene.frames.size(); ++i) {
    const auto& f = scene.frames[i];
    if (i > 0 && !(f.t > scene.frames[i - 1].t)) {
      throw SceneError("timestamps are not strictly increasing at frame " + std::to_string(i));
    }
    for (const auto& [id, pose] : f.poses) {
      if (!ids.contains(id)) throw SceneError("frame pose for unknown object '" + id + "'");
    }
  }
}

Containment point_in_region(Vec2 p, const Region& region, double eps) {
  bool on_edge = false;
  for (std::size_t i = 0; i < region.corners.size(); ++i) {
    const Vec2 a = region.corners[i];
    const Vec2 b = region.corners[(i + 1) % region.corners.size()];
    const double len = distance(a, b);
    const double signed_dist = cross(b - a, p - a) / len;
    if (signed_dist < -eps) return Containment::kOutside;
    if (signed_dist <= eps) on_edge = true;
  }
  return on_edge ? Containment::kBoundary : Containment::kInside;
}

Scene drop_frames(const Scene& scene, double rate, std::uint64_t seed) {
  Scene out = scene;
  const SceneObject* block = scene.block();
  if (block == nullptr) return out;
  Rng rng(seed);
  for (auto& f : out.frames) {
    const double u = rng.uniform();
    if (u < rate) {
      auto it = f.poses.find(block->id);
      if (it != f.poses.end()) f.poses.erase(it);
    }
  }
  return out;
}

}  // namespace slg
