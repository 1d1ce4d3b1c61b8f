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

#ifndef SLG_SCENE_HPP_
#define SLG_SCENE_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "slg/geometry.hpp"

namespace slg {

enum class ObjectClass { kBlock, kBox, kRobot, kRegion };
enum class ColorCategory { kRed, kGreen, kBlue, kYellow };

inline constexpr std::array<ColorCategory, 4> kAllColors = {
    ColorCategory::kRed, ColorCategory::kGreen, ColorCategory::kBlue, ColorCategory::kYellow};

std::string_view to_string(ObjectClass c);
std::string_view to_string(ColorCategory c);
std::optional<ObjectClass> parse_object_class(std::string_view s);
std::optional<ColorCategory> parse_color(std::string_view s);

/// Raw colour as seen by the camera, each channel in [0, 255].
struct YCbCr {
  double y = 0.0;
  double cb = 0.0;
  double cr = 0.0;
  friend bool operator==(const YCbCr&, const YCbCr&) = default;
};

/// Prototype chroma of a colour category.
YCbCr color_prototype(ColorCategory c);

/// Nearest colour category by chroma (Cb, Cr) distance; luma is ignored.
ColorCategory categorize_color(const YCbCr& raw);

struct SceneObject {
  std::string id;
  ObjectClass cls = ObjectClass::kBlock;
  ColorCategory color = ColorCategory::kRed;
  YCbCr raw;
  double width = 0.0;
  double height = 0.0;
  friend bool operator==(const SceneObject&, const SceneObject&) = default;
};

struct ObjectPose {
  Vec2 position;
  std::optional<double> theta;
  friend bool operator==(const ObjectPose&, const ObjectPose&) = default;
};

struct ObservationFrame {
  double t = 0.0;
  std::map<std::string, ObjectPose, std::less<>> poses;
  friend bool operator==(const ObservationFrame&, const ObservationFrame&) = default;
};

/// Convex quadrangle, corners counterclockwise, in the observer frame.
struct Region {
  std::string id;
  Quad corners;
  friend bool operator==(const Region&, const Region&) = default;

  Vec2 centroid() const;
  double shorter_side() const;
  /// Size of the axis-aligned bounding box of the corners.
  Vec2 extent() const;
};

struct TimedPosition {
  double t = 0.0;
  Vec2 position;
};

/// One observer's view of a dynamic scene. The observer sits at the origin
/// with heading 0; `peer_pose` is its estimate of the other robot.
struct Scene {
  std::string observer;
  Pose2 peer_pose;
  // Heading of the shared world x axis in this observer's frame; the
  // absolute frame of reference is anchored to it.
  double world_theta = 0.0;
  std::vector<SceneObject> objects;
  std::vector<Region> regions;
  std::vector<ObservationFrame> frames;

  friend bool operator==(const Scene&, const Scene&) = default;

  const SceneObject* find_object(std::string_view id) const;
  /// Sets each region object's width and height from its corners.
  void refresh_region_extents();
  const Region* find_region(std::string_view id) const;
  /// The single block of the scene, if present.
  const SceneObject* block() const;
  /// The robot that is not the observer.
  const SceneObject* peer() const;
  /// Observations of one object in time order (frames lacking it skipped).
  std::vector<TimedPosition> track(std::string_view id) const;
  /// Pose of a static object: the observer, its peer, or the first
  /// observation of a box.
  std::optional<Pose2> static_pose(std::string_view id) const;
  /// Largest distance between any two scene landmarks (region corners,
  /// robots, observed object positions).
  double diameter() const;
};

/// Throws SceneError when any type invariant is violated.
void validate_scene(const Scene& scene);

enum class Containment { kInside, kBoundary, kOutside };

inline constexpr double kBoundaryEpsilon = 1e-9;

/// Half-plane test against every edge of a convex region.
Containment point_in_region(Vec2 p, const Region& region, double eps = kBoundaryEpsilon);

/// Removes the moving block's observation from each frame independently with
/// probability `rate`. A frame is dropped when its uniform draw is below
/// `rate`, so drop sets for one seed are nested across rates.
Scene drop_frames(const Scene& scene, double rate, std::uint64_t seed);

}  // namespace slg

#endif  // SLG_SCENE_HPP_
