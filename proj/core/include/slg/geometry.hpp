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

#ifndef SLG_GEOMETRY_HPP_
#define SLG_GEOMETRY_HPP_

#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <utility>

namespace slg {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2 a, Vec2 b) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }
inline Vec2 unit_from_angle(double theta) { return {std::cos(theta), std::sin(theta)}; }
inline Vec2 rotate(Vec2 a, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return {c * a.x - s * a.y, s * a.x + c * a.y};
}

/// Wraps an angle into (-pi, pi].
double wrap_angle(double theta);

/// Rigid 2-D transform: a pose (position + heading) of one frame expressed in
/// another. `apply` maps points from the local frame into the parent frame.
struct Pose2 {
  Vec2 position;
  double theta = 0.0;

  Vec2 apply(Vec2 local) const { return position + rotate(local, theta); }
  Vec2 apply_inverse(Vec2 parent) const { return rotate(parent - position, -theta); }
  Pose2 inverse() const;
  Pose2 compose(const Pose2& child) const;
  friend bool operator==(const Pose2&, const Pose2&) = default;
};

using Quad = std::array<Vec2, 4>;

/// Twice the signed area; positive for counterclockwise rings.
double signed_area2(std::span<const Vec2> ring);

/// True when every consecutive vertex triple turns left by more than `eps`.
bool is_strictly_convex_ccw(std::span<const Vec2> ring, double eps = 1e-12);

/// Distance from `p` to the closed segment [a, b].
double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);

/// Distance between two closed segments (zero when they intersect).
double segment_segment_distance(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1);

/// Parameter range [t0, t1] of the segment s + t (e - s), t in [0, 1], lying
/// inside a convex counterclockwise ring (Cyrus-Beck). Empty when it misses.
std::optional<std::pair<double, double>> clip_segment_convex(Vec2 s, Vec2 e, std::span<const Vec2> ring);

}  // namespace slg

#endif  // SLG_GEOMETRY_HPP_
