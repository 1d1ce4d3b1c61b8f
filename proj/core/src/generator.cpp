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

#include "slg/generator.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <string>

#include "slg/error.hpp"
#include "slg/rng.hpp"

namespace slg {

std::string_view to_string(TrajectoryFamily f) {
  switch (f) {
    case TrajectoryFamily::kCross: return "cross";
    case TrajectoryFamily::kEnter: return "enter";
    case TrajectoryFamily::kStopNearBoundary: return "stop-near-boundary";
    case TrajectoryFamily::kAlong: return "along";
    case TrajectoryFamily::kStationary: return "stationary";
  }
  return "?";
}

std::optional<TrajectoryFamily> parse_trajectory_family(std::string_view s) {
  for (auto f : {TrajectoryFamily::kCross, TrajectoryFamily::kEnter, TrajectoryFamily::kStopNearBoundary,
                 TrajectoryFamily::kAlong, TrajectoryFamily::kStationary}) {
    if (to_string(f) == s) return f;
  }
  return std::nullopt;
}

GenerationConfig GenerationConfig::without_deviation() const {
  GenerationConfig c = *this;
  c.noise_std = 0.0;
  c.region_noise_std = 0.0;
  c.peer_position_std = 0.0;
  c.peer_theta_std = 0.0;
  return c;
}

namespace {

constexpr double kPi = std::numbers::pi;

struct Clip {
  double t0 = 0.0;
  double t1 = 0.0;
  bool hit = false;
};

Clip clip_segment(Vec2 s, Vec2 e, const Quad& q) {
  auto r = clip_segment_convex(s, e, q);
  if (!r || !(r->second > r->first)) return {};
  return {r->first, r->second, true};
}

// Signed distance to the boundary, positive inside.
double signed_boundary_distance(Vec2 p, const Quad& q) {
  double inside = std::numeric_limits<double>::infinity();
  bool outside = false;
  double outside_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < q.size(); ++i) {
    const Vec2 a = q[i], b = q[(i + 1) % q.size()];
    const double sd = cross(b - a, p - a) / distance(a, b);
    inside = std::min(inside, sd);
    if (sd < 0.0) outside = true;
    outside_d = std::min(outside_d, point_segment_distance(p, a, b));
  }
  return outside ? -outside_d : inside;
}

double quad_distance(const Quad& a, const Quad& b) {
  for (const Vec2& p : a) {
    if (signed_boundary_distance(p, b) >= 0.0) return 0.0;
  }
  for (const Vec2& p : b) {
    if (signed_boundary_distance(p, a) >= 0.0) return 0.0;
  }
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      d = std::min(d, segment_segment_distance(a[i], a[(i + 1) % 4], b[j], b[(j + 1) % 4]));
    }
  }
  return d;
}

double segment_quad_distance(Vec2 s, Vec2 e, const Quad& q) {
  if (clip_segment(s, e, q).hit) return 0.0;
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < 4; ++i) d = std::min(d, segment_segment_distance(s, e, q[i], q[(i + 1) % 4]));
  return d;
}

Quad make_rect(Vec2 center, double along_len, double across_len, double heading) {
  const Vec2 u = unit_from_angle(heading);
  const Vec2 n = unit_from_angle(heading + kPi / 2.0);
  const double h = along_len / 2.0, w = across_len / 2.0;
  return {center - h * u - w * n, center + h * u - w * n, center + h * u + w * n, center - h * u + w * n};
}

YCbCr noisy_color(ColorCategory c, Rng& rng) {
  YCbCr p = color_prototype(c);
  auto jitter = [&](double v) { return std::clamp(v + rng.normal(0.0, 6.0), 0.0, 255.0); };
  return {jitter(p.y), jitter(p.cb), jitter(p.cr)};
}

TrajectoryFamily draw_family(const GenerationConfig& cfg, Rng& rng) {
  if (cfg.family) return *cfg.family;
  const double total = cfg.weight_cross + cfg.weight_enter + cfg.weight_stop_near_boundary + cfg.weight_along;
  if (!(total > 0.0)) throw GenerationError("trajectory family weights must sum to a positive value");
  double u = rng.uniform() * total;
  if ((u -= cfg.weight_cross) < 0.0) return TrajectoryFamily::kCross;
  if ((u -= cfg.weight_enter) < 0.0) return TrajectoryFamily::kEnter;
  if ((u -= cfg.weight_stop_near_boundary) < 0.0) return TrajectoryFamily::kStopNearBoundary;
  return TrajectoryFamily::kAlong;
}

struct Layout {
  std::vector<Quad> regions;  // on-path regions first, in visiting order
  Vec2 start;
  Vec2 stop;
  std::optional<Pose2> box;
};

// Proposes a layout; returns nullopt when the draw violates a constraint.
std::optional<Layout> propose_layout(TrajectoryFamily family, int n_regions, int on_path, Rng& rng) {
  Layout out;
  const double alpha = rng.uniform(-kPi, kPi);
  const Vec2 u = unit_from_angle(alpha);
  const Vec2 n = unit_from_angle(alpha + kPi / 2.0);
  const Vec2 center{1.0 + rng.uniform(-0.15, 0.15), rng.uniform(-0.15, 0.15)};
  double length = rng.uniform(1.3, 1.6);

  if (family == TrajectoryFamily::kAlong) {
    const double a = rng.uniform(0.18, 0.24);
    const double b = a * rng.uniform(2.6, 3.0);
    length = std::max(length, b + 0.6);
    const Vec2 c = center + rng.uniform(-0.05, 0.05) * u + rng.uniform(-0.02, 0.02) * n;
    out.regions.push_back(make_rect(c, b, a, alpha + rng.uniform(-0.08, 0.08)));
  } else {
    const double lo = 0.22, hi = 0.88;
    const double slot = (hi - lo) / on_path;
    for (int i = 0; i < on_path; ++i) {
      const double s = (lo + slot * (i + 0.5) + rng.uniform(-0.04, 0.04)) * length - length / 2.0;
      const double a = rng.uniform(0.2, 0.3);
      const double b = a * rng.uniform(1.0, 1.1);
      const Vec2 c = center + s * u + rng.uniform(-0.03, 0.03) * n;
      out.regions.push_back(make_rect(c, a, b, alpha + rng.uniform(-0.25, 0.25)));
    }
  }
  const int placed = static_cast<int>(out.regions.size());
  for (int i = placed; i < n_regions; ++i) {
    const double side = rng.bernoulli(0.5) ? 1.0 : -1.0;
    const Vec2 c = center + rng.uniform(-0.4, 0.4) * length * u + side * rng.uniform(0.42, 0.7) * n;
    const double a = rng.uniform(0.2, 0.3);
    out.regions.push_back(make_rect(c, a, a * rng.uniform(1.0, 1.1), rng.uniform(-kPi, kPi)));
  }

  out.start = center - (length / 2.0) * u;
  Vec2 end = center + (length / 2.0) * u;
  const Quad& last = out.regions.empty() ? Quad{} : out.regions[static_cast<std::size_t>(placed) - 1];
  switch (family) {
    case TrajectoryFamily::kEnter: {
      Vec2 c;
      for (const Vec2& p : last) c = c + 0.25 * p;
      end = c + rng.uniform(-0.03, 0.03) * u + rng.uniform(-0.03, 0.03) * n;
      break;
    }
    case TrajectoryFamily::kStopNearBoundary: {
      const Clip clip = clip_segment(out.start, end, last);
      if (!clip.hit) return std::nullopt;
      const Vec2 exit = out.start + clip.t1 * (end - out.start);
      end = exit + rng.uniform(-0.02, 0.02) * u;
      break;
    }
    case TrajectoryFamily::kStationary:
      end = out.start;
      break;
    default:
      break;
  }
  out.stop = end;

  // Pairwise separation of regions.
  for (std::size_t i = 0; i < out.regions.size(); ++i) {
    for (std::size_t j = i + 1; j < out.regions.size(); ++j) {
      if (quad_distance(out.regions[i], out.regions[j]) < 0.06) return std::nullopt;
    }
  }
  for (const Quad& q : out.regions) {
    if (signed_boundary_distance(out.start, q) > -0.05) return std::nullopt;
  }
  const bool moving = family != TrajectoryFamily::kStationary;
  for (int i = 0; i < static_cast<int>(out.regions.size()); ++i) {
    const Quad& q = out.regions[static_cast<std::size_t>(i)];
    const double short_side = std::min(distance(q[0], q[1]), distance(q[1], q[2]));
    if (i >= placed || !moving) {
      if (segment_quad_distance(out.start, out.stop, q) < 0.08) return std::nullopt;
      continue;
    }
    const Clip clip = clip_segment(out.start, out.stop, q);
    if (!clip.hit) return std::nullopt;
    const double chord = (clip.t1 - clip.t0) * distance(out.start, out.stop);
    const bool is_last = i == placed - 1;
    if (family == TrajectoryFamily::kAlong) {
      if (chord < 2.0 * short_side) return std::nullopt;
    } else if (!(is_last && family != TrajectoryFamily::kCross) && chord > 1.3 * short_side) {
      return std::nullopt;
    }
    if (!is_last && clip.t1 >= 1.0) return std::nullopt;
    if (family == TrajectoryFamily::kCross && clip.t1 > 0.97) return std::nullopt;
  }
  if (family == TrajectoryFamily::kEnter && signed_boundary_distance(out.stop, last) < 0.04) return std::nullopt;

  if (rng.bernoulli(0.5)) {
    const double side = rng.bernoulli(0.5) ? 1.0 : -1.0;
    const Vec2 c = center + rng.uniform(-0.3, 0.3) * length * u + side * rng.uniform(0.35, 0.6) * n;
    for (const Quad& q : out.regions) {
      if (signed_boundary_distance(c, q) > -0.08) return std::nullopt;
    }
    if (point_segment_distance(c, out.start, out.stop) < 0.2) return std::nullopt;
    out.box = Pose2{c, rng.uniform(-kPi, kPi)};
  }
  return out;
}

}  // namespace

Scene observe_exactly(const Scene& world, std::string_view observer_id, const Pose2& observer_pose,
                      const Pose2& peer_pose_world) {
  Scene s = world;
  s.observer = std::string(observer_id);
  s.peer_pose = observer_pose.inverse().compose(peer_pose_world);
  s.world_theta = wrap_angle(world.world_theta - observer_pose.theta);
  for (auto& r : s.regions) {
    for (auto& c : r.corners) c = observer_pose.apply_inverse(c);
  }
  for (auto& f : s.frames) {
    for (auto& [id, pose] : f.poses) {
      pose.position = observer_pose.apply_inverse(pose.position);
      if (pose.theta) pose.theta = wrap_angle(*pose.theta - observer_pose.theta);
    }
  }
  s.refresh_region_extents();
  return s;
}

namespace {

Scene add_noise(Scene s, const GenerationConfig& cfg, std::string_view block_id, Rng& rng) {
  for (auto& r : s.regions) {
    const Quad exact = r.corners;
    for (int attempt = 0; attempt < 16; ++attempt) {
      Quad q = exact;
      for (auto& c : q) c = c + Vec2{rng.normal(0.0, cfg.region_noise_std), rng.normal(0.0, cfg.region_noise_std)};
      if (is_strictly_convex_ccw(q)) {
        r.corners = q;
        break;
      }
    }
  }
  s.refresh_region_extents();
  for (auto& f : s.frames) {
    for (auto& [id, pose] : f.poses) {
      pose.position = pose.position + Vec2{rng.normal(0.0, cfg.noise_std), rng.normal(0.0, cfg.noise_std)};
      if (pose.theta && id != block_id) pose.theta = wrap_angle(*pose.theta + rng.normal(0.0, cfg.peer_theta_std));
    }
  }
  s.peer_pose.position =
      s.peer_pose.position + Vec2{rng.normal(0.0, cfg.peer_position_std), rng.normal(0.0, cfg.peer_position_std)};
  s.peer_pose.theta = wrap_angle(s.peer_pose.theta + rng.normal(0.0, cfg.peer_theta_std));
  return s;
}

}  // namespace

ScenePair generate_scene_pair(const GenerationConfig& cfg, std::uint64_t seed) {
  if (cfg.min_regions < 0 || cfg.max_regions < cfg.min_regions) throw GenerationError("invalid region count range");
  if (cfg.max_regions > static_cast<int>(kAllColors.size())) {
    throw GenerationError("at most " + std::to_string(kAllColors.size()) + " regions (one per colour)");
  }
  if (cfg.min_frames < 2 || cfg.max_frames < cfg.min_frames) throw GenerationError("invalid frame count range");
  if (!(cfg.frame_dt > 0.0)) throw GenerationError("frame_dt must be positive");
  if (cfg.noise_std < 0.0 || cfg.region_noise_std < 0.0 || cfg.peer_position_std < 0.0 || cfg.peer_theta_std < 0.0) {
    throw GenerationError("noise parameters must be non-negative");
  }

  Rng rng(derive_seed(seed, 0));
  const TrajectoryFamily family = draw_family(cfg, rng);
  const int n_regions = static_cast<int>(rng.uniform_int(cfg.min_regions, cfg.max_regions));
  const bool needs_region = family != TrajectoryFamily::kStationary;
  if (needs_region && n_regions == 0) {
    throw GenerationError(std::string("trajectory family '") + std::string(to_string(family)) +
                          "' requires at least one region");
  }
  int on_path = family == TrajectoryFamily::kAlong ? 1 : 0;
  if (family != TrajectoryFamily::kAlong && needs_region) {
    on_path = cfg.regions_on_path.value_or(static_cast<int>(rng.uniform_int(1, n_regions)));
    if (on_path < 1 || on_path > n_regions) throw GenerationError("regions_on_path out of range");
  }
  const int n_frames = static_cast<int>(rng.uniform_int(cfg.min_frames, cfg.max_frames));

  const Pose2 robot_a{};
  const Pose2 robot_b{{2.0 + rng.uniform(-0.2, 0.2), rng.uniform(-0.3, 0.3)},
                      wrap_angle(kPi + rng.uniform(-0.3, 0.3))};

  std::optional<Layout> layout;
  for (int attempt = 0; attempt < 500 && !layout; ++attempt) {
    layout = propose_layout(family, n_regions, on_path, rng);
  }
  if (!layout) throw GenerationError("no valid layout found for this configuration");

  Scene world;
  world.observer = "robot-1";
  world.peer_pose = robot_b;
  world.world_theta = 0.0;
  world.objects.push_back({"robot-1", ObjectClass::kRobot, ColorCategory::kBlue,
                           color_prototype(ColorCategory::kBlue), 0.3, 0.2});
  world.objects.push_back({"robot-2", ObjectClass::kRobot, ColorCategory::kBlue,
                           color_prototype(ColorCategory::kBlue), 0.3, 0.2});
  const auto block_color = kAllColors[static_cast<std::size_t>(rng.uniform_int(0, 3))];
  const std::string block_id = "obj-" + std::to_string(rng.uniform_int(100, 999));
  world.objects.push_back({block_id, ObjectClass::kBlock, block_color, noisy_color(block_color, rng), 0.05, 0.05});

  std::array<ColorCategory, 4> palette = kAllColors;
  for (std::size_t i = palette.size() - 1; i > 0; --i) {
    std::swap(palette[i], palette[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i)))]);
  }
  const auto first_region = rng.uniform_int(10, 80);
  for (std::size_t i = 0; i < layout->regions.size(); ++i) {
    const std::string id = "reg-" + std::to_string(first_region + static_cast<std::int64_t>(i));
    const Quad& q = layout->regions[i];
    const Region region{id, q};
    world.objects.push_back({id, ObjectClass::kRegion, palette[i], noisy_color(palette[i], rng), region.extent().x,
                             region.extent().y});
    world.regions.push_back(region);
  }
  std::string box_id;
  if (layout->box && rng.uniform() < cfg.box_probability) {
    box_id = "box-" + std::to_string(rng.uniform_int(100, 999));
    const auto color = kAllColors[static_cast<std::size_t>(rng.uniform_int(0, 3))];
    world.objects.push_back({box_id, ObjectClass::kBox, color, noisy_color(color, rng), 0.1, 0.1});
  }

  // The block travels at constant speed, then rests for the remaining frames.
  const double travel_fraction = rng.uniform(0.7, 0.9);
  const int travel_frames = std::max(2, static_cast<int>(travel_fraction * n_frames));
  for (int i = 0; i < n_frames; ++i) {
    ObservationFrame f;
    f.t = i * cfg.frame_dt;
    const double s = std::min(1.0, static_cast<double>(i) / (travel_frames - 1));
    f.poses[block_id] = ObjectPose{layout->start + s * (layout->stop - layout->start), std::nullopt};
    if (!box_id.empty()) f.poses[box_id] = ObjectPose{layout->box->position, layout->box->theta};
    world.frames.push_back(std::move(f));
  }
  // Regions last, the order scene documents use.
  std::stable_partition(world.objects.begin(), world.objects.end(),
                        [](const SceneObject& o) { return o.cls != ObjectClass::kRegion; });
  validate_scene(world);

  ScenePair pair;
  pair.truth = {world, robot_a, robot_b, family};
  Rng noise_a(derive_seed(seed, 1));
  Rng noise_b(derive_seed(seed, 2));
  pair.a = add_noise(observe_exactly(world, "robot-1", robot_a, robot_b), cfg, block_id, noise_a);
  pair.b = add_noise(observe_exactly(world, "robot-2", robot_b, robot_a), cfg, block_id, noise_b);
  return pair;
}

}  // namespace slg
