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

#include "slg/qsr.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "slg/error.hpp"

namespace slg {

std::string_view to_string(Topology v) { return v == Topology::kInside ? "inside" : "outside"; }

std::string_view to_string(Rcc8 v) {
  switch (v) {
    case Rcc8::kDc: return "dc";
    case Rcc8::kEc: return "ec";
    case Rcc8::kPo: return "po";
    case Rcc8::kEq: return "eq";
    case Rcc8::kTpp: return "tpp";
    case Rcc8::kNtpp: return "ntpp";
    case Rcc8::kTppi: return "tppi";
    case Rcc8::kNtppi: return "ntppi";
  }
  return "?";
}

std::string_view to_string(Orientation v) {
  switch (v) {
    case Orientation::kL: return "l";
    case Orientation::kR: return "r";
    case Orientation::kI: return "i";
    case Orientation::kS: return "s";
    case Orientation::kE: return "e";
    case Orientation::kF: return "f";
    case Orientation::kB: return "b";
  }
  return "?";
}

std::string_view to_string(AllenRelation v) {
  switch (v) {
    case AllenRelation::kBefore: return "before";
    case AllenRelation::kAfter: return "after";
    case AllenRelation::kDuring: return "during";
    case AllenRelation::kContains: return "contains";
    case AllenRelation::kStarts: return "starts";
    case AllenRelation::kStartedBy: return "started_by";
    case AllenRelation::kFinishes: return "finishes";
    case AllenRelation::kFinishedBy: return "finished_by";
    case AllenRelation::kOverlaps: return "overlaps";
    case AllenRelation::kOverlappedBy: return "overlapped_by";
    case AllenRelation::kMeets: return "meets";
    case AllenRelation::kMetBy: return "met_by";
    case AllenRelation::kEqual: return "equal";
  }
  return "?";
}

Rcc8 converse(Rcc8 r) {
  switch (r) {
    case Rcc8::kTpp: return Rcc8::kTppi;
    case Rcc8::kNtpp: return Rcc8::kNtppi;
    case Rcc8::kTppi: return Rcc8::kTpp;
    case Rcc8::kNtppi: return Rcc8::kNtpp;
    default: return r;
  }
}

AllenRelation converse(AllenRelation r) {
  switch (r) {
    case AllenRelation::kBefore: return AllenRelation::kAfter;
    case AllenRelation::kAfter: return AllenRelation::kBefore;
    case AllenRelation::kDuring: return AllenRelation::kContains;
    case AllenRelation::kContains: return AllenRelation::kDuring;
    case AllenRelation::kStarts: return AllenRelation::kStartedBy;
    case AllenRelation::kStartedBy: return AllenRelation::kStarts;
    case AllenRelation::kFinishes: return AllenRelation::kFinishedBy;
    case AllenRelation::kFinishedBy: return AllenRelation::kFinishes;
    case AllenRelation::kOverlaps: return AllenRelation::kOverlappedBy;
    case AllenRelation::kOverlappedBy: return AllenRelation::kOverlaps;
    case AllenRelation::kMeets: return AllenRelation::kMetBy;
    case AllenRelation::kMetBy: return AllenRelation::kMeets;
    case AllenRelation::kEqual: return AllenRelation::kEqual;
  }
  return r;
}

Topology topology_at(Vec2 p, const Region& region) {
  return point_in_region(p, region) == Containment::kInside ? Topology::kInside : Topology::kOutside;
}

namespace {

bool contained_in(const Region& inner, const Region& outer, double eps, bool& touches) {
  touches = false;
  for (const Vec2& v : inner.corners) {
    const Containment c = point_in_region(v, outer, eps);
    if (c == Containment::kOutside) return false;
    if (c == Containment::kBoundary) touches = true;
  }
  return true;
}

// Smallest overlap of the two projections over all edge normals; negative
// when some axis separates the polygons.
double min_projection_overlap(const Region& a, const Region& b) {
  double min_overlap = std::numeric_limits<double>::infinity();
  for (const Region* owner : {&a, &b}) {
    for (std::size_t i = 0; i < owner->corners.size(); ++i) {
      const Vec2 e = owner->corners[(i + 1) % owner->corners.size()] - owner->corners[i];
      const Vec2 axis = (1.0 / norm(e)) * Vec2{-e.y, e.x};
      auto project = [&](const Region& r) {
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (const Vec2& p : r.corners) {
          lo = std::min(lo, dot(p, axis));
          hi = std::max(hi, dot(p, axis));
        }
        return std::pair{lo, hi};
      };
      const auto [alo, ahi] = project(a);
      const auto [blo, bhi] = project(b);
      min_overlap = std::min(min_overlap, std::min(ahi, bhi) - std::max(alo, blo));
    }
  }
  return min_overlap;
}

}  // namespace

Rcc8 rcc8(const Region& a, const Region& b, double eps) {
  bool a_touches = false, b_touches = false;
  const bool a_in_b = contained_in(a, b, eps, a_touches);
  const bool b_in_a = contained_in(b, a, eps, b_touches);
  if (a_in_b && b_in_a) return Rcc8::kEq;
  if (a_in_b) return a_touches ? Rcc8::kTpp : Rcc8::kNtpp;
  if (b_in_a) return b_touches ? Rcc8::kTppi : Rcc8::kNtppi;
  const double overlap = min_projection_overlap(a, b);
  if (overlap < -eps) return Rcc8::kDc;
  if (overlap <= eps) return Rcc8::kEc;
  return Rcc8::kPo;
}

Orientation lr_orientation(Vec2 origin, Vec2 reference, Vec2 target, double eps) {
  const Vec2 d = reference - origin;
  const double len = norm(d);
  if (len == 0.0) throw DomainError("LR orientation needs distinct origin and reference points");
  const Vec2 v = target - origin;
  const double side = cross(d, v) / len;
  if (side > eps) return Orientation::kL;
  if (side < -eps) return Orientation::kR;
  const double t = dot(v, d) / (len * len);
  if (t < -eps) return Orientation::kB;
  if (t <= eps) return Orientation::kS;
  if (t < 1.0 - eps) return Orientation::kI;
  if (t <= 1.0 + eps) return Orientation::kE;
  return Orientation::kF;
}

AllenRelation allen(const TimeInterval& a, const TimeInterval& b, double eps) {
  auto cmp = [eps](double x, double y) { return std::abs(x - y) <= eps ? 0 : (x < y ? -1 : 1); };
  const int ss = cmp(a.start, b.start);
  const int ee = cmp(a.end, b.end);
  const int es = cmp(a.end, b.start);
  const int se = cmp(a.start, b.end);
  if (es < 0) return AllenRelation::kBefore;
  if (es == 0) return AllenRelation::kMeets;
  if (se > 0) return AllenRelation::kAfter;
  if (se == 0) return AllenRelation::kMetBy;
  if (ss == 0 && ee == 0) return AllenRelation::kEqual;
  if (ss == 0) return ee < 0 ? AllenRelation::kStarts : AllenRelation::kStartedBy;
  if (ee == 0) return ss > 0 ? AllenRelation::kFinishes : AllenRelation::kFinishedBy;
  if (ss > 0 && ee < 0) return AllenRelation::kDuring;
  if (ss < 0 && ee > 0) return AllenRelation::kContains;
  return ss < 0 ? AllenRelation::kOverlaps : AllenRelation::kOverlappedBy;
}

std::string to_string(const QualValue& v) {
  return std::visit([](auto x) { return std::string(to_string(x)); }, v);
}

namespace {

double nominal_spacing(const Scene& scene) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < scene.frames.size(); ++i) {
    best = std::min(best, scene.frames[i].t - scene.frames[i - 1].t);
  }
  return std::isfinite(best) ? best : 1.0 / 30.0;
}

template <typename Classify>
std::vector<FluentSegment> segment_track(const std::vector<TimedPosition>& track, double half_frame,
                                         Classify classify) {
  std::vector<FluentSegment> segments;
  for (const TimedPosition& obs : track) {
    const QualValue v = classify(obs.position);
    if (segments.empty() || segments.back().value != v) {
      if (!segments.empty()) {
        const double boundary = 0.5 * (segments.back().samples.back().t + obs.t);
        segments.back().interval.end = boundary;
        segments.push_back({v, {boundary, obs.t}, {}});
      } else {
        segments.push_back({v, {obs.t - half_frame, obs.t}, {}});
      }
    }
    segments.back().samples.push_back(obs);
  }
  if (!segments.empty()) segments.back().interval.end = segments.back().samples.back().t + half_frame;
  return segments;
}

}  // namespace

std::vector<FluentTrack> extract_fluents(const Scene& scene) {
  std::vector<FluentTrack> tracks;
  const SceneObject* block = scene.block();
  if (block == nullptr) return tracks;
  const std::vector<TimedPosition> track = scene.track(block->id);
  if (track.empty()) return tracks;
  const double half_frame = 0.5 * nominal_spacing(scene);

  for (const Region& r : scene.regions) {
    FluentTrack ft;
    ft.subject = block->id;
    ft.landmark = r.id;
    ft.kind = FluentKind::kTopology;
    ft.region = r;
    ft.segments = segment_track(track, half_frame, [&](Vec2 p) { return QualValue{topology_at(p, r)}; });
    tracks.push_back(std::move(ft));
  }
  for (const SceneObject& o : scene.objects) {
    if (o.id == scene.observer || (o.cls != ObjectClass::kRobot && o.cls != ObjectClass::kBox)) continue;
    const auto pose = scene.static_pose(o.id);
    if (!pose || norm(pose->position) == 0.0) continue;
    FluentTrack ft;
    ft.subject = block->id;
    ft.landmark = o.id;
    ft.origin = scene.observer;
    ft.kind = FluentKind::kOrientation;
    const Vec2 reference = pose->position;
    ft.segments = segment_track(track, half_frame,
                                [&](Vec2 p) { return QualValue{lr_orientation(Vec2{}, reference, p)}; });
    tracks.push_back(std::move(ft));
  }
  return tracks;
}

std::string format_fluents(const std::vector<FluentTrack>& tracks) {
  std::string out;
  char buf[64];
  for (const auto& t : tracks) {
    const std::string head = t.kind == FluentKind::kTopology
                                 ? "topology(" + t.subject + ", " + t.landmark + ")"
                                 : "orientation(" + t.origin + ", " + t.landmark + ", " + t.subject + ")";
    for (const auto& s : t.segments) {
      std::snprintf(buf, sizeof buf, "[%.6f, %.6f]", s.interval.start, s.interval.end);
      out += "holds-in(" + head + ", " + to_string(s.value) + ", " + buf + ")\n";
    }
  }
  return out;
}

}  // namespace slg
