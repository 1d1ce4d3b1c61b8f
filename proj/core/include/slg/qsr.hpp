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

#ifndef SLG_QSR_HPP_
#define SLG_QSR_HPP_

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "slg/scene.hpp"

namespace slg {

/// Point-region topology. Point queries only ever produce these two values;
/// boundary contact counts as outside.
enum class Topology { kOutside, kInside };

enum class Rcc8 { kDc, kEc, kPo, kEq, kTpp, kNtpp, kTppi, kNtppi };

/// LR calculus: left, right, and the five positions on the oriented line
/// (back, start, interior, end, front).
enum class Orientation { kL, kR, kI, kS, kE, kF, kB };

enum class AllenRelation {
  kBefore, kAfter, kDuring, kContains, kStarts, kStartedBy, kFinishes,
  kFinishedBy, kOverlaps, kOverlappedBy, kMeets, kMetBy, kEqual,
};

inline constexpr std::array<AllenRelation, 13> kAllAllenRelations = {
    AllenRelation::kBefore,    AllenRelation::kAfter,      AllenRelation::kDuring,   AllenRelation::kContains,
    AllenRelation::kStarts,    AllenRelation::kStartedBy,  AllenRelation::kFinishes, AllenRelation::kFinishedBy,
    AllenRelation::kOverlaps,  AllenRelation::kOverlappedBy, AllenRelation::kMeets,  AllenRelation::kMetBy,
    AllenRelation::kEqual};

std::string_view to_string(Topology v);
std::string_view to_string(Rcc8 v);
std::string_view to_string(Orientation v);
std::string_view to_string(AllenRelation v);

Rcc8 converse(Rcc8 r);
AllenRelation converse(AllenRelation r);

struct TimeInterval {
  double start = 0.0;
  double end = 0.0;
  friend bool operator==(const TimeInterval&, const TimeInterval&) = default;
};

/// Half the nominal 30 fps frame spacing.
inline constexpr double kTemporalEpsilon = 1.0 / 60.0;

Topology topology_at(Vec2 p, const Region& region);

/// Region-region RCC8 over convex quadrangles. Containment comes from vertex
/// tests; overlap versus contact versus separation from projections onto the
/// edge normals of both polygons.
Rcc8 rcc8(const Region& a, const Region& b, double eps = kBoundaryEpsilon);

/// Throws DomainError when origin and reference coincide.
Orientation lr_orientation(Vec2 origin, Vec2 reference, Vec2 target, double eps = 1e-9);

/// Endpoints closer than `eps` count as equal.
AllenRelation allen(const TimeInterval& a, const TimeInterval& b, double eps = kTemporalEpsilon);

enum class FluentKind { kTopology, kOrientation };

using QualValue = std::variant<Topology, Orientation>;
std::string to_string(const QualValue& v);

struct FluentSegment {
  QualValue value;
  TimeInterval interval;
  /// The observations that support this segment, in time order.
  std::vector<TimedPosition> samples;
};

/// Maximal intervals over which one qualitative relation holds. Interior
/// boundaries sit midway between the last observation of one value and the
/// first of the next, so adjacent segments meet; the outer ends are padded by
/// half a frame.
struct FluentTrack {
  std::string subject;
  std::string landmark;
  /// Origin of the oriented line for orientation fluents (the observer).
  std::string origin;
  FluentKind kind = FluentKind::kTopology;
  std::vector<FluentSegment> segments;
  /// Landmark geometry for topology fluents.
  std::optional<Region> region;
};

/// Topology tracks of the block against every region, then orientation
/// tracks of the block against the line from the observer to each other
/// robot or box. Missing observations are bridged. Empty when the block is
/// never observed.
std::vector<FluentTrack> extract_fluents(const Scene& scene);

/// One line per segment: `holds-in(topology(obj, reg), inside, [t0, t1])`.
std::string format_fluents(const std::vector<FluentTrack>& tracks);

}  // namespace slg

#endif  // SLG_QSR_HPP_
