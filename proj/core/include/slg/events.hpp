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

#ifndef SLG_EVENTS_HPP_
#define SLG_EVENTS_HPP_

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "slg/qsr.hpp"

namespace slg {

/// Declaration order is the tie-break order of simultaneous events.
enum class EventKind { kMovesInto, kMovesOutOf, kMovesAcross, kMovesAlong };
enum class Provenance { kObserved, kHypothesized };

std::string_view to_string(EventKind k);
std::optional<EventKind> parse_event_kind(std::string_view s);

struct MovementEvent {
  EventKind kind = EventKind::kMovesInto;
  std::string undergoer;
  std::string landmark;
  TimeInterval interval;
  Provenance provenance = Provenance::kObserved;

  /// Same kind, undergoer and landmark; intervals and provenance ignored.
  bool same_type(const MovementEvent& other) const {
    return kind == other.kind && undergoer == other.undergoer && landmark == other.landmark;
  }
  friend bool operator==(const MovementEvent&, const MovementEvent&) = default;
};

/// Orders by interval start, then end, then kind, then landmark.
bool event_order(const MovementEvent& a, const MovementEvent& b);

/// The temporally ordered movement sequence of a scene.
struct MovementSequence {
  std::vector<MovementEvent> events;
  friend bool operator==(const MovementSequence&, const MovementSequence&) = default;

  bool contains_type(const MovementEvent& e) const;
};

/// `occurs-in(kind(undergoer, landmark), [start, end])`, one event per line.
std::string format_sequence(const MovementSequence& seq);

struct EventConfig {
  /// Along: in-region path length at least this multiple of the region's
  /// shorter side.
  double min_along_ratio = 1.5;
  /// Path length is measured on the in-region track simplified to this
  /// tolerance (Douglas-Peucker), so per-frame jitter does not inflate it.
  double path_tolerance = 0.05;
};

MovementSequence detect_events(std::span<const FluentTrack> fluents, const EventConfig& config = {});

/// Topology of every (undergoer, region) pair, plus which regions are known
/// to be disjoint; a block cannot enter a region while inside a region
/// disjoint from it.
class SpatialState {
 public:
  using Key = std::pair<std::string, std::string>;

  void set(std::string undergoer, std::string region, Topology value);
  std::optional<Topology> get(std::string_view undergoer, std::string_view region) const;
  void mark_disjoint(std::string_view r1, std::string_view r2);
  bool disjoint(std::string_view r1, std::string_view r2) const;

  const std::map<Key, Topology>& values() const { return values_; }
  friend bool operator==(const SpatialState&, const SpatialState&) = default;
  friend auto operator<=>(const SpatialState&, const SpatialState&) = default;

 private:
  std::map<Key, Topology> values_;
  std::set<Key> disjoint_;
};

/// State at the first (or last) observation of each topology track. Region
/// pairs whose RCC8 relation is dc or ec are marked disjoint.
SpatialState initial_state(std::span<const FluentTrack> fluents);
SpatialState final_state(std::span<const FluentTrack> fluents);

/// Spatial preconditions. Throws DomainError for an unknown pair.
bool poss_at(EventKind kind, std::string_view undergoer, std::string_view landmark, const SpatialState& state);

/// Effects of an event on the state. Throws DomainError when the
/// precondition does not hold.
SpatialState apply_effects(EventKind kind, std::string_view undergoer, std::string_view landmark,
                           const SpatialState& state);

/// Observed sequence followed by every chain of up to `depth` hypothesized
/// entries and exits that are possible from `state`. An exit from a region
/// whose entry is already in the chain adds a hypothesized crossing without
/// using depth. Depth 0 yields only the observed sequence.
std::vector<MovementSequence> possible_extensions(const MovementSequence& observed, const SpatialState& state,
                                                  int depth);

/// True when the description's kind, undergoer and landmark appear in the
/// observed sequence or in some possible extension of it.
bool compatible(const MovementEvent& description, const MovementSequence& observed, const SpatialState& state,
                int depth);

inline constexpr int kDefaultHypothesisDepth = 3;

}  // namespace slg

#endif  // SLG_EVENTS_HPP_
