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

#include "slg/events.hpp"

#include <algorithm>
#include <cstdio>

#include "slg/error.hpp"

namespace slg {

std::string_view to_string(EventKind k) {
  switch (k) {
    case EventKind::kMovesInto: return "moves_into";
    case EventKind::kMovesOutOf: return "moves_out_of";
    case EventKind::kMovesAcross: return "moves_across";
    case EventKind::kMovesAlong: return "moves_along";
  }
  return "?";
}

std::optional<EventKind> parse_event_kind(std::string_view s) {
  for (auto k : {EventKind::kMovesInto, EventKind::kMovesOutOf, EventKind::kMovesAcross, EventKind::kMovesAlong}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

bool event_order(const MovementEvent& a, const MovementEvent& b) {
  if (a.interval.start != b.interval.start) return a.interval.start < b.interval.start;
  if (a.interval.end != b.interval.end) return a.interval.end < b.interval.end;
  if (a.kind != b.kind) return a.kind < b.kind;
  if (a.landmark != b.landmark) return a.landmark < b.landmark;
  return a.undergoer < b.undergoer;
}

bool MovementSequence::contains_type(const MovementEvent& e) const {
  return std::any_of(events.begin(), events.end(), [&](const MovementEvent& x) { return x.same_type(e); });
}

std::string format_sequence(const MovementSequence& seq) {
  std::string out;
  char buf[64];
  for (const auto& e : seq.events) {
    std::snprintf(buf, sizeof buf, "[%.6f, %.6f]", e.interval.start, e.interval.end);
    out += "occurs-in(" + std::string(to_string(e.kind)) + "(" + e.undergoer + ", " + e.landmark + "), " + buf + ")";
    if (e.provenance == Provenance::kHypothesized) out += " % hypothesized";
    out += "\n";
  }
  return out;
}

namespace {

Vec2 boundary_crossing(Vec2 from, Vec2 to, const Region& r, bool entering) {
  auto clip = clip_segment_convex(from, to, r.corners);
  if (!clip) return entering ? to : from;
  const double t = entering ? clip->first : clip->second;
  return from + t * (to - from);
}

// Marks the points of pts[lo..hi] kept by Douglas-Peucker simplification.
void simplify(const std::vector<Vec2>& pts, std::size_t lo, std::size_t hi, double tol, std::vector<bool>& keep) {
  if (hi <= lo + 1) return;
  double worst = -1.0;
  std::size_t at = lo;
  for (std::size_t i = lo + 1; i < hi; ++i) {
    const double d = point_segment_distance(pts[i], pts[lo], pts[hi]);
    if (d > worst) {
      worst = d;
      at = i;
    }
  }
  if (worst <= tol) return;
  keep[at] = true;
  simplify(pts, lo, at, tol, keep);
  simplify(pts, at, hi, tol, keep);
}

double in_region_path_length(const FluentTrack& track, std::size_t k, const EventConfig& cfg) {
  const auto& segs = track.segments;
  const Region& r = *track.region;
  std::vector<Vec2> pts;
  if (k > 0) pts.push_back(boundary_crossing(segs[k - 1].samples.back().position, segs[k].samples.front().position, r, true));
  for (const auto& s : segs[k].samples) pts.push_back(s.position);
  if (k + 1 < segs.size()) {
    pts.push_back(boundary_crossing(segs[k].samples.back().position, segs[k + 1].samples.front().position, r, false));
  }
  if (pts.size() < 2) return 0.0;
  std::vector<bool> keep(pts.size(), false);
  keep.front() = keep.back() = true;
  simplify(pts, 0, pts.size() - 1, cfg.path_tolerance, keep);
  double len = 0.0;
  std::size_t prev = 0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (!keep[i]) continue;
    len += distance(pts[prev], pts[i]);
    prev = i;
  }
  return len;
}

}  // namespace

MovementSequence detect_events(std::span<const FluentTrack> fluents, const EventConfig& cfg) {
  MovementSequence seq;
  for (const FluentTrack& track : fluents) {
    if (track.kind != FluentKind::kTopology || !track.region) continue;
    const auto& segs = track.segments;
    const std::size_t n = segs.size();
    std::vector<std::optional<MovementEvent>> entry(n), exit(n);
    for (std::size_t k = 1; k < n; ++k) {
      const FluentSegment& prev = segs[k - 1];
      const FluentSegment& cur = segs[k];
      if (allen(prev.interval, cur.interval) != AllenRelation::kMeets) continue;
      const TimeInterval iv{prev.samples.back().t, cur.samples.front().t};
      const auto from = std::get<Topology>(prev.value);
      const auto to = std::get<Topology>(cur.value);
      if (from == Topology::kOutside && to == Topology::kInside) {
        entry[k] = MovementEvent{EventKind::kMovesInto, track.subject, track.landmark, iv};
      } else if (from == Topology::kInside && to == Topology::kOutside) {
        exit[k - 1] = MovementEvent{EventKind::kMovesOutOf, track.subject, track.landmark, iv};
      }
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (entry[k]) seq.events.push_back(*entry[k]);
      if (exit[k]) seq.events.push_back(*exit[k]);
      if (std::get<Topology>(segs[k].value) != Topology::kInside) continue;
      if (entry[k] && exit[k]) {
        seq.events.push_back({EventKind::kMovesAcross, track.subject, track.landmark,
                              {entry[k]->interval.start, exit[k]->interval.end}});
      }
      const double threshold = cfg.min_along_ratio * track.region->shorter_side();
      if (in_region_path_length(track, k, cfg) >= threshold) {
        const TimeInterval iv{entry[k] ? entry[k]->interval.start : segs[k].samples.front().t,
                              exit[k] ? exit[k]->interval.end : segs[k].samples.back().t};
        if (iv.start < iv.end) seq.events.push_back({EventKind::kMovesAlong, track.subject, track.landmark, iv});
      }
    }
  }
  std::sort(seq.events.begin(), seq.events.end(), event_order);
  return seq;
}

void SpatialState::set(std::string undergoer, std::string region, Topology value) {
  values_[{std::move(undergoer), std::move(region)}] = value;
}

std::optional<Topology> SpatialState::get(std::string_view undergoer, std::string_view region) const {
  auto it = values_.find({std::string(undergoer), std::string(region)});
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

void SpatialState::mark_disjoint(std::string_view r1, std::string_view r2) {
  if (r2 < r1) std::swap(r1, r2);
  disjoint_.insert({std::string(r1), std::string(r2)});
}

bool SpatialState::disjoint(std::string_view r1, std::string_view r2) const {
  if (r2 < r1) std::swap(r1, r2);
  return disjoint_.contains({std::string(r1), std::string(r2)});
}

namespace {

SpatialState state_at(std::span<const FluentTrack> fluents, bool at_end) {
  SpatialState s;
  std::vector<const FluentTrack*> topo;
  for (const auto& t : fluents) {
    if (t.kind != FluentKind::kTopology || t.segments.empty()) continue;
    const auto& seg = at_end ? t.segments.back() : t.segments.front();
    s.set(t.subject, t.landmark, std::get<Topology>(seg.value));
    topo.push_back(&t);
  }
  for (std::size_t i = 0; i < topo.size(); ++i) {
    for (std::size_t j = i + 1; j < topo.size(); ++j) {
      if (!topo[i]->region || !topo[j]->region) continue;
      const Rcc8 rel = rcc8(*topo[i]->region, *topo[j]->region);
      if (rel == Rcc8::kDc || rel == Rcc8::kEc) s.mark_disjoint(topo[i]->landmark, topo[j]->landmark);
    }
  }
  return s;
}

}  // namespace

SpatialState initial_state(std::span<const FluentTrack> fluents) { return state_at(fluents, false); }
SpatialState final_state(std::span<const FluentTrack> fluents) { return state_at(fluents, true); }

bool poss_at(EventKind kind, std::string_view undergoer, std::string_view landmark, const SpatialState& state) {
  const auto current = state.get(undergoer, landmark);
  if (!current) {
    throw DomainError("no spatial state for (" + std::string(undergoer) + ", " + std::string(landmark) + ")");
  }
  auto blocked_by_other_region = [&] {
    for (const auto& [key, value] : state.values()) {
      if (key.first == undergoer && key.second != landmark && value == Topology::kInside &&
          state.disjoint(key.second, landmark)) {
        return true;
      }
    }
    return false;
  };
  switch (kind) {
    case EventKind::kMovesInto:
    case EventKind::kMovesAcross:
      return *current == Topology::kOutside && !blocked_by_other_region();
    case EventKind::kMovesOutOf:
      return *current == Topology::kInside;
    case EventKind::kMovesAlong:
      return true;
  }
  return false;
}

SpatialState apply_effects(EventKind kind, std::string_view undergoer, std::string_view landmark,
                           const SpatialState& state) {
  if (!poss_at(kind, undergoer, landmark, state)) {
    throw DomainError(std::string(to_string(kind)) + " is not possible in the given state");
  }
  SpatialState next = state;
  switch (kind) {
    case EventKind::kMovesInto:
      next.set(std::string(undergoer), std::string(landmark), Topology::kInside);
      break;
    case EventKind::kMovesOutOf:
    case EventKind::kMovesAcross:
      next.set(std::string(undergoer), std::string(landmark), Topology::kOutside);
      break;
    case EventKind::kMovesAlong:
      break;
  }
  return next;
}

namespace {

struct Hypothesis {
  MovementSequence seq;
  SpatialState state;
  // Regions entered in the chain and not yet left, with the entry time.
  std::map<SpatialState::Key, double> open;
};

}  // namespace

std::vector<MovementSequence> possible_extensions(const MovementSequence& observed, const SpatialState& state,
                                                  int depth) {
  Hypothesis root{observed, state, {}};
  double horizon = 0.0;
  for (const auto& e : observed.events) {
    horizon = std::max(horizon, e.interval.end);
    const SpatialState::Key key{e.undergoer, e.landmark};
    if (e.kind == EventKind::kMovesInto) root.open[key] = e.interval.start;
    if (e.kind == EventKind::kMovesOutOf) root.open.erase(key);
  }

  std::vector<MovementSequence> out{observed};
  std::vector<Hypothesis> frontier{root};
  for (int level = 0; level < depth; ++level) {
    std::vector<Hypothesis> next;
    const TimeInterval slot{horizon + level, horizon + level + 1.0};
    for (const Hypothesis& h : frontier) {
      for (const auto& [key, value] : h.state.values()) {
        for (EventKind kind : {EventKind::kMovesInto, EventKind::kMovesOutOf}) {
          if (!poss_at(kind, key.first, key.second, h.state)) continue;
          Hypothesis child = h;
          child.seq.events.push_back({kind, key.first, key.second, slot, Provenance::kHypothesized});
          child.state = apply_effects(kind, key.first, key.second, h.state);
          if (kind == EventKind::kMovesInto) {
            child.open[key] = slot.start;
          } else if (auto it = child.open.find(key); it != child.open.end()) {
            child.seq.events.push_back(
                {EventKind::kMovesAcross, key.first, key.second, {it->second, slot.end}, Provenance::kHypothesized});
            child.open.erase(it);
          }
          if (std::find(out.begin(), out.end(), child.seq) == out.end()) {
            out.push_back(child.seq);
            next.push_back(std::move(child));
          }
        }
      }
    }
    frontier = std::move(next);
  }
  return out;
}

bool compatible(const MovementEvent& description, const MovementSequence& observed, const SpatialState& state,
                int depth) {
  if (observed.contains_type(description)) return true;
  for (const auto& ext : possible_extensions(observed, state, depth)) {
    if (ext.contains_type(description)) return true;
  }
  return false;
}

}  // namespace slg
