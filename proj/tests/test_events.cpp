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

#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "slg/error.hpp"
#include "slg/events.hpp"
#include "slg/generator.hpp"
#include "slg/rng.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace slg;
using slg::testing::build_scene;

namespace {

using Signature = std::multiset<std::pair<EventKind, std::string>>;

Signature signature(const MovementSequence& seq) {
  Signature out;
  for (const auto& e : seq.events) out.emplace(e.kind, e.landmark);
  return out;
}

MovementEvent event(EventKind k, const std::string& landmark, Provenance p = Provenance::kObserved) {
  return {k, "obj-1", landmark, {0.0, 1.0}, p};
}

SpatialState state(std::initializer_list<std::pair<std::string, Topology>> values) {
  SpatialState s;
  for (const auto& [r, v] : values) s.set("obj-1", r, v);
  return s;
}

bool has_type(const std::vector<MovementSequence>& xs, EventKind k, const std::string& landmark) {
  for (const auto& seq : xs)
    if (seq.contains_type(event(k, landmark))) return true;
  return false;
}

std::set<std::string> rendered(const std::vector<MovementSequence>& xs) {
  std::set<std::string> out;
  for (const auto& s : xs) {
    std::string line;
    for (const auto& e : s.events) line += std::string(to_string(e.kind)) + "(" + e.landmark + ") ";
    out.insert(line);
  }
  return out;
}

}  // namespace

TEST_CASE("crossing two regions and entering a third gives seven events") {
  const auto psi = detect_events(extract_fluents(slg::testing::three_region_scene()));
  const Signature expected{{EventKind::kMovesInto, "reg-36"},   {EventKind::kMovesOutOf, "reg-36"},
                           {EventKind::kMovesAcross, "reg-36"}, {EventKind::kMovesInto, "reg-37"},
                           {EventKind::kMovesOutOf, "reg-37"},  {EventKind::kMovesAcross, "reg-37"},
                           {EventKind::kMovesInto, "reg-38"}};
  CHECK(signature(psi) == expected);
  CHECK(std::is_sorted(psi.events.begin(), psi.events.end(), event_order));
  for (const auto& e : psi.events) {
    CHECK(e.interval.start < e.interval.end);
    CHECK(e.undergoer == "obj-1");
    CHECK(e.provenance == Provenance::kObserved);
  }
}

TEST_CASE("a block that never enters a region has no events") {
  const Scene s = build_scene({{"reg-1", ColorCategory::kRed, {1.0, 1.0}}}, {{0.2, -0.5}, {2.0, -0.5}});
  CHECK(detect_events(extract_fluents(s)).events.empty());
  CHECK(detect_events({}).events.empty());
}

TEST_CASE("entering and stopping is an entry only") {
  const Scene s = build_scene({{"reg-36", ColorCategory::kRed, {1.0, 1.0}}}, {{0.2, 1.0}, {1.0, 1.0}});
  const auto psi = detect_events(extract_fluents(s));
  REQUIRE(psi.events.size() == 1);
  CHECK(psi.events[0].kind == EventKind::kMovesInto);
  CHECK(psi.events[0].landmark == "reg-36");
}

TEST_CASE("a long run through an elongated region is along") {
  Scene s = build_scene({}, {{-0.5, 1.0}, {2.5, 1.0}});
  s.objects.push_back({"reg-9", ObjectClass::kRegion, ColorCategory::kYellow, color_prototype(ColorCategory::kYellow),
                       2.0, 0.4});
  s.regions.push_back({"reg-9", Quad{Vec2{0.0, 0.8}, Vec2{2.0, 0.8}, Vec2{2.0, 1.2}, Vec2{0.0, 1.2}}});
  const auto psi = detect_events(extract_fluents(s));
  CHECK(psi.contains_type(event(EventKind::kMovesAlong, "reg-9")));
  CHECK(psi.contains_type(event(EventKind::kMovesAcross, "reg-9")));
  // Crossing the short way is not along.
  const Scene short_way = build_scene({{"reg-1", ColorCategory::kRed, {1.0, 1.0}}}, {{1.0, 0.3}, {1.0, 1.7}});
  CHECK_FALSE(detect_events(extract_fluents(short_way)).contains_type(event(EventKind::kMovesAlong, "reg-1")));
}

TEST_CASE("event intervals span the last observation before and the first after") {
  const Scene s = build_scene({{"reg-36", ColorCategory::kRed, {1.0, 1.0}}}, {{0.2, 1.0}, {1.0, 1.0}}, 60);
  const auto track = s.track("obj-1");
  const auto psi = detect_events(extract_fluents(s));
  REQUIRE(psi.events.size() == 1);
  std::size_t first_in = 0;
  while (topology_at(track[first_in].position, s.regions[0]) != Topology::kInside) ++first_in;
  CHECK(psi.events[0].interval.start == doctest::Approx(track[first_in - 1].t));
  CHECK(psi.events[0].interval.end == doctest::Approx(track[first_in].t));
}

TEST_CASE("poss_at follows the preconditions") {
  const auto outside = state({{"reg-36", Topology::kOutside}});
  const auto inside = state({{"reg-36", Topology::kInside}});
  CHECK(poss_at(EventKind::kMovesInto, "obj-1", "reg-36", outside));
  CHECK_FALSE(poss_at(EventKind::kMovesInto, "obj-1", "reg-36", inside));
  CHECK(poss_at(EventKind::kMovesOutOf, "obj-1", "reg-36", inside));
  CHECK_FALSE(poss_at(EventKind::kMovesOutOf, "obj-1", "reg-36", outside));
  CHECK(poss_at(EventKind::kMovesAcross, "obj-1", "reg-36", outside));
  CHECK(poss_at(EventKind::kMovesAlong, "obj-1", "reg-36", outside));
  CHECK(poss_at(EventKind::kMovesAlong, "obj-1", "reg-36", inside));
  CHECK_THROWS_AS(poss_at(EventKind::kMovesInto, "obj-1", "reg-99", outside), DomainError);
}

TEST_CASE("apply_effects changes only the named pair") {
  const auto before = state({{"reg-36", Topology::kOutside}, {"reg-37", Topology::kInside}});
  const auto after = apply_effects(EventKind::kMovesInto, "obj-1", "reg-36", before);
  CHECK(after.get("obj-1", "reg-36") == Topology::kInside);
  CHECK(after.get("obj-1", "reg-37") == Topology::kInside);
  CHECK_FALSE(poss_at(EventKind::kMovesInto, "obj-1", "reg-36", after));
  CHECK(apply_effects(EventKind::kMovesOutOf, "obj-1", "reg-36", after).get("obj-1", "reg-36") == Topology::kOutside);
  CHECK(apply_effects(EventKind::kMovesAcross, "obj-1", "reg-36", before).get("obj-1", "reg-36") ==
        Topology::kOutside);
  CHECK(apply_effects(EventKind::kMovesAlong, "obj-1", "reg-37", before) == before);
  CHECK_THROWS_AS(apply_effects(EventKind::kMovesOutOf, "obj-1", "reg-36", before), DomainError);
}

TEST_CASE("an observed entry extends to an exit and a crossing") {
  MovementSequence observed{{event(EventKind::kMovesInto, "reg-36")}};
  const auto ext = possible_extensions(observed, state({{"reg-36", Topology::kInside}}), 1);
  CHECK(has_type(ext, EventKind::kMovesOutOf, "reg-36"));
  CHECK(has_type(ext, EventKind::kMovesAcross, "reg-36"));
  for (const auto& seq : ext) {
    REQUIRE_FALSE(seq.events.empty());
    CHECK(seq.events.front() == observed.events.front());
    for (std::size_t i = 1; i < seq.events.size(); ++i) CHECK(seq.events[i].provenance == Provenance::kHypothesized);
  }
}

TEST_CASE("from outside everything only entries are possible") {
  const auto s = state({{"reg-1", Topology::kOutside}, {"reg-2", Topology::kOutside}});
  const auto ext = possible_extensions({}, s, 1);
  std::set<std::string> hypothesized;
  for (const auto& seq : ext) {
    CHECK(seq.events.size() <= 1);
    for (const auto& e : seq.events) {
      CHECK(e.kind == EventKind::kMovesInto);
      hypothesized.insert(e.landmark);
    }
  }
  CHECK(hypothesized == std::set<std::string>{"reg-1", "reg-2"});
}

TEST_CASE("depth zero yields the observed sequence alone") {
  MovementSequence observed{{event(EventKind::kMovesInto, "reg-36")}};
  const auto ext = possible_extensions(observed, state({{"reg-36", Topology::kInside}}), 0);
  REQUIRE(ext.size() == 1);
  CHECK(ext[0] == observed);
}

TEST_CASE("compatible matches directly or through extensions") {
  const MovementSequence entered{{event(EventKind::kMovesInto, "reg-36")}};
  const auto inside = state({{"reg-36", Topology::kInside}});
  CHECK(compatible(event(EventKind::kMovesAcross, "reg-36"), entered, inside, 1));
  CHECK_FALSE(compatible(event(EventKind::kMovesAcross, "reg-36"), entered, inside, 0));
  const MovementSequence crossed{{event(EventKind::kMovesAcross, "reg-36")}};
  CHECK(compatible(event(EventKind::kMovesAcross, "reg-36"), crossed, state({{"reg-36", Topology::kOutside}}), 0));

  // Disjoint regions: the block has to leave reg-36 before entering reg-37.
  auto two = state({{"reg-36", Topology::kInside}, {"reg-37", Topology::kOutside}});
  two.mark_disjoint("reg-36", "reg-37");
  const auto across37 = event(EventKind::kMovesAcross, "reg-37");
  CHECK_FALSE(compatible(across37, entered, two, 1));
  CHECK_FALSE(compatible(across37, entered, two, 2));
  CHECK(compatible(across37, entered, two, 3));
}

TEST_CASE("extensions grow with depth") {
  auto s = state({{"reg-1", Topology::kInside}, {"reg-2", Topology::kOutside}, {"reg-3", Topology::kOutside}});
  s.mark_disjoint("reg-1", "reg-2");
  const MovementSequence observed{{event(EventKind::kMovesInto, "reg-1")}};
  auto previous = rendered(possible_extensions(observed, s, 0));
  for (int depth = 1; depth <= 4; ++depth) {
    const auto current = rendered(possible_extensions(observed, s, depth));
    CHECK(std::includes(current.begin(), current.end(), previous.begin(), previous.end()));
    CHECK(current.size() > previous.size());
    previous = current;
  }
}

TEST_CASE("format_sequence writes one occurs-in line per event") {
  MovementSequence seq{{MovementEvent{EventKind::kMovesOutOf, "obj-1", "reg-2", {1.5, 1.5333}, Provenance::kObserved}}};
  const std::string text = format_sequence(seq);
  CHECK(text.rfind("occurs-in(moves_out_of(obj-1, reg-2), [1.5", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 1);
  CHECK(parse_event_kind("moves_across") == EventKind::kMovesAcross);
  CHECK_FALSE(parse_event_kind("moves_over").has_value());
}

TEST_CASE("generated sequences replay legally from the initial state") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const ScenePair pair = generate_scene_pair(GenerationConfig{}, seed);
    for (const Scene* scene : {&pair.a, &pair.b}) {
      const auto tracks = extract_fluents(*scene);
      const auto psi = detect_events(tracks);
      SpatialState s = initial_state(tracks);
      for (const auto& e : psi.events) {
        if (e.kind == EventKind::kMovesAcross || e.kind == EventKind::kMovesAlong) continue;
        REQUIRE(poss_at(e.kind, e.undergoer, e.landmark, s));
        s = apply_effects(e.kind, e.undergoer, e.landmark, s);
      }
      CHECK(s.values() == final_state(tracks).values());
      for (const auto& e : psi.events) {
        if (e.kind != EventKind::kMovesAcross) continue;
        bool matched = false;
        for (const auto& in : psi.events) {
          if (in.kind != EventKind::kMovesInto || in.landmark != e.landmark) continue;
          for (const auto& out : psi.events) {
            if (out.kind != EventKind::kMovesOutOf || out.landmark != e.landmark) continue;
            const auto rel = allen(in.interval, out.interval);
            if ((rel == AllenRelation::kBefore || rel == AllenRelation::kMeets) &&
                e.interval.start == in.interval.start && e.interval.end == out.interval.end)
              matched = true;
          }
        }
        CHECK(matched);
      }
    }
  }
}

TEST_CASE("the movement sequence survives drops that keep every segment observed") {
  int qualifying = 0;
  for (std::uint64_t seed = 101; seed <= 160; ++seed) {
    const ScenePair pair = generate_scene_pair(GenerationConfig{}, seed);
    for (const Scene* s : {&pair.a, &pair.b}) {
      const auto fluents = extract_fluents(*s);
      const Signature base = signature(detect_events(fluents));
      for (double rate : {0.1, 0.25, 0.4, 0.5, 0.75}) {
        const Scene dropped = drop_frames(*s, rate, derive_seed(seed, static_cast<std::uint64_t>(rate * 1000)));
        if (!slg::testing::every_segment_observed(fluents, dropped, s->block()->id)) continue;
        ++qualifying;
        CHECK(signature(detect_events(extract_fluents(dropped))) == base);
      }
    }
  }
  CHECK(qualifying > 100);
}

TEST_CASE("jitter does not make a straight crossing an along") {
  // A slow, noisy walk across a small region: summed frame-to-frame steps
  // would be several times the chord.
  Rng rng(4);
  std::vector<Vec2> pts;
  for (int i = 0; i <= 200; ++i) {
    const double u = i / 200.0;
    pts.push_back(Vec2{0.5 + u, 1.0} + Vec2{rng.normal(0.0, 0.015), rng.normal(0.0, 0.015)});
  }
  Scene s = slg::testing::build_scene({{"reg-1", ColorCategory::kRed, {1.0, 1.0}, 0.2}}, {{0.5, 1.0}, {1.5, 1.0}}, 201);
  for (std::size_t i = 0; i < s.frames.size(); ++i) s.frames[i].poses.begin()->second.position = pts[i];
  const auto psi = detect_events(extract_fluents(s));
  for (const auto& e : psi.events) CHECK(e.kind != EventKind::kMovesAlong);
  CHECK(psi.contains_type({EventKind::kMovesAcross, "obj-1", "reg-1", {}, Provenance::kObserved}));
}
