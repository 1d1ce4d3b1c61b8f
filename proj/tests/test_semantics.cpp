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
#include <set>

#include "doctest.h"
#include "slg/conceptualize.hpp"
#include "slg/error.hpp"
#include "slg/generator.hpp"
#include "slg/harness.hpp"
#include "slg/program.hpp"
#include "slg/semantics.hpp"
#include "support.hpp"

using namespace slg;
using slg::testing::build_scene;
using slg::testing::three_region_scene;

namespace {

const Description kAcrossRed{{"block", {}}, DynamicPhrase{"across", {"region", "red"}}, {}, {}};

int count_op(const SemanticProgram& p, const std::string& op) {
  return static_cast<int>(std::count_if(p.nodes.begin(), p.nodes.end(), [&](const auto& n) { return n.op == op; }));
}

std::set<std::string> events_of(const Value& v) {
  std::set<std::string> out;
  for (const auto& e : std::get<EventSetValue>(v).events) out.insert(std::string(to_string(e.kind)) + "/" + e.landmark);
  return out;
}

SemanticProgram without_node(SemanticProgram p, const std::string& op, int occurrence) {
  int seen = 0;
  for (auto it = p.nodes.begin(); it != p.nodes.end(); ++it) {
    if (it->op == op && seen++ == occurrence) {
      p.nodes.erase(it);
      break;
    }
  }
  return p;
}

std::set<std::string> result_keys(const std::vector<EvaluationResult>& results) {
  std::set<std::string> out;
  for (const auto& r : results) {
    std::string key;
    for (const auto& [var, value] : r.bindings) key += var + "=" + to_string(value) + ";";
    out.insert(key);
  }
  return out;
}

std::set<std::string> interpretation_keys(const std::vector<Interpretation>& xs) {
  std::set<std::string> out;
  for (const auto& i : xs) out.insert(to_sexpr(i.program) + "|" + result_keys({i.result}).begin()->c_str());
  return out;
}

Topic event_topic(const EvaluationContext& ctx, EventKind kind, const std::string& landmark) {
  for (const auto& t : topics(ctx))
    if (t.kind == Topic::Kind::kEvent && t.event.kind == kind && t.event.landmark == landmark) return t;
  FAIL("no such topic");
  return {};
}

}  // namespace

TEST_CASE("inventories use the fixed spellings") {
  auto names = [](EntityKind k) {
    const auto inv = inventory(k);
    return std::vector<std::string>(inv.begin(), inv.end());
  };
  CHECK(names(EntityKind::kObjectClass) == std::vector<std::string>{"block", "box", "robot", "region"});
  CHECK(names(EntityKind::kColorCategory) == std::vector<std::string>{"red", "green", "blue", "yellow"});
  CHECK(names(EntityKind::kDynamicSpatialRelation) == std::vector<std::string>{"across", "into", "out-of", "along"});
  CHECK(names(EntityKind::kStaticSpatialRelation) ==
        std::vector<std::string>{"left", "right", "front", "back", "near", "far"});
  CHECK(names(EntityKind::kEventProfile) == std::vector<std::string>{"path", "source", "goal"});
  CHECK(names(EntityKind::kFrameOfReference) == std::vector<std::string>{"relative", "intrinsic", "absolute"});
  CHECK(names(EntityKind::kLandmarkReference) == std::vector<std::string>{"me", "you"});
  CHECK_THROWS_AS(make_entity(EntityKind::kColorCategory, "purple"), DomainError);
  CHECK(make_entity(EntityKind::kDynamicSpatialRelation, "across").symbol == "across");
}

TEST_CASE("programs round trip through their text form") {
  const SemanticProgram p = build_program(kAcrossRed);
  CHECK(parse_sexpr(to_sexpr(p)) == p);
  const SemanticProgram renamed = normalize_variables(p);
  CHECK(equivalent(p, renamed));
  CHECK(normalize_variables(renamed) == renamed);
  CHECK(p.complete());
  CHECK_FALSE(equivalent(p, build_program({{"block", {}}, DynamicPhrase{"across", {"region", "blue"}}, {}, {}})));
  CHECK_THROWS_AS(parse_sexpr("(filter-by-class ?a)"), DomainError);
  CHECK_THROWS_AS(parse_sexpr("(fly-away ?a ?b)"), DomainError);
  CHECK_THROWS_AS(parse_sexpr("(bind color-category ?c purple)"), DomainError);
  CHECK_THROWS_AS(parse_sexpr("(get-context ?c"), DomainError);
}

TEST_CASE("across the red region picks out the crossing of the red region") {
  const auto ctx = speaker_context(three_region_scene());
  const SemanticProgram p = build_program(kAcrossRed);
  const auto results = evaluate(p, ctx);
  REQUIRE(results.size() == 1);
  CHECK(results[0].consistent);
  const auto refs = referents(p, results);
  REQUIRE(refs.size() == 1);
  CHECK(events_of(refs[0]) == std::set<std::string>{"moves_across/reg-36"});
  // The landmark unique-entity is bound to the red region.
  bool region_bound = false;
  for (const auto& [var, value] : results[0].bindings)
    if (const auto* o = std::get_if<ObjectRef>(&value); o && o->id == "reg-36") region_bound = true;
  CHECK(region_bound);
}

TEST_CASE("without an exit there is nothing to cross") {
  const Scene stays = build_scene({{"reg-36", ColorCategory::kRed, {1.0, 1.0}}}, {{0.2, 1.0}, {1.0, 1.0}});
  CHECK(evaluate(build_program(kAcrossRed), speaker_context(stays)).empty());
}

TEST_CASE("degenerate programs evaluate to nothing") {
  const auto ctx = speaker_context(three_region_scene());
  SemanticProgram lone;
  lone.binds.push_back({EntityKind::kColorCategory, "?c", "red"});
  CHECK(evaluate(lone, ctx).empty());
  CHECK(evaluate(SemanticProgram{}, ctx).empty());
  SemanticProgram unknown;
  unknown.nodes.push_back({"teleport", {"?a"}});
  CHECK(evaluate(unknown, ctx).empty());
}

TEST_CASE("an open entity is solved for and matches pre-binding it") {
  const auto ctx = speaker_context(three_region_scene());
  SemanticProgram open = build_program(kAcrossRed);
  std::string color_var;
  for (auto& b : open.binds)
    if (b.kind == EntityKind::kColorCategory) {
      b.symbol.clear();
      color_var = b.var;
    }
  const auto solved = evaluate(open, ctx);
  std::set<std::string> solved_keys = result_keys(solved);
  std::set<std::string> prebound_keys;
  for (auto color : inventory(EntityKind::kColorCategory)) {
    SemanticProgram fixed = open;
    for (auto& b : fixed.binds)
      if (b.var == color_var) b.symbol = std::string(color);
    for (const auto& k : result_keys(evaluate(fixed, ctx))) prebound_keys.insert(k);
  }
  CHECK(solved_keys == prebound_keys);
  CHECK(solved_keys.size() == 2);  // the red and the blue region are crossed
}

TEST_CASE("static relations from the speaker's and the hearer's side") {
  // The block travels from robot-2's left to robot-1's right.
  const Scene s = build_scene({{"reg-1", ColorCategory::kRed, {1.5, 1.5}}}, {{3.0, -0.8}, {0.0, -0.8}});
  const Description d{{"block", {}}, {}, StaticPhrase{"left", std::string("you")},
                      StaticPhrase{"right", std::string("me")}};
  CHECK_FALSE(evaluate(build_program(d), speaker_context(s)).empty());
  // For robot-2 the same words swap me and you.
  const Scene b = slg::testing::as_seen_by_peer(s);
  const Description swapped{{"block", {}}, {}, StaticPhrase{"left", std::string("me")},
                            StaticPhrase{"right", std::string("you")}};
  CHECK_FALSE(evaluate(build_program(swapped), speaker_context(b)).empty());
  CHECK_FALSE(evaluate(build_program(d), hearer_context(b)).empty());
  const Description wrong{{"block", {}}, {}, StaticPhrase{"right", std::string("you")}, {}};
  CHECK(evaluate(build_program(wrong), speaker_context(s)).empty());
}

TEST_CASE("describing the crossing of the red region") {
  const auto ctx = speaker_context(three_region_scene());
  const auto c = conceptualize(Goal::kDescribe, event_topic(ctx, EventKind::kMovesAcross, "reg-36"), ctx);
  REQUIRE(c.has_value());
  CHECK(to_string(c->description) == "the block moves across the red region");
  CHECK(equivalent(c->program, build_program(kAcrossRed)));
}

TEST_CASE("describing source and goal uses both profiles") {
  const Scene s = build_scene({{"reg-1", ColorCategory::kRed, {1.5, 1.5}}}, {{3.0, -0.8}, {0.0, -0.8}});
  const auto ctx = speaker_context(s);
  Topic topic;
  for (const auto& t : topics(ctx))
    if (t.kind == Topic::Kind::kSourceGoal) topic = t;
  REQUIRE(topic.kind == Topic::Kind::kSourceGoal);
  const auto c = conceptualize(Goal::kDescribe, topic, ctx);
  REQUIRE(c.has_value());
  CHECK(count_op(c->program, "apply-source") == 1);
  CHECK(count_op(c->program, "apply-goal") == 1);
  CHECK(count_op(c->program, "apply-static-spatial-relation") == 2);
  CHECK(to_string(c->description) == "the block moves from left of you to right of me");
}

TEST_CASE("a block that does not move is discriminated by its class") {
  const Scene s = build_scene({{"reg-1", ColorCategory::kRed, {1.5, 1.5}}}, {{1.0, -0.5}, {1.0, -0.5}});
  const auto ctx = speaker_context(s);
  const auto ts = topics(ctx);
  REQUIRE(ts.size() == 1);
  CHECK(ts[0].kind == Topic::Kind::kObject);
  const auto c = conceptualize(Goal::kDiscriminate, ts[0], ctx);
  REQUIRE(c.has_value());
  CHECK(count_op(c->program, "filter-by-color") == 0);
  CHECK(count_op(c->program, "filter-by-class") == 1);
  CHECK(to_string(c->description) == "the block");
}

TEST_CASE("conceptualized meanings evaluate to their topic") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const ScenePair pair = generate_scene_pair(GenerationConfig{}, seed);
    const auto ctx = speaker_context(pair.a);
    for (const auto& t : topics(ctx)) {
      const Goal goal = t.kind == Topic::Kind::kObject ? Goal::kDiscriminate : Goal::kDescribe;
      const auto c = conceptualize(goal, t, ctx);
      REQUIRE(c.has_value());
      const auto again = conceptualize(goal, t, ctx);
      REQUIRE(again.has_value());
      CHECK(again->program == c->program);
      const auto results = evaluate(c->program, ctx);
      REQUIRE_FALSE(results.empty());
      const auto refs = referents(c->program, results);
      if (t.kind == Topic::Kind::kEvent) {
        bool found = false;
        for (const auto& r : refs)
          for (const auto& e : std::get<EventSetValue>(r).events) found = found || e.same_type(t.event);
        CHECK(found);
      } else if (t.kind == Topic::Kind::kObject) {
        REQUIRE(refs.size() == 1);
        CHECK(std::get<ObjectRef>(refs[0]).id == t.object);
      } else {
        for (const auto& r : refs) CHECK(std::get<MovementValue>(r).undergoer == t.object);
      }
    }
  }
}

TEST_CASE("a complete program interprets as it evaluates") {
  const auto ctx = hearer_context(three_region_scene());
  const SemanticProgram p = build_program(kAcrossRed);
  const auto interpretations = interpret(p, ctx);
  REQUIRE(interpretations.size() == evaluate(p, ctx).size());
  CHECK(interpretations[0].score == 1.0);
  CHECK(interpretations[0].inserted_nodes == 0);
  CHECK(interpretations[0].program == p);
}

TEST_CASE("a missing determiner is restored") {
  const auto ctx = hearer_context(three_region_scene());
  const SemanticProgram partial = without_node(build_program(kAcrossRed), "unique-entity", 0);
  CHECK(evaluate(partial, ctx).empty());
  const auto interpretations = interpret(partial, ctx);
  REQUIRE_FALSE(interpretations.empty());
  CHECK(interpretations[0].inserted_nodes >= 1);
  CHECK(interpretations[0].score < 1.0);
  const auto refs = referents(interpretations[0].program, {interpretations[0].result});
  REQUIRE(refs.size() == 1);
  CHECK(events_of(refs[0]) == std::set<std::string>{"moves_across/reg-36"});
}

TEST_CASE("two bare binds are completed against the scene") {
  SemanticProgram bare;
  bare.binds.push_back({EntityKind::kDynamicSpatialRelation, "?r", "across"});
  bare.binds.push_back({EntityKind::kColorCategory, "?c", "red"});
  // Every operation of the dynamic-relation sentence has to be inserted.
  const int budget = 10;
  CHECK(interpret(bare, hearer_context(three_region_scene())).empty());
  const auto found = interpret(bare, hearer_context(three_region_scene()), budget);
  REQUIRE_FALSE(found.empty());
  for (const auto& i : found) {
    const auto refs = referents(i.program, {i.result});
    REQUIRE(refs.size() == 1);
    CHECK(events_of(refs[0]).contains("moves_across/reg-36"));
  }
  const Scene no_red = build_scene({{"reg-1", ColorCategory::kBlue, {1.0, 1.0}}}, {{0.3, 1.0}, {1.7, 1.0}});
  CHECK(interpret(bare, hearer_context(no_red), budget).empty());
}

TEST_CASE("a larger completion budget never loses interpretations") {
  const auto ctx = hearer_context(three_region_scene());
  SemanticProgram partial = without_node(build_program(kAcrossRed), "unique-entity", 1);
  partial = without_node(partial, "get-context", 0);
  std::set<std::string> previous;
  for (int budget = 0; budget <= 5; ++budget) {
    const auto keys = interpretation_keys(interpret(partial, ctx, budget));
    CHECK(std::includes(keys.begin(), keys.end(), previous.begin(), previous.end()));
    previous = keys;
  }
  CHECK_FALSE(previous.empty());
}

TEST_CASE("completion templates are complete programs") {
  const auto& templates = completion_templates();
  CHECK_FALSE(templates.empty());
  for (const auto& t : templates) {
    CHECK(t.complete());
    for (const auto& b : t.binds) CHECK(b.open());
  }
}
