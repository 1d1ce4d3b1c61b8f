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

#include "slg/semantics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include "slg/error.hpp"

namespace slg {

std::string to_string(const Value& v) {
  struct Visitor {
    std::string operator()(const ContextValue&) const { return "context"; }
    std::string operator()(const ObjectSet& s) const {
      std::string out = "{";
      for (std::size_t i = 0; i < s.ids.size(); ++i) out += (i ? ", " : "") + s.ids[i];
      return out + "}";
    }
    std::string operator()(const ObjectRef& o) const { return o.id; }
    std::string operator()(const SemanticEntity& e) const { return e.symbol; }
    std::string operator()(const MovementValue& m) const { return "movement(" + m.undergoer + ")"; }
    std::string operator()(const PathValue& p) const { return "path(" + p.undergoer + ")"; }
    std::string operator()(const LocationValue& l) const {
      char buf[64];
      std::snprintf(buf, sizeof buf, "(%.3f, %.3f)", l.position.x, l.position.y);
      return l.profile + "(" + l.undergoer + ") " + buf;
    }
    std::string operator()(const EventSetValue& s) const {
      std::string out = "{";
      for (std::size_t i = 0; i < s.events.size(); ++i) {
        const auto& e = s.events[i];
        out += (i ? ", " : "") + std::string(to_string(e.kind)) + "(" + e.undergoer + ", " + e.landmark + ")";
      }
      return out + "}";
    }
  };
  return std::visit(Visitor{}, v);
}

std::string_view to_string(Reasoning r) { return r == Reasoning::kWith ? "wr" : "wor"; }

std::optional<Reasoning> parse_reasoning(std::string_view s) {
  if (s == "wr") return Reasoning::kWith;
  if (s == "wor") return Reasoning::kWithout;
  return std::nullopt;
}

std::optional<Pose2> EvaluationContext::pose_of(std::string_view id) const { return scene.static_pose(id); }

std::optional<Vec2> EvaluationContext::position_of(std::string_view id) const {
  if (const Region* r = scene.find_region(id)) return r->centroid();
  if (auto p = pose_of(id)) return p->position;
  return std::nullopt;
}

const SceneObject* EvaluationContext::moving_block() const {
  const SceneObject* b = scene.block();
  if (!b || block_track.size() < 2) return nullptr;
  if (distance(block_track.front().position, block_track.back().position) < options.min_displacement) return nullptr;
  return b;
}

EvaluationContext make_context(Scene scene, std::string me, std::string you, const ContextOptions& options) {
  validate_scene(scene);
  for (const auto* id : {&me, &you}) {
    const SceneObject* o = scene.find_object(*id);
    if (!o || o->cls != ObjectClass::kRobot) throw SceneError("'" + *id + "' is not a robot of the scene");
  }
  EvaluationContext ctx;
  ctx.fluents = extract_fluents(scene);
  ctx.psi = detect_events(ctx.fluents, options.events);
  ctx.final_state = final_state(ctx.fluents);
  ctx.diameter = scene.diameter();
  if (const SceneObject* b = scene.block()) ctx.block_track = scene.track(b->id);
  ctx.scene = std::move(scene);
  ctx.me = std::move(me);
  ctx.you = std::move(you);
  ctx.options = options;
  return ctx;
}

EvaluationContext speaker_context(Scene scene, const ContextOptions& options) {
  const SceneObject* peer = scene.peer();
  if (!peer) throw SceneError("scene has no peer robot");
  std::string you = peer->id;
  std::string me = scene.observer;
  return make_context(std::move(scene), std::move(me), std::move(you), options);
}

EvaluationContext hearer_context(Scene scene, const ContextOptions& options) {
  const SceneObject* peer = scene.peer();
  if (!peer) throw SceneError("scene has no peer robot");
  std::string me = peer->id;
  std::string you = scene.observer;
  return make_context(std::move(scene), std::move(me), std::move(you), options);
}

namespace {

struct Candidate {
  std::vector<Value> args;
  double score = 1.0;
};

using Args = std::vector<const Value*>;
/// nullopt: the operation cannot run with this pattern of bound arguments.
using Outcome = std::optional<std::vector<Candidate>>;

template <class T>
const T* as(const Value* v) {
  return v ? std::get_if<T>(v) : nullptr;
}

Candidate fill(const Args& in, std::initializer_list<std::pair<std::size_t, Value>> outputs, double score = 1.0) {
  Candidate c;
  c.score = score;
  c.args.reserve(in.size());
  for (const Value* v : in) c.args.push_back(v ? *v : Value{ContextValue{}});
  for (const auto& [i, v] : outputs) c.args[i] = v;
  return c;
}

std::vector<const SceneObject*> members(const Value* in, const EvaluationContext& ctx) {
  std::vector<const SceneObject*> out;
  if (as<ContextValue>(in)) {
    for (const auto& o : ctx.scene.objects) out.push_back(&o);
  } else if (const auto* set = as<ObjectSet>(in)) {
    for (const auto& id : set->ids) {
      if (const SceneObject* o = ctx.scene.find_object(id)) out.push_back(o);
    }
  }
  return out;
}

Outcome filter_objects(const Args& a, const EvaluationContext& ctx, EntityKind kind,
                       const std::function<bool(const SceneObject&, std::string_view)>& keep) {
  const auto* entity = as<SemanticEntity>(a[2]);
  if (!a[1] || !entity) return std::nullopt;
  if (entity->kind != kind) return std::vector<Candidate>{};
  ObjectSet out;
  for (const SceneObject* o : members(a[1], ctx)) {
    if (keep(*o, entity->symbol)) out.ids.push_back(o->id);
  }
  std::sort(out.ids.begin(), out.ids.end());
  if (out.ids.empty()) return std::vector<Candidate>{};
  return std::vector<Candidate>{fill(a, {{0, out}})};
}

Outcome get_context(const Args& a, const EvaluationContext&) { return std::vector<Candidate>{fill(a, {{0, ContextValue{}}})}; }

Outcome filter_by_class(const Args& a, const EvaluationContext& ctx) {
  return filter_objects(a, ctx, EntityKind::kObjectClass,
                        [](const SceneObject& o, std::string_view sym) { return to_string(o.cls) == sym; });
}

Outcome filter_by_color(const Args& a, const EvaluationContext& ctx) {
  return filter_objects(a, ctx, EntityKind::kColorCategory, [](const SceneObject& o, std::string_view sym) {
    return to_string(categorize_color(o.raw)) == sym;
  });
}

Outcome unique_entity(const Args& a, const EvaluationContext&) {
  const auto* set = as<ObjectSet>(a[1]);
  if (!set) return std::nullopt;
  std::vector<Candidate> out;
  for (const auto& id : set->ids) out.push_back(fill(a, {{0, ObjectRef{id}}}));
  return out;
}

bool is_move(const Value* v) {
  const auto* e = as<SemanticEntity>(v);
  return e && e->kind == EntityKind::kEventClass && e->symbol == "move";
}

Outcome select_event(const Args& a, const EvaluationContext& ctx) {
  if (!a[2]) return std::nullopt;
  if (a[1]) {
    const auto* u = as<ObjectRef>(a[1]);
    const SceneObject* b = ctx.moving_block();
    if (!u || !is_move(a[2]) || !b || b->id != u->id) return std::vector<Candidate>{};
    return std::vector<Candidate>{fill(a, {{0, MovementValue{u->id}}})};
  }
  if (const auto* m = as<MovementValue>(a[0])) {
    if (!is_move(a[2])) return std::vector<Candidate>{};
    return std::vector<Candidate>{fill(a, {{1, ObjectRef{m->undergoer}}})};
  }
  return std::nullopt;
}

Outcome apply_path(const Args& a, const EvaluationContext&) {
  if (const auto* m = as<MovementValue>(a[1])) return std::vector<Candidate>{fill(a, {{0, PathValue{m->undergoer}}})};
  if (const auto* p = as<PathValue>(a[0])) {
    if (a[1]) return std::vector<Candidate>{};
    return std::vector<Candidate>{fill(a, {{1, MovementValue{p->undergoer}}})};
  }
  if (a[0] || a[1]) return std::vector<Candidate>{};
  return std::nullopt;
}

Outcome apply_endpoint(const Args& a, const EvaluationContext& ctx, bool source) {
  const auto* m = as<MovementValue>(a[1]);
  if (!m) return a[1] ? Outcome{std::vector<Candidate>{}} : std::nullopt;
  if (ctx.block_track.empty()) return std::vector<Candidate>{};
  const Vec2 p = source ? ctx.block_track.front().position : ctx.block_track.back().position;
  return std::vector<Candidate>{fill(a, {{0, LocationValue{m->undergoer, source ? "source" : "goal", p}}})};
}

Outcome apply_source(const Args& a, const EvaluationContext& ctx) { return apply_endpoint(a, ctx, true); }
Outcome apply_goal(const Args& a, const EvaluationContext& ctx) { return apply_endpoint(a, ctx, false); }

std::optional<EventKind> dynamic_kind(std::string_view symbol) {
  if (symbol == "across") return EventKind::kMovesAcross;
  if (symbol == "into") return EventKind::kMovesInto;
  if (symbol == "out-of") return EventKind::kMovesOutOf;
  if (symbol == "along") return EventKind::kMovesAlong;
  return std::nullopt;
}

Outcome apply_dynamic(const Args& a, const EvaluationContext& ctx) {
  const auto* path = as<PathValue>(a[1]);
  const auto* rel = as<SemanticEntity>(a[2]);
  const auto* lm = as<ObjectRef>(a[3]);
  if (!a[1] || !a[2] || !a[3]) return std::nullopt;
  if (!path || !rel || !lm || rel->kind != EntityKind::kDynamicSpatialRelation) return std::vector<Candidate>{};
  const auto kind = dynamic_kind(rel->symbol);
  if (!kind || !ctx.scene.find_region(lm->id)) return std::vector<Candidate>{};
  const MovementEvent wanted{*kind, path->undergoer, lm->id, {}};
  EventSetValue out;
  for (const auto& e : ctx.psi.events) {
    if (e.same_type(wanted)) out.events.push_back(e);
  }
  if (out.events.empty() && ctx.options.reasoning == Reasoning::kWith) {
    for (const auto& ext : possible_extensions(ctx.psi, ctx.final_state, ctx.options.depth)) {
      for (const auto& e : ext.events) {
        if (e.same_type(wanted)) out.events.push_back(e);
      }
      if (!out.events.empty()) break;
    }
  }
  if (out.events.empty()) return std::vector<Candidate>{};
  return std::vector<Candidate>{fill(a, {{0, std::move(out)}})};
}

std::optional<std::string> robot_for(const Value* v, const EvaluationContext& ctx) {
  if (const auto* e = as<SemanticEntity>(v)) {
    if (e->kind != EntityKind::kLandmarkReference) return std::nullopt;
    return e->symbol == "me" ? ctx.me : ctx.you;
  }
  if (const auto* o = as<ObjectRef>(v)) {
    const SceneObject* obj = ctx.scene.find_object(o->id);
    if (obj && obj->cls == ObjectClass::kRobot) return o->id;
  }
  return std::nullopt;
}

/// Similarity of a relative position to a projective category, given the
/// category's axes: front and left unit vectors.
double projective_similarity(std::string_view rel, Vec2 d, Vec2 front, Vec2 left) {
  const double n = norm(d);
  if (n < 1e-12) return 0.0;
  const Vec2 u{d.x / n, d.y / n};
  if (rel == "front") return dot(u, front);
  if (rel == "back") return -dot(u, front);
  if (rel == "left") return dot(u, left);
  if (rel == "right") return -dot(u, left);
  return 0.0;
}

Outcome apply_static(const Args& a, const EvaluationContext& ctx) {
  for (std::size_t i = 1; i < 6; ++i) {
    if (!a[i]) return std::nullopt;
  }
  const auto* loc = as<LocationValue>(a[1]);
  const auto* rel = as<SemanticEntity>(a[2]);
  const auto* frame = as<SemanticEntity>(a[4]);
  if (!loc || !rel || !frame || rel->kind != EntityKind::kStaticSpatialRelation ||
      frame->kind != EntityKind::kFrameOfReference) {
    return std::vector<Candidate>{};
  }
  std::optional<std::string> lm_id;
  if (const auto* o = as<ObjectRef>(a[3])) {
    lm_id = o->id;
  } else {
    lm_id = robot_for(a[3], ctx);
  }
  if (!lm_id) return std::vector<Candidate>{};
  const SceneObject* lm_obj = ctx.scene.find_object(*lm_id);
  if (!lm_obj || lm_obj->cls == ObjectClass::kBlock) return std::vector<Candidate>{};
  const auto lm_pos = ctx.position_of(*lm_id);
  if (!lm_pos) return std::vector<Candidate>{};
  const Vec2 d = loc->position - *lm_pos;

  double score = 0.0;
  if (rel->symbol == "near" || rel->symbol == "far") {
    if (ctx.diameter <= 0.0) return std::vector<Candidate>{};
    const double r = norm(d) / ctx.diameter;
    const double k = ctx.options.proximal_ratio;
    score = rel->symbol == "near" ? (k - r) / k : (r - k) / (1.0 - k);
  } else if (frame->symbol == "intrinsic") {
    if (lm_obj->cls != ObjectClass::kRobot && lm_obj->cls != ObjectClass::kBox) return std::vector<Candidate>{};
    const auto pose = ctx.pose_of(*lm_id);
    if (!pose) return std::vector<Candidate>{};
    const Vec2 front = unit_from_angle(pose->theta);
    score = projective_similarity(rel->symbol, d, front, rotate(front, M_PI / 2));
  } else if (frame->symbol == "relative") {
    const auto viewer = robot_for(a[5], ctx);
    if (!viewer || *viewer == *lm_id) return std::vector<Candidate>{};
    const auto vpos = ctx.position_of(*viewer);
    const Vec2 view = *lm_pos - *vpos;
    const double n = norm(view);
    if (n < 1e-9) return std::vector<Candidate>{};
    const Vec2 ahead{view.x / n, view.y / n};
    // Facing the viewer: the landmark's front points back at the viewer and
    // its left is the viewer's left.
    score = projective_similarity(rel->symbol, d, -1.0 * ahead, rotate(ahead, M_PI / 2));
  } else {
    const Vec2 front = unit_from_angle(ctx.scene.world_theta);
    score = projective_similarity(rel->symbol, d, front, rotate(front, M_PI / 2));
  }
  if (!(score > 0.0)) return std::vector<Candidate>{};
  return std::vector<Candidate>{fill(a, {{0, *loc}}, std::min(score, 1.0))};
}

using OpFn = Outcome (*)(const Args&, const EvaluationContext&);

OpFn find_op(std::string_view name) {
  static const std::map<std::string_view, OpFn> ops = {
      {"get-context", get_context},
      {"filter-by-class", filter_by_class},
      {"filter-by-color", filter_by_color},
      {"unique-entity", unique_entity},
      {"select-event", select_event},
      {"apply-path", apply_path},
      {"apply-source", apply_source},
      {"apply-goal", apply_goal},
      {"apply-dynamic-spatial-relation", apply_dynamic},
      {"apply-static-spatial-relation", apply_static},
  };
  auto it = ops.find(name);
  return it == ops.end() ? nullptr : it->second;
}

class Solver {
 public:
  Solver(const SemanticProgram& p, const EvaluationContext& ctx) : p_(p), ctx_(ctx), done_(p.nodes.size(), false) {
    for (const auto& n : p.nodes) ops_.push_back(find_op(n.op));
  }

  std::vector<EvaluationResult> run() {
    if (p_.nodes.empty()) return {};
    for (std::size_t i = 0; i < p_.nodes.size(); ++i) {
      if (!ops_[i] || p_.nodes[i].args.size() != operation_arity(p_.nodes[i].op)) return {};
    }
    std::map<std::string, Value> initial;
    for (const auto& b : p_.binds) {
      if (b.open()) continue;
      Value v = SemanticEntity{b.kind, b.symbol};
      auto [it, inserted] = initial.emplace(b.var, v);
      if (!inserted && !(it->second == v)) return {};
    }
    solve(initial, 1.0, 0);
    return std::move(results_);
  }

 private:
  void solve(std::map<std::string, Value>& bound, double score, std::size_t n_done) {
    if (n_done == p_.nodes.size()) {
      results_.push_back({true, bound, score});
      return;
    }
    for (std::size_t i = 0; i < p_.nodes.size(); ++i) {
      if (done_[i]) continue;
      const auto& node = p_.nodes[i];
      Args args;
      for (const auto& v : node.args) {
        auto it = bound.find(v);
        args.push_back(it == bound.end() ? nullptr : &it->second);
      }
      Outcome outcome = ops_[i](args, ctx_);
      if (!outcome) continue;
      done_[i] = true;
      for (const Candidate& c : *outcome) extend(bound, node, c, score, n_done);
      done_[i] = false;
      return;
    }
    // No operation can run: try the symbols of an open entity that blocks one.
    for (std::size_t i = 0; i < p_.nodes.size(); ++i) {
      if (done_[i]) continue;
      for (const auto& v : p_.nodes[i].args) {
        if (bound.contains(v)) continue;
        const BindStatement* b = p_.find_bind(v);
        if (!b) continue;
        for (std::string_view sym : inventory(b->kind)) {
          bound.emplace(v, SemanticEntity{b->kind, std::string(sym)});
          solve(bound, score, n_done);
          bound.erase(v);
        }
        return;
      }
    }
  }

  void extend(std::map<std::string, Value>& bound, const OperationNode& node, const Candidate& c, double score,
              std::size_t n_done) {
    std::vector<std::string> added;
    bool ok = true;
    for (std::size_t k = 0; k < node.args.size() && ok; ++k) {
      auto it = bound.find(node.args[k]);
      if (it == bound.end()) {
        bound.emplace(node.args[k], c.args[k]);
        added.push_back(node.args[k]);
      } else {
        ok = it->second == c.args[k];
      }
    }
    if (ok) solve(bound, score * c.score, n_done + 1);
    for (const auto& v : added) bound.erase(v);
  }

  const SemanticProgram& p_;
  const EvaluationContext& ctx_;
  std::vector<OpFn> ops_;
  std::vector<bool> done_;
  std::vector<EvaluationResult> results_;
};

}  // namespace

std::vector<EvaluationResult> evaluate(const SemanticProgram& program, const EvaluationContext& ctx) {
  return Solver(program, ctx).run();
}

std::optional<std::string> referent_variable(const SemanticProgram& program) {
  for (const auto& n : program.nodes) {
    if (n.op == "apply-dynamic-spatial-relation") return n.args[0];
  }
  for (const auto& n : program.nodes) {
    if (n.op == "select-event") return n.args[0];
  }
  std::optional<std::string> last;
  for (const auto& n : program.nodes) {
    if (n.op == "unique-entity") last = n.args[0];
  }
  return last;
}

std::vector<Value> referents(const SemanticProgram& program, const std::vector<EvaluationResult>& results) {
  std::vector<Value> out;
  const auto var = referent_variable(program);
  if (!var) return out;
  for (const auto& r : results) {
    auto it = r.bindings.find(*var);
    if (it == r.bindings.end()) continue;
    if (std::find(out.begin(), out.end(), it->second) == out.end()) out.push_back(it->second);
  }
  return out;
}

}  // namespace slg
