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

#include "slg/conceptualize.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace slg {

namespace {

std::string render_np(const NounPhrase& np) {
  std::string out = "the ";
  if (np.color) out += (np.color->empty() ? "?" : *np.color) + " ";
  return out + (np.cls.empty() ? "?" : np.cls);
}

std::string render_landmark(const LandmarkPhrase& lm) {
  if (const auto* p = std::get_if<std::string>(&lm)) return p->empty() ? "?" : *p;
  return render_np(std::get<NounPhrase>(lm));
}

std::string render_static(const StaticPhrase& s) {
  const std::string lm = render_landmark(s.landmark);
  if (s.relation == "front" || s.relation == "back") return "in " + s.relation + " of " + lm;
  if (s.relation == "near" || s.relation == "far") return s.relation + " " + lm;
  return (s.relation.empty() ? "?" : s.relation) + " of " + lm;
}

class ProgramBuilder {
 public:
  std::string var(std::string_view role) { return "?" + std::string(role) + "-" + std::to_string(++count_[std::string(role)]); }

  void node(std::string op, std::vector<std::string> args) { p_.nodes.push_back({std::move(op), std::move(args)}); }
  void bind(EntityKind kind, const std::string& v, std::string symbol) { p_.binds.push_back({kind, v, std::move(symbol)}); }

  std::string noun_phrase(const NounPhrase& np) {
    const std::string ctx = var("context");
    std::string set = var("objects");
    const std::string cls = var("class");
    node("get-context", {ctx});
    node("filter-by-class", {set, ctx, cls});
    bind(EntityKind::kObjectClass, cls, np.cls);
    if (np.color) {
      const std::string col = var("color");
      const std::string next = var("objects");
      node("filter-by-color", {next, set, col});
      bind(EntityKind::kColorCategory, col, *np.color);
      set = next;
    }
    const std::string obj = var("object");
    node("unique-entity", {obj, set});
    return obj;
  }

  void static_phrase(const StaticPhrase& s, const std::string& event, std::string_view profile) {
    const std::string loc = var("location");
    node(profile == "source" ? "apply-source" : "apply-goal", {loc, event});
    const std::string rel = var("relation");
    const std::string frame = var("frame");
    std::string lm;
    std::string persp;
    if (const auto* pronoun = std::get_if<std::string>(&s.landmark)) {
      lm = var("landmark");
      persp = lm;
      bind(EntityKind::kLandmarkReference, lm, *pronoun);
      bind(EntityKind::kFrameOfReference, frame, "intrinsic");
    } else {
      lm = noun_phrase(std::get<NounPhrase>(s.landmark));
      persp = var("perspective");
      bind(EntityKind::kFrameOfReference, frame, "relative");
      bind(EntityKind::kLandmarkReference, persp, "me");
    }
    node("apply-static-spatial-relation", {var("location"), loc, rel, lm, frame, persp});
    bind(EntityKind::kStaticSpatialRelation, rel, s.relation);
  }

  SemanticProgram take() { return std::move(p_); }

 private:
  SemanticProgram p_;
  std::map<std::string, int> count_;
};

}  // namespace

std::string to_string(const Description& d) {
  std::string out = render_np(d.subject);
  if (!d.moves()) return out;
  out += " moves";
  if (d.path) {
    const std::string rel = d.path->relation == "out-of" ? "out of" : (d.path->relation.empty() ? "?" : d.path->relation);
    out += " " + rel + " " + render_np(d.path->landmark);
  }
  if (d.source) out += " from " + render_static(*d.source);
  if (d.goal) out += " to " + render_static(*d.goal);
  return out;
}

SemanticProgram build_program(const Description& d) {
  ProgramBuilder b;
  const std::string subject = b.noun_phrase(d.subject);
  if (d.moves()) {
    const std::string event = b.var("event");
    const std::string ec = b.var("event-class");
    b.node("select-event", {event, subject, ec});
    b.bind(EntityKind::kEventClass, ec, "move");
    if (d.path) {
      const std::string path = b.var("path");
      const std::string rel = b.var("relation");
      b.node("apply-path", {path, event});
      const std::string lm = b.noun_phrase(d.path->landmark);
      b.node("apply-dynamic-spatial-relation", {b.var("events"), path, rel, lm});
      b.bind(EntityKind::kDynamicSpatialRelation, rel, d.path->relation);
    }
    if (d.source) b.static_phrase(*d.source, event, "source");
    if (d.goal) b.static_phrase(*d.goal, event, "goal");
  }
  return b.take();
}

double program_cost(const SemanticProgram& p) {
  return static_cast<double>(p.nodes.size()) + 0.1 * static_cast<double>(p.binds.size());
}

std::string to_string(const Topic& t) {
  switch (t.kind) {
    case Topic::Kind::kEvent:
      return std::string(to_string(t.event.kind)) + "(" + t.event.undergoer + ", " + t.event.landmark + ")";
    case Topic::Kind::kSource: return "source(" + t.object + ")";
    case Topic::Kind::kGoal: return "goal(" + t.object + ")";
    case Topic::Kind::kSourceGoal: return "source-goal(" + t.object + ")";
    case Topic::Kind::kObject: return t.object;
  }
  return "?";
}

std::vector<Topic> topics(const EvaluationContext& ctx) {
  std::vector<Topic> out;
  if (const SceneObject* b = ctx.moving_block()) {
    for (const auto& e : ctx.psi.events) {
      const bool seen = std::any_of(out.begin(), out.end(), [&](const Topic& t) { return t.event.same_type(e); });
      if (!seen) out.push_back({Topic::Kind::kEvent, e, b->id});
    }
    for (auto k : {Topic::Kind::kSource, Topic::Kind::kGoal, Topic::Kind::kSourceGoal}) out.push_back({k, {}, b->id});
  } else if (const SceneObject* b = ctx.scene.block()) {
    out.push_back({Topic::Kind::kObject, {}, b->id});
  }
  return out;
}

namespace {

std::string dynamic_symbol(EventKind k) {
  switch (k) {
    case EventKind::kMovesInto: return "into";
    case EventKind::kMovesOutOf: return "out-of";
    case EventKind::kMovesAcross: return "across";
    case EventKind::kMovesAlong: return "along";
  }
  return "";
}

std::vector<NounPhrase> noun_phrases(std::string_view cls) {
  std::vector<NounPhrase> out{{std::string(cls), std::nullopt}};
  for (auto c : inventory(EntityKind::kColorCategory)) out.push_back({std::string(cls), std::string(c)});
  return out;
}

std::vector<StaticPhrase> static_phrases(const ConceptualizeOptions& options) {
  std::vector<LandmarkPhrase> landmarks{std::string("me"), std::string("you")};
  for (const auto& np : noun_phrases("box")) landmarks.emplace_back(np);
  std::vector<StaticPhrase> out;
  for (const auto& lm : landmarks) {
    for (auto rel : inventory(EntityKind::kStaticSpatialRelation)) {
      if (!options.proximal && (rel == "near" || rel == "far")) continue;
      out.push_back({std::string(rel), lm});
    }
  }
  return out;
}

std::vector<Description> candidates(const Topic& topic, const EvaluationContext& ctx, const ConceptualizeOptions& options) {
  std::vector<Description> out;
  if (topic.kind == Topic::Kind::kObject) {
    const SceneObject* o = ctx.scene.find_object(topic.object);
    if (!o) return out;
    for (auto& np : noun_phrases(to_string(o->cls))) out.push_back({np, {}, {}, {}});
    return out;
  }
  const auto subjects = noun_phrases("block");
  const auto statics = static_phrases(options);
  for (const auto& s : subjects) {
    switch (topic.kind) {
      case Topic::Kind::kEvent:
        for (auto& lm : noun_phrases("region")) out.push_back({s, DynamicPhrase{dynamic_symbol(topic.event.kind), lm}, {}, {}});
        break;
      case Topic::Kind::kSource:
        for (const auto& st : statics) out.push_back({s, {}, st, {}});
        break;
      case Topic::Kind::kGoal:
        for (const auto& st : statics) out.push_back({s, {}, {}, st});
        break;
      case Topic::Kind::kSourceGoal:
        for (const auto& a : statics) {
          for (const auto& b : statics) out.push_back({s, {}, a, b});
        }
        break;
      case Topic::Kind::kObject:
        break;
    }
  }
  return out;
}

bool reaches(Goal goal, const Topic& topic, const std::vector<Value>& refs) {
  if (refs.empty()) return false;
  auto hits = [&](const Value& v) {
    if (topic.kind == Topic::Kind::kObject) {
      const auto* o = std::get_if<ObjectRef>(&v);
      return o && o->id == topic.object;
    }
    if (topic.kind == Topic::Kind::kEvent) {
      const auto* set = std::get_if<EventSetValue>(&v);
      return set && std::any_of(set->events.begin(), set->events.end(),
                                [&](const MovementEvent& e) { return e.same_type(topic.event); });
    }
    const auto* m = std::get_if<MovementValue>(&v);
    return m && m->undergoer == topic.object;
  };
  if (goal == Goal::kDescribe) return std::any_of(refs.begin(), refs.end(), hits);
  if (topic.kind == Topic::Kind::kEvent) {
    return std::all_of(refs.begin(), refs.end(), [&](const Value& v) {
      const auto* set = std::get_if<EventSetValue>(&v);
      return set && std::all_of(set->events.begin(), set->events.end(),
                                [&](const MovementEvent& e) { return e.same_type(topic.event); });
    });
  }
  return refs.size() == 1 && hits(refs.front());
}

double best_score(const std::vector<EvaluationResult>& results) {
  double s = 0.0;
  for (const auto& r : results) s = std::max(s, r.score);
  return s;
}

/// Definite noun phrases a speaker uses must pick out a single object.
bool individuates(const NounPhrase& np, const EvaluationContext& ctx) {
  const auto p = build_program({np, {}, {}, {}});
  return referents(p, evaluate(p, ctx)).size() == 1;
}

bool definite(const Description& d, const EvaluationContext& ctx) {
  std::vector<const NounPhrase*> nps{&d.subject};
  if (d.path) nps.push_back(&d.path->landmark);
  for (const auto* st : {&d.source, &d.goal}) {
    if (*st) {
      if (const auto* np = std::get_if<NounPhrase>(&(*st)->landmark)) nps.push_back(np);
    }
  }
  return std::all_of(nps.begin(), nps.end(), [&](const NounPhrase* np) { return individuates(*np, ctx); });
}

}  // namespace

std::optional<Conceptualization> conceptualize(Goal goal, const Topic& topic, const EvaluationContext& ctx,
                                               const ConceptualizeOptions& options) {
  struct Entry {
    double cost;
    std::string text;
    Description d;
    SemanticProgram p;
  };
  std::vector<Entry> frontier;
  for (auto& d : candidates(topic, ctx, options)) {
    SemanticProgram p = build_program(d);
    if (static_cast<int>(p.nodes.size()) > options.node_budget) continue;
    frontier.push_back({program_cost(p), to_string(d), std::move(d), std::move(p)});
  }
  std::sort(frontier.begin(), frontier.end(), [](const Entry& a, const Entry& b) {
    return a.cost != b.cost ? a.cost < b.cost : a.text < b.text;
  });

  std::optional<Conceptualization> best;
  double best_cost = 0.0;
  for (auto& e : frontier) {
    if (best && e.cost > best_cost) break;
    if (!definite(e.d, ctx)) continue;
    auto results = evaluate(e.p, ctx);
    if (!reaches(goal, topic, referents(e.p, results))) continue;
    const double score = best_score(results);
    if (!best || score > best->score) {
      best = Conceptualization{e.d, e.p, score};
      best_cost = e.cost;
    }
  }
  return best;
}

namespace {

bool picks_out(const NounPhrase& np, const EvaluationContext& ctx, const std::string& block) {
  const auto p = build_program({np, {}, {}, {}});
  const auto refs = referents(p, evaluate(p, ctx));
  return refs.size() == 1 && refs.front() == Value{ObjectRef{block}};
}

}  // namespace

std::vector<Description> enumerate_consistent(const EvaluationContext& ctx, bool simple_only,
                                              const ConceptualizeOptions& options) {
  std::vector<Description> out;
  if (!simple_only) {
    if (const SceneObject* b = ctx.scene.block()) {
      for (auto& np : noun_phrases("block")) {
        if (picks_out(np, ctx, b->id)) out.push_back({np, {}, {}, {}});
      }
    }
  }
  const SceneObject* block = ctx.moving_block();
  if (!block) return out;
  // One block per scene: a description holds exactly when its subject picks
  // out the block and its predicate holds for `the block`.
  const NounPhrase plain{"block", std::nullopt};
  std::vector<NounPhrase> subjects;
  for (const auto& np : noun_phrases("block")) {
    if (picks_out(np, ctx, block->id)) subjects.push_back(np);
  }
  auto holds = [&](const Description& d) { return definite(d, ctx) && !evaluate(build_program(d), ctx).empty(); };

  std::vector<Description> predicates;
  for (auto rel : inventory(EntityKind::kDynamicSpatialRelation)) {
    for (auto& lm : noun_phrases("region")) {
      Description d{plain, DynamicPhrase{std::string(rel), lm}, {}, {}};
      if (holds(d)) predicates.push_back(d);
    }
  }
  std::vector<StaticPhrase> sources;
  std::vector<StaticPhrase> goals;
  for (const auto& st : static_phrases(options)) {
    if (holds({plain, {}, st, {}})) sources.push_back(st);
    if (holds({plain, {}, {}, st})) goals.push_back(st);
  }
  for (const auto& s : sources) predicates.push_back({plain, {}, s, {}});
  for (const auto& g : goals) predicates.push_back({plain, {}, {}, g});
  if (!simple_only) {
    for (const auto& s : sources) {
      for (const auto& g : goals) predicates.push_back({plain, {}, s, g});
    }
  }
  for (const auto& subject : subjects) {
    for (auto d : predicates) {
      d.subject = subject;
      out.push_back(std::move(d));
    }
  }
  std::sort(out.begin(), out.end(), [](const Description& a, const Description& b) { return to_string(a) < to_string(b); });
  return out;
}

const std::vector<SemanticProgram>& completion_templates() {
  static const std::vector<SemanticProgram> templates = [] {
    const std::vector<NounPhrase> nps{{"", std::nullopt}, {"", std::string()}};
    std::vector<LandmarkPhrase> landmarks{std::string()};
    for (const auto& np : nps) landmarks.emplace_back(np);
    std::vector<StaticPhrase> statics;
    for (const auto& lm : landmarks) statics.push_back({"", lm});

    std::vector<SemanticProgram> out;
    for (const auto& s : nps) {
      out.push_back(build_program({s, {}, {}, {}}));
      for (const auto& lm : nps) out.push_back(build_program({s, DynamicPhrase{"", lm}, {}, {}}));
      for (const auto& st : statics) out.push_back(build_program({s, {}, st, {}}));
      for (const auto& st : statics) out.push_back(build_program({s, {}, {}, st}));
      for (const auto& a : statics) {
        for (const auto& b : statics) out.push_back(build_program({s, {}, a, b}));
      }
    }
    // Open every entity, including the frame and perspective binds that
    // descriptions fix.
    for (auto& p : out) {
      for (auto& b : p.binds) b.symbol.clear();
    }
    return out;
  }();
  return templates;
}

namespace {

/// Maps every item of a partial program onto a distinct template item of the
/// same operation or entity kind, through a variable mapping.
class Embedder {
 public:
  Embedder(const SemanticProgram& part, const SemanticProgram& tmpl) : part_(part), tmpl_(tmpl) {}

  /// Completed programs with the number of covered template nodes.
  std::vector<std::pair<SemanticProgram, int>> run() {
    if (!counts_fit()) return {};
    node_used_.assign(tmpl_.nodes.size(), false);
    bind_used_.assign(tmpl_.binds.size(), false);
    bind_target_.assign(part_.binds.size(), 0);
    match_node(0);
    return std::move(out_);
  }

 private:
  bool counts_fit() const {
    std::map<std::string, int> need;
    for (const auto& n : part_.nodes) ++need[n.op];
    for (const auto& b : part_.binds) ++need["bind " + std::string(to_string(b.kind))];
    for (const auto& n : tmpl_.nodes) --need[n.op];
    for (const auto& b : tmpl_.binds) --need["bind " + std::string(to_string(b.kind))];
    return std::all_of(need.begin(), need.end(), [](const auto& kv) { return kv.second <= 0; });
  }

  bool map_var(const std::string& from, const std::string& to, std::vector<std::string>& added) {
    auto it = map_.find(from);
    if (it != map_.end()) return it->second == to;
    map_.emplace(from, to);
    added.push_back(from);
    return true;
  }

  void unmap(const std::vector<std::string>& added) {
    for (const auto& v : added) map_.erase(v);
  }

  void match_node(std::size_t i) {
    if (i == part_.nodes.size()) {
      match_bind(0);
      return;
    }
    const auto& n = part_.nodes[i];
    for (std::size_t j = 0; j < tmpl_.nodes.size(); ++j) {
      if (node_used_[j] || tmpl_.nodes[j].op != n.op) continue;
      std::vector<std::string> added;
      bool ok = true;
      for (std::size_t k = 0; k < n.args.size() && ok; ++k) ok = map_var(n.args[k], tmpl_.nodes[j].args[k], added);
      if (ok) {
        node_used_[j] = true;
        match_node(i + 1);
        node_used_[j] = false;
      }
      unmap(added);
    }
  }

  void match_bind(std::size_t i) {
    if (i == part_.binds.size()) {
      emit();
      return;
    }
    const auto& b = part_.binds[i];
    for (std::size_t j = 0; j < tmpl_.binds.size(); ++j) {
      if (bind_used_[j] || tmpl_.binds[j].kind != b.kind) continue;
      std::vector<std::string> added;
      if (map_var(b.var, tmpl_.binds[j].var, added)) {
        bind_used_[j] = true;
        bind_target_[i] = j;
        match_bind(i + 1);
        bind_used_[j] = false;
      }
      unmap(added);
    }
  }

  void emit() {
    SemanticProgram p = tmpl_;
    for (std::size_t i = 0; i < part_.binds.size(); ++i) p.binds[bind_target_[i]].symbol = part_.binds[i].symbol;
    out_.emplace_back(std::move(p), static_cast<int>(part_.nodes.size()));
  }

  const SemanticProgram& part_;
  const SemanticProgram& tmpl_;
  std::map<std::string, std::string> map_;
  std::vector<bool> node_used_;
  std::vector<bool> bind_used_;
  std::vector<std::size_t> bind_target_;
  std::vector<std::pair<SemanticProgram, int>> out_;
};

/// Variables shared by two or more operation arguments.
std::vector<std::string> linking_variables(const SemanticProgram& program) {
  std::map<std::string, int> uses;
  for (const auto& n : program.nodes)
    for (const auto& a : n.args) ++uses[a];
  std::vector<std::string> out;
  for (const auto& [v, count] : uses)
    if (count >= 2) out.push_back(v);
  return out;
}

/// Renames the last node occurrence of `var`, detaching that node.
SemanticProgram dissolve(SemanticProgram program, const std::string& var, int tag) {
  for (auto n = program.nodes.rbegin(); n != program.nodes.rend(); ++n) {
    auto a = std::find(n->args.begin(), n->args.end(), var);
    if (a != n->args.end()) {
      *a = var + "~" + std::to_string(tag);
      break;
    }
  }
  return program;
}

std::vector<Interpretation> complete(const SemanticProgram& program, const SemanticProgram& parsed,
                                     const EvaluationContext& ctx, int budget, int dissolved,
                                     std::set<std::string>& seen) {
  std::vector<Interpretation> out;
  for (const auto& tmpl : completion_templates()) {
    for (auto& [completed, covered] : Embedder(program, tmpl).run()) {
      const int inserted = static_cast<int>(tmpl.nodes.size()) - covered;
      if (inserted > budget || !seen.insert(to_sexpr(completed)).second) continue;
      const double score = static_cast<double>(parsed.size()) / static_cast<double>(tmpl.size());
      for (auto& r : evaluate(completed, ctx)) out.push_back({completed, std::move(r), score, inserted, dissolved});
    }
  }
  return out;
}

}  // namespace

std::vector<Interpretation> interpret(const SemanticProgram& program, const EvaluationContext& ctx, int budget) {
  std::vector<Interpretation> out;
  for (auto& r : evaluate(program, ctx)) out.push_back({program, std::move(r), 1.0, 0, 0});
  if (!out.empty() || program.empty()) return out;

  // Misordered words can attach to the wrong phrase, so completions are also
  // sought with one and then two shared variables detached.
  std::set<std::string> seen;
  std::vector<SemanticProgram> level{program};
  for (int dissolved = 0; dissolved <= kMaxDissolvedLinks; ++dissolved) {
    std::vector<SemanticProgram> next;
    std::set<std::string> queued;
    for (const auto& p : level) {
      auto found = complete(p, program, ctx, budget, dissolved, seen);
      std::move(found.begin(), found.end(), std::back_inserter(out));
      if (dissolved == kMaxDissolvedLinks) continue;
      for (const auto& v : linking_variables(p)) {
        auto q = dissolve(p, v, dissolved);
        if (queued.insert(to_sexpr(q)).second) next.push_back(std::move(q));
      }
    }
    level = std::move(next);
  }
  std::stable_sort(out.begin(), out.end(), [](const Interpretation& a, const Interpretation& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.dissolved_links != b.dissolved_links) return a.dissolved_links < b.dissolved_links;
    return a.inserted_nodes < b.inserted_nodes;
  });
  return out;
}

}  // namespace slg
