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

#include "slg/program.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>

#include "slg/error.hpp"

namespace slg {

namespace {

constexpr std::array<std::string_view, 8> kKindNames = {
    "object-class",          "color-category",     "dynamic-spatial-relation", "static-spatial-relation",
    "frame-of-reference",    "event-profile",      "landmark-reference",       "event-class"};

constexpr std::array<std::string_view, 4> kClasses = {"block", "box", "robot", "region"};
constexpr std::array<std::string_view, 4> kColors = {"red", "green", "blue", "yellow"};
constexpr std::array<std::string_view, 4> kDynamic = {"across", "into", "out-of", "along"};
constexpr std::array<std::string_view, 6> kStatic = {"left", "right", "front", "back", "near", "far"};
constexpr std::array<std::string_view, 3> kFrames = {"relative", "intrinsic", "absolute"};
constexpr std::array<std::string_view, 3> kProfiles = {"path", "source", "goal"};
constexpr std::array<std::string_view, 2> kPerspectives = {"me", "you"};
constexpr std::array<std::string_view, 1> kEventClasses = {"move"};

struct OpInfo {
  std::string_view name;
  std::size_t arity;
};

constexpr std::array<OpInfo, 10> kOperations = {{
    {"get-context", 1},
    {"filter-by-class", 3},
    {"filter-by-color", 3},
    {"unique-entity", 2},
    {"select-event", 3},
    {"apply-path", 2},
    {"apply-source", 2},
    {"apply-goal", 2},
    {"apply-dynamic-spatial-relation", 4},
    {"apply-static-spatial-relation", 6},
}};

}  // namespace

std::string_view to_string(EntityKind k) { return kKindNames[static_cast<std::size_t>(k)]; }

std::optional<EntityKind> parse_entity_kind(std::string_view s) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == s) return static_cast<EntityKind>(i);
  }
  return std::nullopt;
}

std::span<const std::string_view> inventory(EntityKind k) {
  switch (k) {
    case EntityKind::kObjectClass: return kClasses;
    case EntityKind::kColorCategory: return kColors;
    case EntityKind::kDynamicSpatialRelation: return kDynamic;
    case EntityKind::kStaticSpatialRelation: return kStatic;
    case EntityKind::kFrameOfReference: return kFrames;
    case EntityKind::kEventProfile: return kProfiles;
    case EntityKind::kLandmarkReference: return kPerspectives;
    case EntityKind::kEventClass: return kEventClasses;
  }
  return {};
}

SemanticEntity make_entity(EntityKind kind, std::string_view symbol) {
  auto inv = inventory(kind);
  if (std::find(inv.begin(), inv.end(), symbol) == inv.end()) {
    throw DomainError("'" + std::string(symbol) + "' is not a " + std::string(to_string(kind)));
  }
  return {kind, std::string(symbol)};
}

std::optional<std::size_t> operation_arity(std::string_view op) {
  for (const auto& info : kOperations) {
    if (info.name == op) return info.arity;
  }
  return std::nullopt;
}

std::vector<std::string> SemanticProgram::variables() const {
  std::vector<std::string> out;
  auto add = [&](const std::string& v) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  };
  for (const auto& n : nodes) {
    for (const auto& a : n.args) add(a);
  }
  for (const auto& b : binds) add(b.var);
  return out;
}

const BindStatement* SemanticProgram::find_bind(std::string_view var) const {
  for (const auto& b : binds) {
    if (b.var == var) return &b;
  }
  return nullptr;
}

bool SemanticProgram::connected() const {
  const std::size_t n = size();
  if (n <= 1) return true;
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::map<std::string, std::size_t> owner;
  auto link = [&](std::size_t item, const std::string& var) {
    auto [it, inserted] = owner.emplace(var, item);
    if (!inserted) parent[find(item)] = find(it->second);
  };
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (const auto& a : nodes[i].args) link(i, a);
  }
  for (std::size_t i = 0; i < binds.size(); ++i) link(nodes.size() + i, binds[i].var);
  const std::size_t root = find(0);
  for (std::size_t i = 1; i < n; ++i) {
    if (find(i) != root) return false;
  }
  return true;
}

bool SemanticProgram::complete() const {
  if (nodes.empty() || !connected()) return false;
  return std::all_of(binds.begin(), binds.end(), [&](const BindStatement& b) {
    return std::any_of(nodes.begin(), nodes.end(), [&](const OperationNode& n) {
      return std::find(n.args.begin(), n.args.end(), b.var) != n.args.end();
    });
  });
}

std::string to_sexpr(const SemanticProgram& p) {
  std::string out;
  for (const auto& n : p.nodes) {
    out += "(" + n.op;
    for (const auto& a : n.args) out += " " + a;
    out += ")\n";
  }
  for (const auto& b : p.binds) {
    out += "(bind " + std::string(to_string(b.kind)) + " " + b.var;
    if (!b.open()) out += " " + b.symbol;
    out += ")\n";
  }
  return out;
}

namespace {

std::vector<std::vector<std::string>> read_lists(std::string_view text) {
  std::vector<std::vector<std::string>> lists;
  std::vector<std::string>* current = nullptr;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    if (!current) throw DomainError("program text: symbol outside parentheses: " + token);
    current->push_back(token);
    token.clear();
  };
  for (char c : text) {
    if (c == '(') {
      flush();
      if (current) throw DomainError("program text: nested list");
      current = &lists.emplace_back();
    } else if (c == ')') {
      flush();
      if (!current) throw DomainError("program text: unbalanced ')'");
      current = nullptr;
    } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      flush();
    } else {
      token += c;
    }
  }
  flush();
  if (current) throw DomainError("program text: unbalanced '('");
  return lists;
}

}  // namespace

SemanticProgram parse_sexpr(std::string_view text) {
  SemanticProgram p;
  for (auto& list : read_lists(text)) {
    if (list.empty()) throw DomainError("program text: empty list");
    const bool var_ok = std::all_of(list.begin() + 1, list.end(), [](const std::string& s) { return !s.empty(); });
    if (list[0] == "bind") {
      if (list.size() != 3 && list.size() != 4) throw DomainError("program text: malformed bind");
      auto kind = parse_entity_kind(list[1]);
      if (!kind) throw DomainError("program text: unknown entity kind " + list[1]);
      if (list[2].front() != '?') throw DomainError("program text: bind variable must start with '?'");
      BindStatement b{*kind, list[2], list.size() == 4 ? list[3] : std::string()};
      if (!b.open()) make_entity(b.kind, b.symbol);
      p.binds.push_back(std::move(b));
      continue;
    }
    auto arity = operation_arity(list[0]);
    if (!arity) throw DomainError("program text: unknown operation " + list[0]);
    if (list.size() - 1 != *arity || !var_ok) throw DomainError("program text: wrong arity for " + list[0]);
    for (std::size_t i = 1; i < list.size(); ++i) {
      if (list[i].front() != '?') throw DomainError("program text: argument must be a variable: " + list[i]);
    }
    p.nodes.push_back({list[0], {list.begin() + 1, list.end()}});
  }
  return p;
}

namespace {

class Isomorphism {
 public:
  Isomorphism(const SemanticProgram& a, const SemanticProgram& b) : a_(a), b_(b) {}

  bool run() {
    if (a_.nodes.size() != b_.nodes.size() || a_.binds.size() != b_.binds.size()) return false;
    used_nodes_.assign(b_.nodes.size(), false);
    used_binds_.assign(b_.binds.size(), false);
    return match_node(0);
  }

 private:
  bool map_var(const std::string& x, const std::string& y, std::vector<std::string>& added) {
    auto fx = forward_.find(x);
    auto by = backward_.find(y);
    if (fx != forward_.end() || by != backward_.end()) {
      return fx != forward_.end() && by != backward_.end() && fx->second == y && by->second == x;
    }
    forward_[x] = y;
    backward_[y] = x;
    added.push_back(x);
    return true;
  }

  void unmap(const std::vector<std::string>& added) {
    for (const auto& x : added) {
      backward_.erase(forward_[x]);
      forward_.erase(x);
    }
  }

  bool match_node(std::size_t i) {
    if (i == a_.nodes.size()) return match_bind(0);
    const auto& n = a_.nodes[i];
    for (std::size_t j = 0; j < b_.nodes.size(); ++j) {
      if (used_nodes_[j] || b_.nodes[j].op != n.op) continue;
      std::vector<std::string> added;
      bool ok = true;
      for (std::size_t k = 0; k < n.args.size() && ok; ++k) ok = map_var(n.args[k], b_.nodes[j].args[k], added);
      if (ok) {
        used_nodes_[j] = true;
        if (match_node(i + 1)) return true;
        used_nodes_[j] = false;
      }
      unmap(added);
    }
    return false;
  }

  bool match_bind(std::size_t i) {
    if (i == a_.binds.size()) return true;
    const auto& b = a_.binds[i];
    for (std::size_t j = 0; j < b_.binds.size(); ++j) {
      const auto& c = b_.binds[j];
      if (used_binds_[j] || c.kind != b.kind || c.symbol != b.symbol) continue;
      std::vector<std::string> added;
      if (map_var(b.var, c.var, added)) {
        used_binds_[j] = true;
        if (match_bind(i + 1)) return true;
        used_binds_[j] = false;
      }
      unmap(added);
    }
    return false;
  }

  const SemanticProgram& a_;
  const SemanticProgram& b_;
  std::map<std::string, std::string> forward_;
  std::map<std::string, std::string> backward_;
  std::vector<bool> used_nodes_;
  std::vector<bool> used_binds_;
};

}  // namespace

bool equivalent(const SemanticProgram& a, const SemanticProgram& b) { return Isomorphism(a, b).run(); }

SemanticProgram normalize_variables(const SemanticProgram& p) {
  std::map<std::string, std::string> names;
  for (const auto& v : p.variables()) names.emplace(v, "?v" + std::to_string(names.size()));
  SemanticProgram out = p;
  for (auto& n : out.nodes) {
    for (auto& a : n.args) a = names.at(a);
  }
  for (auto& b : out.binds) b.var = names.at(b.var);
  return out;
}

}  // namespace slg
