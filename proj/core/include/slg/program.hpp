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

#ifndef SLG_PROGRAM_HPP_
#define SLG_PROGRAM_HPP_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace slg {

enum class EntityKind {
  kObjectClass,
  kColorCategory,
  kDynamicSpatialRelation,
  kStaticSpatialRelation,
  kFrameOfReference,
  kEventProfile,
  kLandmarkReference,
  kEventClass,
};

std::string_view to_string(EntityKind k);
std::optional<EntityKind> parse_entity_kind(std::string_view s);

/// Closed symbol inventory of an entity kind, in canonical order.
std::span<const std::string_view> inventory(EntityKind k);

struct SemanticEntity {
  EntityKind kind = EntityKind::kObjectClass;
  std::string symbol;
  friend bool operator==(const SemanticEntity&, const SemanticEntity&) = default;
  friend auto operator<=>(const SemanticEntity&, const SemanticEntity&) = default;
};

/// Throws DomainError when the symbol is outside the kind's inventory.
SemanticEntity make_entity(EntityKind kind, std::string_view symbol);

/// One application of a cognitive operation; variables start with '?'.
struct OperationNode {
  std::string op;
  std::vector<std::string> args;
  friend bool operator==(const OperationNode&, const OperationNode&) = default;
};

/// `(bind kind ?var symbol)`. An empty symbol leaves the entity open; the
/// evaluator then tries every symbol of the kind.
struct BindStatement {
  EntityKind kind = EntityKind::kObjectClass;
  std::string var;
  std::string symbol;
  friend bool operator==(const BindStatement&, const BindStatement&) = default;

  bool open() const { return symbol.empty(); }
};

struct SemanticProgram {
  std::vector<OperationNode> nodes;
  std::vector<BindStatement> binds;
  friend bool operator==(const SemanticProgram&, const SemanticProgram&) = default;

  bool empty() const { return nodes.empty() && binds.empty(); }
  std::size_t size() const { return nodes.size() + binds.size(); }
  /// Distinct variables in order of first use.
  std::vector<std::string> variables() const;
  const BindStatement* find_bind(std::string_view var) const;
  /// Variable-sharing graph over nodes and binds has one component.
  bool connected() const;
  /// Connected, and every bind variable is used by some node.
  bool complete() const;
};

/// Known operation names and their arities.
std::optional<std::size_t> operation_arity(std::string_view op);

/// Nodes `(op ?a ?b)` and binds `(bind kind ?v symbol)`, one per line.
std::string to_sexpr(const SemanticProgram& p);
/// Throws DomainError on malformed text or unknown operations.
SemanticProgram parse_sexpr(std::string_view text);

/// Same nodes and binds up to a consistent one-to-one variable renaming.
bool equivalent(const SemanticProgram& a, const SemanticProgram& b);

/// Renames variables to ?v0, ?v1, ... in order of first use.
SemanticProgram normalize_variables(const SemanticProgram& p);

}  // namespace slg

#endif  // SLG_PROGRAM_HPP_
