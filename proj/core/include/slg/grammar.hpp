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

#ifndef SLG_GRAMMAR_HPP_
#define SLG_GRAMMAR_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "slg/program.hpp"

namespace slg {

using Utterance = std::vector<std::string>;

/// `NAME:cat1/cat2` in a syntactic pole.
struct Slot {
  std::string name;
  std::vector<std::string> categories;
};

/// A slot or a literal word.
using PatternElement = std::variant<Slot, std::string>;

struct Construction {
  enum class Kind { kLexical, kPhrasal };

  std::string name;
  Kind kind = Kind::kLexical;
  std::string category;
  /// Items the construction contributes, over its own variables.
  SemanticProgram semantics;
  /// A lexical construction has exactly one literal, its stem.
  std::vector<PatternElement> pattern;
  /// Exported argument name to reference (`?var` or `SLOT.arg`).
  std::vector<std::pair<std::string, std::string>> args;
  /// Pairs of references that denote the same variable.
  std::vector<std::pair<std::string, std::string>> equalities;

  const std::string& stem() const { return std::get<std::string>(pattern.front()); }
};

class Grammar {
 public:
  /// Parses a construction catalog. Throws GrammarError on malformed records.
  static Grammar load(std::string_view text);
  /// The catalog shipped with the library.
  static const Grammar& default_grammar();

  const std::vector<Construction>& constructions() const { return constructions_; }
  /// Stems of lexical constructions plus the literal words of phrasal ones.
  const std::set<std::string>& vocabulary() const { return vocabulary_; }

  /// Renders a meaning. nullopt when some item stays uncovered or the
  /// constructions do not combine into a single phrase.
  std::optional<Utterance> produce(const SemanticProgram& meaning) const;

  /// Recovers the meaning of an utterance. Unknown words are skipped and
  /// phrasal constructions apply wherever they match; what does not combine
  /// stays as separate fragments.
  SemanticProgram parse(std::span<const std::string> tokens) const;

 private:
  std::vector<Construction> constructions_;
  std::set<std::string> vocabulary_;
  std::vector<const Construction*> lexical_;
  std::vector<const Construction*> phrasal_;
  std::map<std::string, const Construction*, std::less<>> by_stem_;
};

/// Lowercases, strips punctuation, splits on whitespace and joins `in to`
/// into `into`.
Utterance tokenize(std::string_view text);
std::string join(std::span<const std::string> tokens);

/// Drops `drop` tokens chosen uniformly at random, keeping order, then
/// shuffles the rest when `permute` is set. Deterministic in `seed`.
Utterance perturb(std::span<const std::string> tokens, int drop, bool permute, std::uint64_t seed);

}  // namespace slg

#endif  // SLG_GRAMMAR_HPP_
