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

#include "slg/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

#include "slg/error.hpp"
#include "slg/rng.hpp"

namespace slg {

namespace detail {
extern const std::string_view kDefaultGrammarText;
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::pair<std::string, std::string> split_pair(const std::string& s, const std::string& where) {
  const auto eq = s.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == s.size()) {
    throw GrammarError(where + ": expected a=b, got '" + s + "'");
  }
  return {s.substr(0, eq), s.substr(eq + 1)};
}

const Slot* find_slot(const Construction& c, std::string_view name) {
  for (const auto& e : c.pattern) {
    if (const auto* s = std::get_if<Slot>(&e); s && s->name == name) return s;
  }
  return nullptr;
}

void check_ref(const Construction& c, const std::string& ref, const std::string& where) {
  if (ref.front() == '?') {
    const auto vars = c.semantics.variables();
    if (std::find(vars.begin(), vars.end(), ref) == vars.end()) {
      throw GrammarError(where + ": variable " + ref + " does not occur in the semantic pole");
    }
    return;
  }
  const auto dot = ref.find('.');
  if (dot == std::string::npos || !find_slot(c, ref.substr(0, dot))) {
    throw GrammarError(where + ": unknown reference '" + ref + "'");
  }
}

Construction parse_record(const std::string& line, std::size_t lineno) {
  const std::string where = "grammar line " + std::to_string(lineno);
  const auto fields = split(line, '|');
  if (fields.size() != 7) throw GrammarError(where + ": expected 7 fields, got " + std::to_string(fields.size()));
  Construction c;
  c.name = fields[0];
  if (fields[1] == "lexical") {
    c.kind = Construction::Kind::kLexical;
  } else if (fields[1] == "phrasal") {
    c.kind = Construction::Kind::kPhrasal;
  } else {
    throw GrammarError(where + ": unknown kind '" + fields[1] + "'");
  }
  c.category = fields[2];
  if (c.name.empty() || c.category.empty()) throw GrammarError(where + ": empty name or category");
  if (fields[3] != "-") {
    try {
      c.semantics = parse_sexpr(fields[3]);
    } catch (const DomainError& e) {
      throw GrammarError(where + ": " + e.what());
    }
  }
  for (const auto& w : words(fields[4])) {
    const auto colon = w.find(':');
    if (colon == std::string::npos) {
      c.pattern.emplace_back(w);
      continue;
    }
    Slot s{w.substr(0, colon), split(w.substr(colon + 1), '/')};
    if (s.name.empty() || s.categories.empty() || s.categories.front().empty()) {
      throw GrammarError(where + ": malformed slot '" + w + "'");
    }
    c.pattern.emplace_back(std::move(s));
  }
  if (c.pattern.empty()) throw GrammarError(where + ": empty syntactic pole");
  if (c.kind == Construction::Kind::kLexical &&
      (c.pattern.size() != 1 || !std::holds_alternative<std::string>(c.pattern.front()) || c.semantics.empty())) {
    throw GrammarError(where + ": a lexical construction pairs a fragment with one stem");
  }
  for (const auto& w : words(fields[5])) c.args.push_back(split_pair(w, where));
  for (const auto& w : words(fields[6])) c.equalities.push_back(split_pair(w, where));
  for (const auto& [name, ref] : c.args) check_ref(c, ref, where);
  for (const auto& [a, b] : c.equalities) {
    check_ref(c, a, where);
    check_ref(c, b, where);
  }
  return c;
}

}  // namespace

Grammar Grammar::load(std::string_view text) {
  Grammar g;
  std::size_t lineno = 0;
  std::set<std::string> names;
  for (const auto& raw : split(text, '\n')) {
    ++lineno;
    if (raw.empty() || raw.front() == '#') continue;
    Construction c = parse_record(raw, lineno);
    if (!names.insert(c.name).second) throw GrammarError("duplicate construction '" + c.name + "'");
    g.constructions_.push_back(std::move(c));
  }
  std::sort(g.constructions_.begin(), g.constructions_.end(),
            [](const Construction& a, const Construction& b) { return a.name < b.name; });
  for (const auto& c : g.constructions_) {
    if (c.kind == Construction::Kind::kLexical) {
      g.lexical_.push_back(&c);
      if (!g.by_stem_.emplace(c.stem(), &c).second) throw GrammarError("stem '" + c.stem() + "' is used twice");
      g.vocabulary_.insert(c.stem());
    } else {
      g.phrasal_.push_back(&c);
      for (const auto& e : c.pattern) {
        if (const auto* w = std::get_if<std::string>(&e)) g.vocabulary_.insert(*w);
      }
    }
  }
  return g;
}

const Grammar& Grammar::default_grammar() {
  static const Grammar g = load(detail::kDefaultGrammarText);
  return g;
}

namespace {

using VarMap = std::map<std::string, std::string>;

struct Unit {
  const Construction* cxn = nullptr;
  std::map<std::string, std::string> args;
  Utterance tokens;
  bool consumed = false;
  /// Program items claimed by a lexical unit; kept for retraction.
  std::vector<std::size_t> nodes;
  std::vector<std::size_t> binds;
};

bool accepts(const Slot& s, const std::string& category) {
  return std::find(s.categories.begin(), s.categories.end(), category) != s.categories.end();
}

/// Matches the items of `pattern` onto distinct unclaimed items of `prog`,
/// extending `map`. Calls `found` with the chosen item indices; stops at the
/// first match it accepts.
class ItemMatcher {
 public:
  ItemMatcher(const SemanticProgram& pattern, const SemanticProgram& prog, const std::vector<bool>& node_taken,
              const std::vector<bool>& bind_taken)
      : pattern_(pattern), prog_(prog), node_taken_(node_taken), bind_taken_(bind_taken) {}

  std::optional<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> find(VarMap& map) {
    nodes_.clear();
    binds_.clear();
    if (match_node(0, map)) return std::make_pair(nodes_, binds_);
    return std::nullopt;
  }

 private:
  static bool bind_var(VarMap& map, const std::string& from, const std::string& to, std::vector<std::string>& added) {
    auto it = map.find(from);
    if (it != map.end()) return it->second == to;
    map.emplace(from, to);
    added.push_back(from);
    return true;
  }

  bool match_node(std::size_t i, VarMap& map) {
    if (i == pattern_.nodes.size()) return match_bind(0, map);
    const auto& n = pattern_.nodes[i];
    for (std::size_t j = 0; j < prog_.nodes.size(); ++j) {
      if (node_taken_[j] || prog_.nodes[j].op != n.op) continue;
      if (std::find(nodes_.begin(), nodes_.end(), j) != nodes_.end()) continue;
      std::vector<std::string> added;
      bool ok = true;
      for (std::size_t k = 0; k < n.args.size() && ok; ++k) ok = bind_var(map, n.args[k], prog_.nodes[j].args[k], added);
      if (ok) {
        nodes_.push_back(j);
        if (match_node(i + 1, map)) return true;
        nodes_.pop_back();
      }
      for (const auto& v : added) map.erase(v);
    }
    return false;
  }

  bool match_bind(std::size_t i, VarMap& map) {
    if (i == pattern_.binds.size()) return true;
    const auto& b = pattern_.binds[i];
    for (std::size_t j = 0; j < prog_.binds.size(); ++j) {
      const auto& c = prog_.binds[j];
      if (bind_taken_[j] || c.kind != b.kind || c.symbol != b.symbol) continue;
      if (std::find(binds_.begin(), binds_.end(), j) != binds_.end()) continue;
      std::vector<std::string> added;
      if (bind_var(map, b.var, c.var, added)) {
        binds_.push_back(j);
        if (match_bind(i + 1, map)) return true;
        binds_.pop_back();
      }
      for (const auto& v : added) map.erase(v);
    }
    return false;
  }

  const SemanticProgram& pattern_;
  const SemanticProgram& prog_;
  const std::vector<bool>& node_taken_;
  const std::vector<bool>& bind_taken_;
  std::vector<std::size_t> nodes_;
  std::vector<std::size_t> binds_;
};

class Producer {
 public:
  Producer(const std::vector<const Construction*>& lexical, const std::vector<const Construction*>& phrasal,
           const SemanticProgram& meaning)
      : lexical_(lexical), phrasal_(phrasal), m_(meaning) {}

  std::optional<Utterance> run() {
    std::vector<bool> reserved(m_.binds.size(), false);
    while (true) {
      if (auto out = attempt(reserved)) return out;
      // Lexical units that attach to nothing cede their items to phrasal
      // constructions, and production starts over.
      bool changed = false;
      for (const auto& u : units_) {
        if (u.consumed || !u.nodes.empty() || u.cxn->kind != Construction::Kind::kLexical) continue;
        for (std::size_t b : u.binds) {
          if (!reserved[b]) changed = reserved[b] = true;
        }
      }
      if (!changed) return std::nullopt;
    }
  }

 private:
  std::optional<Utterance> attempt(const std::vector<bool>& reserved) {
    units_.clear();
    node_taken_.assign(m_.nodes.size(), false);
    bind_taken_.assign(m_.binds.size(), false);
    for (const Construction* c : lexical_) {
      while (true) {
        std::vector<bool> binds_blocked = bind_taken_;
        for (std::size_t i = 0; i < reserved.size(); ++i) binds_blocked[i] = binds_blocked[i] || reserved[i];
        VarMap map;
        auto hit = ItemMatcher(c->semantics, m_, node_taken_, binds_blocked).find(map);
        if (!hit) break;
        Unit u{c, {}, {c->stem()}, false, hit->first, hit->second};
        for (const auto& [name, ref] : c->args) u.args[name] = map.at(ref);
        claim(*hit);
        units_.push_back(std::move(u));
      }
    }
    while (apply_one()) {
    }
    const bool covered = std::all_of(node_taken_.begin(), node_taken_.end(), [](bool b) { return b; }) &&
                         std::all_of(bind_taken_.begin(), bind_taken_.end(), [](bool b) { return b; });
    const auto roots = std::count_if(units_.begin(), units_.end(), [](const Unit& u) { return !u.consumed; });
    if (!covered || roots != 1) return std::nullopt;
    for (const auto& u : units_) {
      if (!u.consumed) return u.tokens;
    }
    return std::nullopt;
  }

  void claim(const std::pair<std::vector<std::size_t>, std::vector<std::size_t>>& hit) {
    for (std::size_t i : hit.first) node_taken_[i] = true;
    for (std::size_t i : hit.second) bind_taken_[i] = true;
  }

  bool apply_one() {
    for (const Construction* c : phrasal_) {
      std::vector<const Slot*> slots;
      for (const auto& e : c->pattern) {
        if (const auto* s = std::get_if<Slot>(&e)) slots.push_back(s);
      }
      std::vector<std::size_t> chosen;
      if (assign(*c, slots, chosen)) return true;
    }
    return false;
  }

  bool assign(const Construction& c, const std::vector<const Slot*>& slots, std::vector<std::size_t>& chosen) {
    if (chosen.size() == slots.size()) return try_build(c, slots, chosen);
    const Slot& s = *slots[chosen.size()];
    for (std::size_t i = 0; i < units_.size(); ++i) {
      if (units_[i].consumed || !accepts(s, units_[i].cxn->category)) continue;
      if (std::find(chosen.begin(), chosen.end(), i) != chosen.end()) continue;
      chosen.push_back(i);
      if (assign(c, slots, chosen)) return true;
      chosen.pop_back();
    }
    return false;
  }

  bool try_build(const Construction& c, const std::vector<const Slot*>& slots, const std::vector<std::size_t>& chosen) {
    auto slot_arg = [&](const std::string& ref) -> std::optional<std::string> {
      const auto dot = ref.find('.');
      const std::string name = ref.substr(0, dot);
      for (std::size_t k = 0; k < slots.size(); ++k) {
        if (slots[k]->name != name) continue;
        auto it = units_[chosen[k]].args.find(ref.substr(dot + 1));
        if (it == units_[chosen[k]].args.end()) return std::nullopt;
        return it->second;
      }
      return std::nullopt;
    };
    VarMap own;
    auto resolve = [&](const std::string& ref) -> std::optional<std::string> {
      if (ref.front() != '?') return slot_arg(ref);
      auto it = own.find(ref);
      if (it == own.end()) return std::nullopt;
      return it->second;
    };
    for (const auto& [a, b] : c.equalities) {
      const auto ra = resolve(a);
      const auto rb = resolve(b);
      if (ra && rb) {
        if (*ra != *rb) return false;
      } else if (ra && b.front() == '?') {
        own[b] = *ra;
      } else if (rb && a.front() == '?') {
        own[a] = *rb;
      } else {
        return false;
      }
    }
    auto hit = ItemMatcher(c.semantics, m_, node_taken_, bind_taken_).find(own);
    if (!hit) return false;
    Unit u{&c, {}, {}, false, {}, {}};
    for (const auto& [name, ref] : c.args) {
      const auto r = resolve(ref);
      if (!r) return false;
      u.args[name] = *r;
    }
    std::size_t k = 0;
    for (const auto& e : c.pattern) {
      if (const auto* w = std::get_if<std::string>(&e)) {
        u.tokens.push_back(*w);
      } else {
        const auto& child = units_[chosen[k++]].tokens;
        u.tokens.insert(u.tokens.end(), child.begin(), child.end());
      }
    }
    claim(*hit);
    for (std::size_t i : chosen) units_[i].consumed = true;
    units_.push_back(std::move(u));
    return true;
  }

  const std::vector<const Construction*>& lexical_;
  const std::vector<const Construction*>& phrasal_;
  const SemanticProgram& m_;
  std::vector<Unit> units_;
  std::vector<bool> node_taken_;
  std::vector<bool> bind_taken_;
};

class UnionFind {
 public:
  std::string find(const std::string& v) {
    auto it = parent_.find(v);
    if (it == parent_.end() || it->second == v) return v;
    std::string root = find(it->second);
    parent_[v] = root;
    return root;
  }
  void unite(const std::string& a, const std::string& b) {
    const std::string ra = find(a);
    const std::string rb = find(b);
    if (ra != rb) parent_[rb] = ra;
  }

 private:
  std::map<std::string, std::string> parent_;
};

SemanticProgram rename(const SemanticProgram& p, const std::string& suffix) {
  SemanticProgram out = p;
  for (auto& n : out.nodes) {
    for (auto& a : n.args) a += suffix;
  }
  for (auto& b : out.binds) b.var += suffix;
  return out;
}

}  // namespace

std::optional<Utterance> Grammar::produce(const SemanticProgram& meaning) const {
  if (meaning.empty()) return std::nullopt;
  return Producer(lexical_, phrasal_, meaning).run();
}

SemanticProgram Grammar::parse(std::span<const std::string> tokens) const {
  struct Element {
    std::optional<Unit> unit;
    std::string word;
  };
  SemanticProgram items;
  UnionFind uf;
  std::vector<Element> elems;
  int counter = 0;
  auto absorb = [&](const SemanticProgram& p) {
    items.nodes.insert(items.nodes.end(), p.nodes.begin(), p.nodes.end());
    items.binds.insert(items.binds.end(), p.binds.begin(), p.binds.end());
  };

  for (const auto& t : tokens) {
    if (auto it = by_stem_.find(t); it != by_stem_.end()) {
      const Construction& c = *it->second;
      const std::string suffix = "-" + std::to_string(++counter);
      Unit u{&c, {}, {t}, false, {}, {}};
      for (const auto& [name, ref] : c.args) u.args[name] = ref + suffix;
      absorb(rename(c.semantics, suffix));
      elems.push_back({std::move(u), t});
    } else if (vocabulary_.contains(t)) {
      elems.push_back({std::nullopt, t});
    }
  }

  auto match_at = [&](const Construction& c, std::size_t start) {
    if (start + c.pattern.size() > elems.size()) return false;
    for (std::size_t k = 0; k < c.pattern.size(); ++k) {
      const Element& e = elems[start + k];
      if (const auto* w = std::get_if<std::string>(&c.pattern[k])) {
        if (e.unit || e.word != *w) return false;
      } else if (!e.unit || !accepts(std::get<Slot>(c.pattern[k]), e.unit->cxn->category)) {
        return false;
      }
    }
    return true;
  };

  auto apply = [&](const Construction& c, std::size_t start) {
    const std::string suffix = "-" + std::to_string(++counter);
    std::map<std::string, const Unit*> slots;
    for (std::size_t k = 0; k < c.pattern.size(); ++k) {
      if (const auto* s = std::get_if<Slot>(&c.pattern[k])) slots[s->name] = &*elems[start + k].unit;
    }
    auto resolve = [&](const std::string& ref) -> std::optional<std::string> {
      if (ref.front() == '?') return ref + suffix;
      const auto dot = ref.find('.');
      const auto& args = slots.at(ref.substr(0, dot))->args;
      auto it = args.find(ref.substr(dot + 1));
      if (it == args.end()) return std::nullopt;
      return it->second;
    };
    for (const auto& [a, b] : c.equalities) {
      const auto ra = resolve(a);
      const auto rb = resolve(b);
      if (ra && rb) uf.unite(*ra, *rb);
    }
    absorb(rename(c.semantics, suffix));
    Unit u{&c, {}, {}, false, {}, {}};
    for (const auto& [name, ref] : c.args) {
      if (auto r = resolve(ref)) u.args[name] = *r;
    }
    elems.erase(elems.begin() + static_cast<std::ptrdiff_t>(start),
                elems.begin() + static_cast<std::ptrdiff_t>(start + c.pattern.size()));
    elems.insert(elems.begin() + static_cast<std::ptrdiff_t>(start), Element{std::move(u), {}});
  };

  bool applied = true;
  while (applied) {
    applied = false;
    for (const Construction* c : phrasal_) {
      for (std::size_t start = 0; start < elems.size() && !applied; ++start) {
        if (match_at(*c, start)) {
          apply(*c, start);
          applied = true;
        }
      }
      if (applied) break;
    }
  }

  for (auto& n : items.nodes) {
    for (auto& a : n.args) a = uf.find(a);
  }
  for (auto& b : items.binds) b.var = uf.find(b.var);
  return items;
}

Utterance tokenize(std::string_view text) {
  std::string cleaned;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    cleaned += (std::isalnum(c) || ch == '-') ? static_cast<char>(std::tolower(c)) : ' ';
  }
  Utterance out;
  for (auto& w : words(cleaned)) {
    if (w == "to" && !out.empty() && out.back() == "in") {
      out.back() = "into";
    } else {
      out.push_back(std::move(w));
    }
  }
  return out;
}

std::string join(std::span<const std::string> tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

Utterance perturb(std::span<const std::string> tokens, int drop, bool permute, std::uint64_t seed) {
  if (drop < 0 || static_cast<std::size_t>(drop) > tokens.size()) {
    throw DomainError("cannot drop " + std::to_string(drop) + " of " + std::to_string(tokens.size()) + " words");
  }
  Rng rng(seed);
  auto shuffle = [&rng](auto& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i) - 1))]);
    }
  };
  std::vector<std::size_t> order(tokens.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  shuffle(order);
  std::vector<bool> dropped(tokens.size(), false);
  for (int i = 0; i < drop; ++i) dropped[order[static_cast<std::size_t>(i)]] = true;
  Utterance out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (!dropped[i]) out.push_back(tokens[i]);
  }
  if (permute) shuffle(out);
  return out;
}

}  // namespace slg
