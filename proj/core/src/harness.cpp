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

#include "slg/harness.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <map>
#include <set>

#include "slg/error.hpp"
#include "slg/rng.hpp"
#include "slg/scene_io.hpp"

namespace slg {

std::string_view to_string(Study s) {
  switch (s) {
    case Study::kBaseline: return "baseline";
    case Study::kVisual: return "visual";
    case Study::kMisaligned: return "misaligned";
    case Study::kLanguage: return "language";
  }
  return "?";
}

std::string_view to_string(Target t) {
  switch (t) {
    case Target::kBoth: return "both";
    case Target::kOnlyA: return "only-a";
    case Target::kOnlyB: return "only-b";
  }
  return "?";
}

std::string_view to_string(OverlapLevel o) { return o == OverlapLevel::kMeaning ? "meaning" : "utterance"; }

std::optional<Study> parse_study(std::string_view s) {
  for (auto v : {Study::kBaseline, Study::kVisual, Study::kMisaligned, Study::kLanguage}) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

std::optional<Target> parse_target(std::string_view s) {
  for (auto v : {Target::kBoth, Target::kOnlyA, Target::kOnlyB}) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

std::optional<OverlapLevel> parse_overlap(std::string_view s) {
  for (auto v : {OverlapLevel::kMeaning, OverlapLevel::kUtterance}) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

AgentContexts make_agent_contexts(const ScenePair& pair, const ContextOptions& hearer_options) {
  ContextOptions speaking = hearer_options;
  speaking.reasoning = Reasoning::kWithout;
  return {speaker_context(pair.a, speaking), hearer_context(pair.b, hearer_options), speaker_context(pair.b, speaking),
          hearer_context(pair.a, hearer_options)};
}

InteractionResult run_interaction(const ScenePair& pair, bool a_speaks, const InteractionConfig& config,
                                  std::uint64_t seed, const Grammar& grammar) {
  ContextOptions options;
  options.reasoning = config.reasoning;
  options.depth = config.depth;
  return run_interaction(make_agent_contexts(pair, options), a_speaks, config, seed, grammar);
}

namespace {

bool overlaps(const SemanticProgram& meaning, const Utterance& utterance, const EvaluationContext& hearer,
              const InteractionConfig& config, const Grammar& grammar) {
  for (const auto& d : enumerate_consistent(hearer, false, config.conceptualize)) {
    const SemanticProgram p = build_program(d);
    if (config.overlap == OverlapLevel::kMeaning) {
      if (equivalent(p, meaning)) return true;
    } else if (auto u = grammar.produce(p); u && *u == utterance) {
      return true;
    }
  }
  return false;
}

}  // namespace

InteractionResult run_interaction(const AgentContexts& contexts, bool a_speaks, const InteractionConfig& config,
                                  std::uint64_t seed, const Grammar& grammar) {
  const EvaluationContext& speaker = a_speaks ? contexts.a_speaking : contexts.b_speaking;
  const EvaluationContext& hearer = a_speaks ? contexts.b_hearing : contexts.a_hearing;
  InteractionResult r;
  r.speaker = speaker.me;
  r.hearer = speaker.you;
  Rng rng(seed);

  const auto candidates = topics(speaker);
  if (candidates.empty()) return r;
  const Topic& topic = candidates[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(candidates.size()) - 1))];
  r.topic = to_string(topic);
  const Goal goal = topic.kind == Topic::Kind::kObject ? Goal::kDiscriminate : Goal::kDescribe;
  auto conc = conceptualize(goal, topic, speaker, config.conceptualize);
  r.cm = conc.has_value();
  if (!r.cm) return r;
  r.meaning = conc->program;

  auto utterance = grammar.produce(conc->program);
  r.pu = utterance.has_value();
  if (!r.pu) return r;
  r.utterance = *utterance;

  const int drop = std::min<int>(config.drop_words, static_cast<int>(r.utterance.size()));
  r.heard = perturb(r.utterance, drop, config.permute, rng.next());
  const SemanticProgram parsed = grammar.parse(r.heard);
  r.pm = !parsed.empty();
  if (!r.pm) return r;

  const auto interpretations = interpret(parsed, hearer, config.completion_budget);
  r.im = !interpretations.empty();
  r.succ = r.im;
  if (r.im) {
    const auto& best = interpretations.front();
    const auto refs = referents(best.program, {best.result});
    r.interpretation = refs.empty() ? "consistent" : to_string(refs.front());
  }
  r.ol = overlaps(conc->program, r.utterance, hearer, config, grammar);
  return r;
}

std::vector<std::string> enumerate_descriptions(const Scene& scene, const std::string& me, const std::string& you,
                                                const Grammar& grammar) {
  const EvaluationContext ctx = make_context(scene, me, you);
  std::set<std::string> out;
  for (const auto& d : enumerate_consistent(ctx, true)) {
    if (auto u = grammar.produce(build_program(d))) out.insert(join(*u));
  }
  return {out.begin(), out.end()};
}

FScore fscore(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  const std::set<std::string> sa(a.begin(), a.end());
  const std::set<std::string> sb(b.begin(), b.end());
  std::size_t tp = 0;
  for (const auto& s : sa) tp += sb.count(s);
  const std::size_t fn = sa.size() - tp;
  const std::size_t fp = sb.size() - tp;
  FScore f;
  if (tp + fp == 0 || tp + fn == 0) f.degenerate = true;
  f.precision = tp + fp ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
  f.recall = tp + fn ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
  if (f.precision + f.recall > 0.0) {
    f.fscore = 2.0 * f.precision * f.recall / (f.precision + f.recall);
  } else {
    f.degenerate = f.degenerate || tp == 0;
  }
  return f;
}

void validate(const ExperimentConfig& c) {
  if (c.scenes < 1) throw ConfigError("scenes must be at least 1");
  if (c.interactions < 0) throw ConfigError("interactions must be non-negative");
  auto rate_ok = [](double r) { return r >= 0.0 && r <= 1.0; };
  if (!std::all_of(c.drop_rates.begin(), c.drop_rates.end(), rate_ok) || (c.drop_rate && !rate_ok(*c.drop_rate))) {
    throw ConfigError("drop rates must lie in [0, 1]");
  }
  auto words_ok = [](int d) { return d >= 0; };
  if (!std::all_of(c.drop_words.begin(), c.drop_words.end(), words_ok) ||
      (c.drop_words_only && !words_ok(*c.drop_words_only))) {
    throw ConfigError("dropped word counts must be non-negative");
  }
  if (c.depth < 0 || c.completion_budget < 0 || c.node_budget < 1) throw ConfigError("invalid search budgets");
  if (c.targets.empty() || c.drop_words.empty() || c.permute.empty()) throw ConfigError("empty sweep");
}

namespace {

template <class T>
T get_or(const nlohmann::json& doc, const char* key, T fallback) {
  return doc.contains(key) ? doc.at(key).get<T>() : fallback;
}

template <class T, class Parse>
T parse_enum(const nlohmann::json& v, Parse parse, const char* what) {
  const auto s = v.get<std::string>();
  auto r = parse(s);
  if (!r) throw ConfigError(std::string("unknown ") + what + " '" + s + "'");
  return *r;
}

}  // namespace

ExperimentConfig experiment_config_from_json(const nlohmann::json& doc) {
  try {
    if (!doc.is_object()) throw ConfigError("experiment config must be an object");
    static const std::set<std::string, std::less<>> known = {
        "seed",   "scenes",     "interactions", "generation", "study",        "drop_rates",
        "targets", "drop_rate", "target",       "reasoning",  "drop_words",   "permute",
        "depth",  "completion_budget", "node_budget", "overlap", "fscores"};
    for (auto it = doc.begin(); it != doc.end(); ++it) {
      if (!known.contains(it.key())) throw ConfigError("unknown experiment key '" + it.key() + "'");
    }
    ExperimentConfig c;
    c.seed = get_or<std::uint64_t>(doc, "seed", c.seed);
    c.scenes = get_or<int>(doc, "scenes", c.scenes);
    c.interactions = get_or<int>(doc, "interactions", c.interactions);
    if (doc.contains("generation")) c.generation = generation_config_from_json(doc.at("generation"));
    if (doc.contains("study")) c.study = parse_enum<Study>(doc.at("study"), parse_study, "study");
    c.drop_rates = get_or<std::vector<double>>(doc, "drop_rates", c.drop_rates);
    if (doc.contains("targets")) {
      c.targets.clear();
      for (const auto& t : doc.at("targets")) c.targets.push_back(parse_enum<Target>(t, parse_target, "target"));
    }
    if (doc.contains("drop_rate")) c.drop_rate = doc.at("drop_rate").get<double>();
    if (doc.contains("target")) c.target = parse_enum<Target>(doc.at("target"), parse_target, "target");
    if (doc.contains("reasoning")) c.reasoning = parse_enum<Reasoning>(doc.at("reasoning"), parse_reasoning, "reasoning");
    if (doc.contains("drop_words")) {
      const auto& v = doc.at("drop_words");
      if (v.is_array()) {
        c.drop_words = v.get<std::vector<int>>();
      } else {
        c.drop_words_only = v.get<int>();
      }
    }
    if (doc.contains("permute")) {
      const auto& v = doc.at("permute");
      if (v.is_array()) {
        c.permute = v.get<std::vector<bool>>();
      } else {
        c.permute_only = v.get<bool>();
      }
    }
    c.depth = get_or<int>(doc, "depth", c.depth);
    c.completion_budget = get_or<int>(doc, "completion_budget", c.completion_budget);
    c.node_budget = get_or<int>(doc, "node_budget", c.node_budget);
    if (doc.contains("overlap")) c.overlap = parse_enum<OverlapLevel>(doc.at("overlap"), parse_overlap, "overlap");
    c.fscores = get_or<bool>(doc, "fscores", c.fscores);
    validate(c);
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("experiment config: ") + e.what());
  } catch (const SceneError& e) {
    throw ConfigError(std::string("experiment config: ") + e.what());
  }
}

nlohmann::json to_json(const ExperimentConfig& c) {
  nlohmann::json doc;
  doc["seed"] = c.seed;
  doc["scenes"] = c.scenes;
  doc["interactions"] = c.interactions;
  doc["generation"] = to_json(c.generation);
  doc["study"] = std::string(to_string(c.study));
  doc["drop_rates"] = c.drop_rates;
  doc["targets"] = nlohmann::json::array();
  for (auto t : c.targets) doc["targets"].push_back(std::string(to_string(t)));
  if (c.drop_rate) doc["drop_rate"] = *c.drop_rate;
  if (c.target) doc["target"] = std::string(to_string(*c.target));
  if (c.reasoning) doc["reasoning"] = std::string(to_string(*c.reasoning));
  if (c.drop_words_only) {
    doc["drop_words"] = *c.drop_words_only;
  } else {
    doc["drop_words"] = c.drop_words;
  }
  if (c.permute_only) {
    doc["permute"] = *c.permute_only;
  } else {
    doc["permute"] = c.permute;
  }
  doc["depth"] = c.depth;
  doc["completion_budget"] = c.completion_budget;
  doc["node_budget"] = c.node_budget;
  doc["overlap"] = std::string(to_string(c.overlap));
  doc["fscores"] = c.fscores;
  return doc;
}

std::vector<Condition> conditions(const ExperimentConfig& c) {
  const Reasoning reasoning = c.reasoning.value_or(Reasoning::kWithout);
  const int words = c.drop_words_only.value_or(0);
  const bool permute = c.permute_only.value_or(false);
  const double rate = c.drop_rate.value_or(0.0);
  const Target target = c.target.value_or(Target::kBoth);
  std::vector<Condition> out;
  switch (c.study) {
    case Study::kBaseline:
      out.push_back({Study::kBaseline, rate, target, reasoning, words, permute});
      break;
    case Study::kVisual: {
      const std::vector<double> rates = c.drop_rate ? std::vector<double>{*c.drop_rate} : c.drop_rates;
      const std::vector<Target> targets = c.target ? std::vector<Target>{*c.target} : c.targets;
      if (!c.drop_rate && !c.target) out.push_back({Study::kVisual, 0.0, Target::kBoth, reasoning, words, permute});
      for (double r : rates) {
        for (Target t : targets) out.push_back({Study::kVisual, r, t, reasoning, words, permute});
      }
      break;
    }
    case Study::kMisaligned:
      if (c.reasoning) {
        out.push_back({Study::kMisaligned, rate, target, *c.reasoning, words, permute});
      } else {
        out.push_back({Study::kMisaligned, rate, target, Reasoning::kWithout, words, permute});
        out.push_back({Study::kMisaligned, rate, target, Reasoning::kWith, words, permute});
      }
      break;
    case Study::kLanguage: {
      const std::vector<int> ds = c.drop_words_only ? std::vector<int>{*c.drop_words_only} : c.drop_words;
      const std::vector<bool> ps = c.permute_only ? std::vector<bool>{*c.permute_only} : c.permute;
      for (int d : ds) {
        for (bool p : ps) out.push_back({Study::kLanguage, rate, target, reasoning, d, p});
      }
      break;
    }
  }
  return out;
}

bool misaligned(const ScenePair& pair) {
  auto signature = [](const Scene& s) {
    std::multiset<std::pair<EventKind, std::string>> out;
    for (const auto& e : detect_events(extract_fluents(s)).events) out.emplace(e.kind, e.landmark);
    return out;
  };
  return signature(pair.a) != signature(pair.b);
}

std::vector<ScenePair> generate_pool(const ExperimentConfig& config) {
  std::vector<ScenePair> pool;
  pool.reserve(static_cast<std::size_t>(config.scenes));
  for (int i = 0; i < config.scenes; ++i) {
    pool.push_back(generate_scene_pair(config.generation, derive_seed(config.seed, 10'000 + static_cast<std::uint64_t>(i))));
  }
  return pool;
}

std::vector<ScenePair> load_pool(std::string_view text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    const auto& list = doc.is_array() ? doc : doc.at("scene_pairs");
    std::vector<ScenePair> pool;
    for (const auto& p : list) pool.push_back(scene_pair_from_json(p));
    if (pool.empty()) throw SceneError("scene pool is empty");
    return pool;
  } catch (const nlohmann::json::exception& e) {
    throw SceneError(std::string("scene pool: ") + e.what());
  }
}

std::string pool_to_json(const std::vector<ScenePair>& pool) {
  nlohmann::json doc;
  doc["scene_pairs"] = nlohmann::json::array();
  for (const auto& p : pool) doc["scene_pairs"].push_back(to_json(p));
  return doc.dump(1);
}

namespace {

constexpr std::uint64_t kDropStream = 0xD809;
constexpr std::uint64_t kInteractionStream = 1'000'000;

ScenePair degrade(const ScenePair& pair, double rate, Target target, std::uint64_t seed, std::size_t index) {
  if (rate <= 0.0) return pair;
  ScenePair out = pair;
  const std::uint64_t base = derive_seed(seed, kDropStream);
  if (target != Target::kOnlyB) out.a = drop_frames(pair.a, rate, derive_seed(base, 2 * index));
  if (target != Target::kOnlyA) out.b = drop_frames(pair.b, rate, derive_seed(base, 2 * index + 1));
  return out;
}

std::string flag(bool b) { return b ? "1" : "0"; }

}  // namespace

MetricsTable run_experiment(const ExperimentConfig& config, const std::vector<ScenePair>& pool, std::ostream* log) {
  validate(config);
  if (pool.empty()) throw SceneError("scene pool is empty");

  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (config.study != Study::kMisaligned || misaligned(pool[i])) eligible.push_back(i);
  }

  MetricsTable table;
  std::map<std::pair<double, Target>, std::array<double, 3>> fscore_cache;
  const auto conds = conditions(config);
  for (std::size_t ci = 0; ci < conds.size(); ++ci) {
    const Condition& cond = conds[ci];
    MetricsRow row;
    row.condition = cond;

    std::vector<ScenePair> degraded;
    degraded.reserve(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) degraded.push_back(degrade(pool[i], cond.drop_rate, cond.target, config.seed, i));

    if (config.fscores) {
      const auto key = std::make_pair(cond.drop_rate, cond.target);
      auto it = fscore_cache.find(key);
      if (it == fscore_cache.end()) {
        std::array<double, 3> sum{0.0, 0.0, 0.0};
        int counted = 0;
        for (std::size_t i : eligible) {
          const auto& p = degraded[i];
          const auto da = enumerate_descriptions(p.a, p.a.observer, p.b.observer);
          const auto db = enumerate_descriptions(p.b, p.a.observer, p.b.observer);
          if (da.empty() && db.empty()) continue;
          const FScore f = fscore(da, db);
          sum[0] += f.precision;
          sum[1] += f.recall;
          sum[2] += f.fscore;
          ++counted;
        }
        if (counted > 0) {
          for (auto& s : sum) s /= counted;
        }
        it = fscore_cache.emplace(key, sum).first;
      }
      row.precision = it->second[0];
      row.recall = it->second[1];
      row.fscore = it->second[2];
    }

    InteractionConfig icfg;
    icfg.reasoning = cond.reasoning;
    icfg.depth = config.depth;
    icfg.drop_words = cond.drop_words;
    icfg.permute = cond.permute;
    icfg.completion_budget = config.completion_budget;
    icfg.conceptualize.node_budget = config.node_budget;
    icfg.overlap = config.overlap;
    ContextOptions hearer_options;
    hearer_options.reasoning = cond.reasoning;
    hearer_options.depth = config.depth;

    std::map<std::size_t, AgentContexts> contexts;
    std::array<int, 6> counts{};
    if (!eligible.empty()) {
      for (int i = 0; i < config.interactions; ++i) {
        Rng rng(derive_seed(config.seed, kInteractionStream + static_cast<std::uint64_t>(i)));
        const std::size_t idx =
            eligible[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(eligible.size()) - 1))];
        const bool a_speaks = rng.bernoulli(0.5);
        auto it = contexts.find(idx);
        if (it == contexts.end()) it = contexts.emplace(idx, make_agent_contexts(degraded[idx], hearer_options)).first;
        const InteractionResult r = run_interaction(it->second, a_speaks, icfg, rng.next());
        counts[0] += r.succ;
        counts[1] += r.cm;
        counts[2] += r.pu;
        counts[3] += r.pm;
        counts[4] += r.im;
        counts[5] += r.ol;
        ++row.interactions;
        if (log) {
          *log << ci << '\t' << i << '\t' << idx << '\t' << r.speaker << '\t' << r.topic << '\t' << join(r.utterance)
               << '\t' << join(r.heard) << '\t' << flag(r.succ) << flag(r.cm) << flag(r.pu) << flag(r.pm) << flag(r.im)
               << flag(r.ol) << '\t' << r.interpretation << '\n';
        }
      }
    }
    if (row.interactions > 0) {
      const double n = row.interactions;
      row.succ = counts[0] / n;
      row.cm = counts[1] / n;
      row.pu = counts[2] / n;
      row.pm = counts[3] / n;
      row.im = counts[4] / n;
      row.ol = counts[5] / n;
    }
    table.rows.push_back(row);
  }
  return table;
}

MetricsTable run_experiment(const ExperimentConfig& config) { return run_experiment(config, generate_pool(config)); }

std::string format_table(const MetricsTable& table) {
  std::string out =
      "study,drop_rate,target,reasoning,drop_words,permute,interactions,succ,cm,pu,pm,im,ol,precision,recall,fscore\n";
  char buf[256];
  for (const auto& r : table.rows) {
    const auto& c = r.condition;
    std::snprintf(buf, sizeof buf, "%s,%.2f,%s,%s,%d,%s,%d,%.4f,%.4f,%.4f,%.4f,%.4f,%.4f,%.4f,%.4f,%.4f\n",
                  std::string(to_string(c.study)).c_str(), c.drop_rate, std::string(to_string(c.target)).c_str(),
                  std::string(to_string(c.reasoning)).c_str(), c.drop_words, c.permute ? "true" : "false",
                  r.interactions, r.succ, r.cm, r.pu, r.pm, r.im, r.ol, r.precision, r.recall, r.fscore);
    out += buf;
  }
  return out;
}

}  // namespace slg
