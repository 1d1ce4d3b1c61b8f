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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "slg/error.hpp"
#include "slg/harness.hpp"
#include "slg/scene_io.hpp"

namespace {

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string scenes;
  std::string out;
};

slg::ExperimentConfig load_config(const Common& c) {
  slg::ExperimentConfig cfg;
  if (!c.config.empty()) cfg = slg::experiment_config_from_json(nlohmann::json::parse(slg::read_text_file(c.config)));
  if (c.seed) cfg.seed = *c.seed;
  return cfg;
}

std::vector<slg::ScenePair> load_or_generate(const Common& c, const slg::ExperimentConfig& cfg) {
  if (!c.scenes.empty()) return slg::load_pool(slg::read_text_file(c.scenes));
  return slg::generate_pool(cfg);
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
  } else {
    slg::write_text_file(c.out, text);
  }
}

const slg::ScenePair& pick(const std::vector<slg::ScenePair>& pool, std::size_t index) {
  if (index >= pool.size()) {
    throw slg::ConfigError("scene index " + std::to_string(index) + " out of range (pool has " +
                           std::to_string(pool.size()) + ")");
  }
  return pool[index];
}

void add_common(CLI::App* app, Common& c, bool scenes_flag = true) {
  app->add_option("--config", c.config, "Experiment config (JSON)")->check(CLI::ExistingFile);
  app->add_option("--seed", c.seed, "Base seed");
  if (scenes_flag) app->add_option("--scenes", c.scenes, "Scene pool (JSON); generated from the config when absent");
  app->add_option("--out", c.out, "Output file; stdout when absent");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spatial language games between two simulated robots"};
  app.require_subcommand(1);

  Common gen_opts;
  std::optional<int> gen_count;
  auto* generate = app.add_subcommand("generate", "Generate a scene pool");
  add_common(generate, gen_opts, false);
  generate->add_option("-n,--count", gen_count, "Number of scene pairs")->check(CLI::PositiveNumber);

  Common run_opts;
  std::string study;
  std::optional<double> drop_rate;
  std::string target;
  std::string reasoning;
  std::optional<int> drop_words;
  std::optional<bool> permute;
  std::optional<int> interactions;
  std::string log_path;
  auto* run = app.add_subcommand("run", "Run an experiment and write the results table");
  add_common(run, run_opts);
  run->add_option("--study", study, "Study")->check(CLI::IsMember({"baseline", "visual", "misaligned", "language"}));
  run->add_option("--drop-rate", drop_rate, "Frame drop rate")->check(CLI::Range(0.0, 1.0));
  run->add_option("--target", target, "Robots losing frames")->check(CLI::IsMember({"both", "only-a", "only-b"}));
  run->add_option("--reasoning", reasoning, "Hearer reasoning")->check(CLI::IsMember({"wr", "wor"}));
  run->add_option("--drop-words", drop_words, "Words dropped per utterance")->check(CLI::NonNegativeNumber);
  run->add_option("--permute", permute, "Shuffle the words of each utterance");
  run->add_option("--interactions", interactions, "Interactions per condition")->check(CLI::NonNegativeNumber);
  run->add_option("--log", log_path, "Per-interaction log file");

  Common desc_opts;
  std::size_t desc_index = 0;
  std::string desc_agent = "a";
  auto* describe = app.add_subcommand("describe", "List the events and descriptions of one scene");
  add_common(describe, desc_opts);
  describe->add_option("--index", desc_index, "Scene pair index");
  describe->add_option("--agent", desc_agent, "Observer")->check(CLI::IsMember({"a", "b"}));

  Common int_opts;
  std::size_t int_index = 0;
  std::string speaker = "a";
  std::string int_reasoning = "wor";
  int int_drop = 0;
  bool int_permute = false;
  std::uint64_t int_seed = 0;
  auto* interact = app.add_subcommand("interact", "Trace a single interaction");
  add_common(interact, int_opts);
  interact->add_option("--index", int_index, "Scene pair index");
  interact->add_option("--speaker", speaker, "Speaking robot")->check(CLI::IsMember({"a", "b"}));
  interact->add_option("--reasoning", int_reasoning, "Hearer reasoning")->check(CLI::IsMember({"wr", "wor"}));
  interact->add_option("--drop-words", int_drop, "Words dropped")->check(CLI::NonNegativeNumber);
  interact->add_option("--permute", int_permute, "Shuffle the words");
  interact->add_option("--interaction-seed", int_seed, "Seed of the topic choice and perturbation");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*generate) {
      auto cfg = load_config(gen_opts);
      if (gen_count) cfg.scenes = *gen_count;
      emit(gen_opts, slg::pool_to_json(slg::generate_pool(cfg)) + "\n");
    } else if (*run) {
      auto cfg = load_config(run_opts);
      if (!study.empty()) cfg.study = *slg::parse_study(study);
      if (drop_rate) cfg.drop_rate = *drop_rate;
      if (!target.empty()) cfg.target = slg::parse_target(target);
      if (!reasoning.empty()) cfg.reasoning = slg::parse_reasoning(reasoning);
      if (drop_words) cfg.drop_words_only = *drop_words;
      if (permute) cfg.permute_only = *permute;
      if (interactions) cfg.interactions = *interactions;
      slg::validate(cfg);
      const auto pool = load_or_generate(run_opts, cfg);
      std::ofstream log;
      if (!log_path.empty()) {
        log.open(log_path);
        if (!log) throw slg::ConfigError("cannot open log file " + log_path);
      }
      const auto table = slg::run_experiment(cfg, pool, log_path.empty() ? nullptr : &log);
      emit(run_opts, slg::format_table(table));
    } else if (*describe) {
      const auto cfg = load_config(desc_opts);
      const auto pool = load_or_generate(desc_opts, cfg);
      const auto& pair = pick(pool, desc_index);
      const slg::Scene& scene = desc_agent == "a" ? pair.a : pair.b;
      const auto ctx = slg::make_context(scene, pair.a.observer, pair.b.observer);
      std::ostringstream out;
      out << "observer " << scene.observer << " (" << slg::to_string(pair.truth.family) << ")\n\n";
      out << slg::format_fluents(ctx.fluents) << "\n" << slg::format_sequence(ctx.psi) << "\n";
      for (const auto& s : slg::enumerate_descriptions(scene, pair.a.observer, pair.b.observer)) out << s << "\n";
      emit(desc_opts, out.str());
    } else if (*interact) {
      const auto cfg = load_config(int_opts);
      const auto pool = load_or_generate(int_opts, cfg);
      slg::InteractionConfig icfg;
      icfg.reasoning = *slg::parse_reasoning(int_reasoning);
      icfg.drop_words = int_drop;
      icfg.permute = int_permute;
      const auto r = slg::run_interaction(pick(pool, int_index), speaker == "a", icfg, int_seed);
      std::ostringstream out;
      out << "speaker      " << r.speaker << "\n"
          << "hearer       " << r.hearer << "\n"
          << "topic        " << r.topic << "\n";
      if (r.meaning) out << "meaning\n" << slg::to_sexpr(*r.meaning);
      out << "utterance    " << slg::join(r.utterance) << "\n"
          << "heard        " << slg::join(r.heard) << "\n"
          << "referent     " << r.interpretation << "\n"
          << "succ " << r.succ << "  cm " << r.cm << "  pu " << r.pu << "  pm " << r.pm << "  im " << r.im
          << "  ol " << r.ol << "\n";
      emit(int_opts, out.str());
    }
  } catch (const slg::Error& e) {
    std::cerr << "slg: " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "slg: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
