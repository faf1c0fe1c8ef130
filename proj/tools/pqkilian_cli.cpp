// Copyright 2026 The pqkilian Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "pqkilian/experiments/scenarios.hpp"

using namespace pqk;

int main(int argc, char** argv) {
  CLI::App app{"pqkilian: desk-scale scenario runner"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "enumerate scenarios");

  auto* run = app.add_subcommand("run", "run a scenario and report pass/fail");
  std::string scenario, config_path, out_dir, seeds;
  int jobs = 1;
  run->add_option("scenario", scenario, "scenario name")->required();
  run->add_option("--config", config_path, "JSON config file with scenario parameters");
  run->add_option("--out", out_dir, "output directory for raw JSON-lines and the summary");
  run->add_option("--seeds", seeds, "seed range a..b (overrides the config)");
  run->add_option("--jobs", jobs, "worker threads across seeds");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*list) {
      for (const auto& [name, fn] : exp::scenario_registry()) std::cout << name << "\n";
      return 0;
    }

    exp::ScenarioConfig cfg;
    cfg.scenario = scenario;
    cfg.jobs = jobs;
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      if (!f) throw std::runtime_error("cannot open config: " + config_path);
      nlohmann::json j;
      f >> j;
      if (j.contains("params")) cfg.params = j.at("params");
      if (j.contains("seed_begin")) cfg.seed_begin = j.at("seed_begin").get<std::uint64_t>();
      if (j.contains("seed_end")) cfg.seed_end = j.at("seed_end").get<std::uint64_t>();
    }
    if (!seeds.empty()) {
      auto pos = seeds.find("..");
      if (pos == std::string::npos) throw std::runtime_error("--seeds wants a..b");
      cfg.seed_begin = std::stoull(seeds.substr(0, pos));
      cfg.seed_end = std::stoull(seeds.substr(pos + 2));
    }
    if (cfg.seed_end <= cfg.seed_begin) cfg.seed_end = cfg.seed_begin + 100;

    exp::Report rep = exp::run_scenario(cfg);
    if (!out_dir.empty()) rep.write(out_dir);

    for (const auto& c : rep.checks)
      std::cout << (c.pass ? "PASS " : "FAIL ") << rep.scenario << "/" << c.name << ": observed "
                << c.observed << (c.is_upper ? " <= " : " >= ") << c.bound << "\n";
    std::cout << (rep.pass() ? "PASS" : "FAIL") << " " << rep.scenario << " (" << rep.per_seed.size()
              << " rows, " << rep.wall_seconds << " s)\n";
    return rep.pass() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
