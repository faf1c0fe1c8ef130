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

#pragma once

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "pqkilian/common/stats.hpp"

namespace pqk::exp {

using nlohmann::json;

/// A scenario run: name, knob map, seed range [seed_begin, seed_end), and
/// a worker count. Every run is reproducible from (params, seed).
struct ScenarioConfig {
  std::string scenario;
  json params = json::object();
  std::uint64_t seed_begin = 0;
  std::uint64_t seed_end = 1;
  int jobs = 1;

  std::uint64_t seed_count() const { return seed_end - seed_begin; }

  void validate(const std::vector<std::string>& allowed_keys) const {
    if (seed_end <= seed_begin) throw std::invalid_argument("config: empty seed range");
    if (jobs < 1) throw std::invalid_argument("config: jobs must be >= 1");
    if (!params.is_object()) throw std::invalid_argument("config: params must be an object");
    for (auto it = params.begin(); it != params.end(); ++it) {
      bool known = false;
      for (const auto& k : allowed_keys) known = known || k == it.key();
      if (!known) throw std::invalid_argument("config: unknown parameter '" + it.key() + "'");
    }
  }
};

struct BoundCheck {
  std::string name;
  double observed = 0.0;
  double bound = 0.0;
  bool is_upper = true;  // observed <= bound when true, >= otherwise
  bool pass = false;

  json to_json() const {
    return json{{"name", name}, {"observed", observed}, {"bound", bound},
                {"direction", is_upper ? "<=" : ">="}, {"pass", pass}};
  }
};

inline BoundCheck check_upper(const std::string& name, double observed, double bound) {
  return BoundCheck{name, observed, bound, true, observed <= bound};
}

inline BoundCheck check_lower(const std::string& name, double observed, double bound) {
  return BoundCheck{name, observed, bound, false, observed >= bound};
}

/// Per-seed raw rows plus aggregates and declared-bound verdicts. The
/// aggregates are recomputable from the embedded rows.
struct Report {
  std::string scenario;
  json config_echo;
  std::vector<json> per_seed;
  json aggregate = json::object();
  std::vector<BoundCheck> checks;
  double wall_seconds = 0.0;

  bool pass() const {
    for (const BoundCheck& c : checks)
      if (!c.pass) return false;
    return true;
  }

  json summary() const {
    json j;
    j["scenario"] = scenario;
    j["config"] = config_echo;
    j["aggregate"] = aggregate;
    j["checks"] = json::array();
    for (const BoundCheck& c : checks) j["checks"].push_back(c.to_json());
    j["pass"] = pass();
    j["wall_seconds"] = wall_seconds;
    j["raw"] = per_seed;
    return j;
  }

  void write(const std::string& out_dir) const {
    std::filesystem::create_directories(out_dir);
    std::ofstream raw(out_dir + "/" + scenario + ".raw.jsonl");
    for (const json& row : per_seed) raw << row.dump() << "\n";
    std::ofstream sum(out_dir + "/" + scenario + ".summary.json");
    sum << summary().dump(2) << "\n";
  }
};

/// Runs one worker per seed across a thread pool; rows are stored in seed
/// order so output bytes never depend on scheduling.
inline std::vector<json> run_seeds(const ScenarioConfig& cfg,
                                   const std::function<json(std::uint64_t)>& worker) {
  std::uint64_t count = cfg.seed_count();
  std::vector<json> rows(count);
  if (cfg.jobs <= 1) {
    for (std::uint64_t i = 0; i < count; i++) rows[i] = worker(cfg.seed_begin + i);
    return rows;
  }
  std::atomic<std::uint64_t> next{0};
  std::vector<std::thread> pool;
  int jobs = std::min<std::uint64_t>(cfg.jobs, count);
  for (int w = 0; w < jobs; w++) {
    pool.emplace_back([&] {
      for (;;) {
        std::uint64_t i = next.fetch_add(1);
        if (i >= count) return;
        rows[i] = worker(cfg.seed_begin + i);
      }
    });
  }
  for (auto& th : pool) th.join();
  return rows;
}

/// Convenience: pull a column of doubles out of the raw rows.
inline std::vector<double> column(const std::vector<json>& rows, const std::string& key) {
  std::vector<double> xs;
  xs.reserve(rows.size());
  for (const json& r : rows) xs.push_back(r.at(key).get<double>());
  return xs;
}

class StopWatch {
 public:
  StopWatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace pqk::exp
