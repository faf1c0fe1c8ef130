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

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "pqkilian/common/rng.hpp"

namespace pqk::pcp {

using Assignment = std::vector<std::uint32_t>;

/// One constraint: an ordered tuple of variable ids (1-based) plus the set
/// of allowed value tuples.
struct Constraint {
  std::vector<std::uint32_t> vars;
  std::vector<std::vector<std::uint32_t>> allowed;

  bool satisfied_by(const Assignment& a) const {
    std::vector<std::uint32_t> tuple(vars.size());
    for (std::size_t i = 0; i < vars.size(); i++) tuple[i] = a[vars[i] - 1];
    return std::find(allowed.begin(), allowed.end(), tuple) != allowed.end();
  }
};

struct CSPInstance {
  std::uint32_t num_vars = 0;
  std::uint32_t alphabet_size = 0;
  std::vector<Constraint> constraints;
  std::optional<Assignment> planted;
  double gap = 0.0;  // verified min violated fraction over non-satisfying assignments

  void validate() const {
    if (num_vars == 0 || alphabet_size == 0) throw std::invalid_argument("csp: empty instance");
    for (const Constraint& c : constraints) {
      if (c.vars.empty()) throw std::invalid_argument("csp: empty constraint scope");
      for (std::uint32_t v : c.vars)
        if (v < 1 || v > num_vars) throw std::invalid_argument("csp: variable id out of range");
      for (const auto& t : c.allowed) {
        if (t.size() != c.vars.size()) throw std::invalid_argument("csp: allowed tuple arity mismatch");
        for (std::uint32_t x : t)
          if (x >= alphabet_size) throw std::invalid_argument("csp: allowed tuple value out of range");
      }
    }
    if (planted) {
      if (planted->size() != num_vars) throw std::invalid_argument("csp: planted witness length mismatch");
      if (!satisfies(*planted)) throw std::invalid_argument("csp: planted witness does not satisfy");
    }
  }

  bool satisfies(const Assignment& a) const {
    if (a.size() != num_vars) return false;
    for (std::uint32_t x : a)
      if (x >= alphabet_size) return false;
    for (const Constraint& c : constraints)
      if (!c.satisfied_by(a)) return false;
    return true;
  }

  std::size_t violated_count(const Assignment& a) const {
    std::size_t n = 0;
    for (const Constraint& c : constraints)
      if (!c.satisfied_by(a)) n++;
    return n;
  }

  std::size_t max_arity() const {
    std::size_t q = 0;
    for (const Constraint& c : constraints) q = std::max(q, c.vars.size());
    return q;
  }
};

// JSON file format:
//   {"num_vars": n, "alphabet_size": s,
//    "constraints": [{"vars": [..1-based..], "allowed": [[..],..]}, ...],
//    "planted": [..] | null, "gap": g}
inline nlohmann::json to_json(const CSPInstance& x) {
  nlohmann::json j;
  j["num_vars"] = x.num_vars;
  j["alphabet_size"] = x.alphabet_size;
  j["constraints"] = nlohmann::json::array();
  for (const Constraint& c : x.constraints) j["constraints"].push_back({{"vars", c.vars}, {"allowed", c.allowed}});
  if (x.planted)
    j["planted"] = *x.planted;
  else
    j["planted"] = nullptr;
  j["gap"] = x.gap;
  return j;
}

inline CSPInstance from_json(const nlohmann::json& j) {
  CSPInstance x;
  x.num_vars = j.at("num_vars").get<std::uint32_t>();
  x.alphabet_size = j.at("alphabet_size").get<std::uint32_t>();
  for (const auto& cj : j.at("constraints")) {
    Constraint c;
    c.vars = cj.at("vars").get<std::vector<std::uint32_t>>();
    c.allowed = cj.at("allowed").get<std::vector<std::vector<std::uint32_t>>>();
    x.constraints.push_back(std::move(c));
  }
  if (j.contains("planted") && !j.at("planted").is_null()) x.planted = j.at("planted").get<Assignment>();
  x.gap = j.value("gap", 0.0);
  x.validate();
  return x;
}

inline CSPInstance load_csp(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open CSP instance: " + path);
  nlohmann::json j;
  f >> j;
  return from_json(j);
}

inline void save_csp(const CSPInstance& x, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write CSP instance: " + path);
  f << to_json(x).dump(2) << "\n";
}

/// Exhaustively measures the instance's gap: the minimum violated fraction
/// over all non-satisfying assignments (1.0 if every assignment satisfies).
/// Only legal at enumeration scale.
inline double measure_gap_exhaustive(const CSPInstance& x, bool* satisfiable = nullptr) {
  double total = std::pow(static_cast<double>(x.alphabet_size), static_cast<double>(x.num_vars));
  if (total > 2e7) throw std::invalid_argument("measure_gap_exhaustive: instance too large");
  std::uint64_t count = static_cast<std::uint64_t>(total);
  Assignment a(x.num_vars, 0);
  std::size_t min_viol = x.constraints.size() + 1;
  bool sat = false;
  for (std::uint64_t it = 0;; it++) {
    std::size_t viol = x.violated_count(a);
    if (viol == 0)
      sat = true;
    else
      min_viol = std::min(min_viol, viol);
    if (it + 1 == count) break;
    for (std::size_t i = 0;; i++) {
      if (++a[i] < x.alphabet_size) break;
      a[i] = 0;
    }
  }
  if (satisfiable) *satisfiable = sat;
  if (min_viol > x.constraints.size()) return 1.0;
  return static_cast<double>(min_viol) / static_cast<double>(x.constraints.size());
}

/// Random planted coloring instance: num_edges distinct edges whose planted
/// endpoints differ, constraint "values differ". The planted assignment is
/// re-sampled until every color class is nonempty.
inline CSPInstance gen_planted_coloring(std::uint32_t num_vars, std::uint32_t colors, std::uint32_t num_edges,
                                        Rng& rng) {
  if (num_vars < 2 || colors < 2) throw std::invalid_argument("gen_planted_coloring: degenerate parameters");
  CSPInstance x;
  x.num_vars = num_vars;
  x.alphabet_size = colors;
  Assignment plant(num_vars);
  for (int attempt = 0;; attempt++) {
    if (attempt > 10000)
      throw std::invalid_argument("gen_planted_coloring: not enough cross-color pairs for num_edges");
    std::vector<std::uint32_t> used(colors, 0);
    for (auto& v : plant) {
      v = static_cast<std::uint32_t>(rng.below(colors));
      used[v]++;
    }
    if (!std::all_of(used.begin(), used.end(), [](std::uint32_t c) { return c > 0; })) continue;
    std::uint64_t cross = 0;
    for (std::uint32_t a = 0; a < colors; a++)
      for (std::uint32_t b = a + 1; b < colors; b++) cross += static_cast<std::uint64_t>(used[a]) * used[b];
    if (cross >= num_edges) break;
  }
  std::vector<std::vector<std::uint32_t>> differ;
  for (std::uint32_t a = 0; a < colors; a++)
    for (std::uint32_t b = 0; b < colors; b++)
      if (a != b) differ.push_back({a, b});
  std::set<std::pair<std::uint32_t, std::uint32_t>> edges;
  while (edges.size() < num_edges) {
    std::uint32_t u = static_cast<std::uint32_t>(rng.below(num_vars)) + 1;
    std::uint32_t v = static_cast<std::uint32_t>(rng.below(num_vars)) + 1;
    if (u == v || plant[u - 1] == plant[v - 1]) continue;
    if (u > v) std::swap(u, v);
    edges.insert({u, v});
  }
  for (auto [u, v] : edges) x.constraints.push_back(Constraint{{u, v}, differ});
  x.planted = plant;
  x.validate();
  return x;
}

/// Random unsatisfiable not-all-equal instance over a boolean alphabet,
/// re-sampled until unsatisfiable with gap >= min_gap (verified by
/// exhaustive search, so keep num_vars small).
inline CSPInstance gen_unsat_nae(std::uint32_t num_vars, std::uint32_t num_clauses, double min_gap, Rng& rng,
                                 int max_tries = 2000) {
  std::vector<std::vector<std::uint32_t>> nae;
  for (std::uint32_t t = 1; t < 7; t++) nae.push_back({t & 1u, (t >> 1) & 1u, (t >> 2) & 1u});
  for (int attempt = 0; attempt < max_tries; attempt++) {
    CSPInstance x;
    x.num_vars = num_vars;
    x.alphabet_size = 2;
    std::set<std::vector<std::uint32_t>> seen;
    while (x.constraints.size() < num_clauses) {
      std::vector<std::uint32_t> vars;
      while (vars.size() < 3) {
        std::uint32_t v = static_cast<std::uint32_t>(rng.below(num_vars)) + 1;
        if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
      }
      std::sort(vars.begin(), vars.end());
      if (!seen.insert(vars).second) continue;
      x.constraints.push_back(Constraint{vars, nae});
    }
    bool sat = false;
    double gap = measure_gap_exhaustive(x, &sat);
    if (!sat && gap >= min_gap) {
      x.gap = gap;
      x.validate();
      return x;
    }
  }
  throw std::runtime_error("gen_unsat_nae: no instance with requested gap found");
}

}  // namespace pqk::pcp
