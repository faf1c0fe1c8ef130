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

#include <map>
#include <numeric>

#include "pqkilian/experiments/report.hpp"
#include "pqkilian/extractor/classical.hpp"
#include "pqkilian/rewinding/fork.hpp"
#include "pqkilian/rewinding/repair.hpp"
#include "pqkilian/rewinding/repeated.hpp"

namespace pqk::exp {

// All statistical pass criteria use one-sided 3-sigma normal-approximation
// allowances on top of the declared bound, except bounds that are exact by
// construction.

/// Damage-counterexample scenario: naive repetition with distinct
/// challenges against the 1/(2-2eps) ceiling, and the repaired player
/// against the n(eps - eta0) floor.
inline Report run_zhandry_counterexample(const ScenarioConfig& cfg) {
  cfg.validate({"eps", "num_questions", "n", "eta0", "c", "arms"});
  double eps = cfg.params.value("eps", 0.5);
  std::size_t nq = cfg.params.value("num_questions", 16);
  std::size_t n = cfg.params.value("n", 8);
  double eta0 = cfg.params.value("eta0", 0.25);
  double c = cfg.params.value("c", 64.0);
  std::string arms = cfg.params.value("arms", std::string("both"));  // "both" | "naive"
  bool run_repaired = arms != "naive";
  if (n > nq) throw std::invalid_argument("zhandry scenario: naive arm needs n distinct challenges");

  StopWatch watch;
  rw::GameInstance gi = rw::make_zhandry_game(nq, eps);
  rw::GameFrame frame(gi.game, gi.strategy);
  double value = rw::exact_value(gi.game, gi.strategy);
  rw::PlaySchedule sched(n, eta0, c);
  std::vector<qs::Vec> dirs = rw::zhandry_directions(nq, eps);

  auto worker = [&](std::uint64_t seed) {
    Rng rng(seed);
    // Naive arm: n distinct challenges measured in sequence on the bare
    // internal register.
    std::vector<std::size_t> order(nq);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = nq; i > 1; i--) std::swap(order[i - 1], order[rng.below(i)]);
    qs::Vec psi = qs::Vec::Zero(static_cast<Eigen::Index>(nq + 1));
    psi[0] = 1.0;
    std::size_t naive_wins = 0;
    for (std::size_t i = 0; i < n; i++) {
      const qs::Vec& u = dirs[order[i]];
      qs::Complex amp = u.dot(psi);
      double pr1 = std::clamp(std::norm(amp), 0.0, 1.0);
      if (rng.next_double() < pr1) {
        naive_wins++;
        psi = u;
      } else {
        psi = (psi - amp * u) / std::sqrt(std::max(1.0 - pr1, 1e-300));
      }
    }

    json row;
    row["seed"] = seed;
    row["naive_wins"] = naive_wins;
    if (run_repaired) {
      // Repaired arm: the n-round player with iid challenges.
      std::vector<std::size_t> rs(n);
      for (auto& r : rs) r = rng.below(nq);
      rw::RefereeCallback ref = [&](std::size_t, std::size_t r, qs::Vec& sent, Rng& rr) {
        return rw::referee_win_measurement(gi.game, gi.strategy, r, sent, rr);
      };
      rw::PlayResult res = rw::repeated_play(frame, sched, rs, ref, gi.strategy.initial, rng);
      row["repaired_wins"] = res.total_wins();
    }
    return row;
  };

  Report rep;
  rep.scenario = "zhandry_counterexample";
  rep.config_echo = json{{"eps", eps}, {"num_questions", nq},      {"n", n},
                         {"eta0", eta0}, {"c", c},                 {"exact_value", value},
                         {"valest_t", sched.ve.t}, {"seeds", cfg.seed_count()}};
  rep.per_seed = run_seeds(cfg, worker);

  Summary naive = summarize(column(rep.per_seed, "naive_wins"));
  rep.aggregate = json{{"naive_mean", naive.mean}, {"naive_stderr", naive.stderr_mean}};
  double naive_bound = eps < 1.0 ? 1.0 / (2.0 - 2.0 * eps) : static_cast<double>(n);
  rep.checks.push_back(check_upper("naive_mean_wins", naive.mean, naive_bound + 3 * naive.stderr_mean));
  if (run_repaired) {
    Summary repaired = summarize(column(rep.per_seed, "repaired_wins"));
    rep.aggregate["repaired_mean"] = repaired.mean;
    rep.aggregate["repaired_stderr"] = repaired.stderr_mean;
    rep.checks.push_back(check_lower("repaired_mean_wins", repaired.mean,
                                     static_cast<double>(n) * (value - eta0) - 3 * repaired.stderr_mean));
  }
  rep.wall_seconds = watch.seconds();
  return rep;
}

/// Collapsing-hash distinguisher demo on a known toy collision: the
/// untouched branch returns 1 with probability exactly 1, the measured
/// branch with probability 1/2.
inline Report run_collapse_demo(const ScenarioConfig& cfg) {
  cfg.validate({"hash_bits", "key", "trials", "collision_x", "collision_x2"});
  std::size_t bits = cfg.params.value("hash_bits", 16);
  std::uint64_t key = cfg.params.value("key", 0xC0FFEEull);
  std::size_t trials = cfg.params.value("trials", 10000);

  StopWatch watch;
  ToyHashFamily family(bits);
  std::uint64_t mask = (1ULL << bits) - 1;
  key &= mask;

  std::uint64_t x = 0, x2 = 0, y = 0;
  if (cfg.params.contains("collision_x") || cfg.params.contains("collision_x2")) {
    x = cfg.params.value("collision_x", 0ull) & mask;
    x2 = cfg.params.value("collision_x2", 0ull) & mask;
    y = family.eval_word(key, x);
  } else {
    // First collision pair in scan order; the toy map is exactly
    // 2^(bits/2)-to-1 so this terminates within 2^(bits/2)+1 probes.
    std::map<std::uint64_t, std::uint64_t> seen;
    for (std::uint64_t probe = 0;; probe++) {
      std::uint64_t digest = family.eval_word(key, probe);
      auto [it, fresh] = seen.emplace(digest, probe);
      if (!fresh) {
        x = it->second;
        x2 = probe;
        y = digest;
        break;
      }
    }
  }
  if (x == x2 || family.eval_word(key, x) != family.eval_word(key, x2))
    throw std::invalid_argument("collapse demo: not a collision");

  std::size_t dim = 1ULL << bits;
  qs::Vec psi = qs::Vec::Zero(static_cast<Eigen::Index>(dim));
  psi[static_cast<Eigen::Index>(x)] = 1.0 / std::sqrt(2.0);
  psi[static_cast<Eigen::Index>(x2)] = 1.0 / std::sqrt(2.0);

  // Hash-image check projector (challenger step 3) and the rank-one test
  // projector onto |psi>, conjugated through a register Householder.
  auto image_keep = [&family, key, y](std::size_t i) { return family.eval_word(key, i) == y; };
  auto image_proj = qs::StructuredProjector::basis_predicate(image_keep);

  qs::Vec refl = -psi;
  refl[static_cast<Eigen::Index>(x)] += 1.0;
  refl /= refl.norm();
  qs::Vec reflc = refl;
  auto householder = [reflc](qs::Vec& v) {
    qs::Complex dot = reflc.dot(v);
    v -= 2.0 * dot * reflc;
  };
  qs::ApplicableUnitary hh{householder, householder};
  auto test_proj = qs::StructuredProjector::conjugated(hh, [x](std::size_t i) { return i == x; });

  qs::RegisterLayout layout{{{"preimage", dim}}};

  // Exactness of the untouched branch: <psi| P_psi |psi> = 1.
  qs::Vec probe = psi;
  test_proj.apply(probe);
  double exact_prob = probe.squaredNorm();

  auto worker = [&](std::uint64_t seed) {
    Rng rng(seed);
    // b = 0 branch: image check then the test measurement, state untouched.
    qs::StateVector s0(layout, psi);
    int img0 = qs::measure_binary(image_proj, s0, rng);
    int b0 = qs::measure_binary(test_proj, s0, rng);

    // b = 1 branch: image check, computational measurement, test.
    qs::StateVector s1(layout, psi);
    int img1 = qs::measure_binary(image_proj, s1, rng);
    // Computational collapse of the two-point superposition.
    double pr_x = std::norm(s1.amplitudes()[static_cast<Eigen::Index>(x)]);
    qs::Vec collapsed = qs::Vec::Zero(static_cast<Eigen::Index>(dim));
    collapsed[static_cast<Eigen::Index>(rng.next_double() < pr_x ? x : x2)] = 1.0;
    qs::StateVector s1m(layout, collapsed);
    int b1 = qs::measure_binary(test_proj, s1m, rng);

    json row;
    row["seed"] = seed;
    row["image_check"] = img0 == 1 && img1 == 1 ? 1 : 0;
    row["unmeasured_outcome"] = b0;
    row["measured_outcome"] = b1;
    return row;
  };

  ScenarioConfig trial_cfg = cfg;
  trial_cfg.seed_end = trial_cfg.seed_begin + trials;

  Report rep;
  rep.scenario = "collapse_demo";
  rep.config_echo = json{{"hash_bits", bits}, {"key", key},           {"trials", trials},
                         {"collision_x", x},  {"collision_x2", x2},   {"digest", y},
                         {"family", family.name()}};
  rep.per_seed = run_seeds(trial_cfg, worker);

  double unmeasured = summarize(column(rep.per_seed, "unmeasured_outcome")).mean;
  double measured = summarize(column(rep.per_seed, "measured_outcome")).mean;
  double image_ok = summarize(column(rep.per_seed, "image_check")).mean;
  rep.aggregate = json{{"exact_unmeasured_probability", exact_prob},
                       {"unmeasured_freq", unmeasured},
                       {"measured_freq", measured},
                       {"image_check_freq", image_ok}};
  rep.checks.push_back(check_lower("exact_unmeasured_probability", exact_prob, 1.0 - 1e-9));
  rep.checks.push_back(check_lower("unmeasured_freq", unmeasured, 1.0));
  rep.checks.push_back(check_lower("image_check_freq", image_ok, 1.0));
  rep.checks.push_back(check_lower("measured_freq_low", measured, 0.48));
  rep.checks.push_back(check_upper("measured_freq_high", measured, 0.52));
  rep.wall_seconds = watch.seconds();
  return rep;
}

/// Estimator property suite: unbiasedness, almost-projectivity, the
/// concentrated-estimate value bound, and value preservation.
inline Report run_valest_suite(const ScenarioConfig& cfg) {
  cfg.validate({"num_questions", "game_eps", "eps", "delta", "p_level"});
  std::size_t nq = cfg.params.value("num_questions", 16);
  double game_eps = cfg.params.value("game_eps", 0.5);
  double eps = cfg.params.value("eps", 0.1);
  double delta = cfg.params.value("delta", 0.05);
  double p_level = cfg.params.value("p_level", 0.25);

  StopWatch watch;
  rw::GameInstance gi = rw::make_zhandry_game(nq, game_eps);
  rw::GameFrame frame(gi.game, gi.strategy);
  rw::ValEstParams vp(eps, delta);
  double value = rw::exact_value(gi.game, gi.strategy);

  auto worker = [&](std::uint64_t seed) {
    Rng rng(seed);
    rw::ValEstResult first = rw::val_est(frame, vp, gi.strategy.initial, rng);
    rw::ValEstResult second = rw::val_est(frame, vp, first.post, rng);
    json row;
    row["seed"] = seed;
    row["grid_ok"] = first.estimate == rw::estimate_from_count(first.repeat_count, vp.t) ? 1 : 0;
    row["estimate"] = first.estimate;
    row["estimate2"] = second.estimate;
    row["disagree"] = std::abs(first.estimate - second.estimate) > eps ? 1 : 0;
    row["post_value"] = rw::exact_value(gi.game, gi.strategy, second.post);
    row["below_level"] = first.estimate < p_level ? 1 : 0;
    return row;
  };

  Report rep;
  rep.scenario = "valest_suite";
  rep.config_echo = json{{"num_questions", nq}, {"game_eps", game_eps}, {"eps", eps},
                         {"delta", delta},      {"t", vp.t},            {"exact_value", value},
                         {"p_level", p_level},  {"seeds", cfg.seed_count()}};
  rep.per_seed = run_seeds(cfg, worker);

  std::size_t runs = rep.per_seed.size();
  Summary est = summarize(column(rep.per_seed, "estimate"));
  double disagree = summarize(column(rep.per_seed, "disagree")).mean;
  Summary post_val = summarize(column(rep.per_seed, "post_value"));
  double gamma = summarize(column(rep.per_seed, "below_level")).mean;

  rep.aggregate = json{{"estimate_mean", est.mean},   {"estimate_stderr", est.stderr_mean},
                       {"disagree_freq", disagree},   {"post_value_mean", post_val.mean},
                       {"gamma_below_level", gamma}};
  rep.checks.push_back(
      check_upper("unbiased_mean_gap", std::abs(est.mean - value), 3 * est.stderr_mean + 1e-12));
  rep.checks.push_back(check_upper("sequential_disagree_freq", disagree,
                                   delta + freq_sigma3(std::max(disagree, delta), runs)));
  rep.checks.push_back(check_lower("value_after_two_measurements", post_val.mean,
                                   value - 2 * delta - 3 * post_val.stderr_mean));
  rep.checks.push_back(check_lower(
      "concentrated_estimate_value_bound", value,
      p_level - gamma - eps - delta - freq_sigma3(std::max(gamma, 1.0 / runs), runs)));
  double grid_ok = summarize(column(rep.per_seed, "grid_ok")).mean;
  rep.checks.push_back(check_lower("estimates_on_grid", grid_ok, 1.0));
  rep.wall_seconds = watch.seconds();
  return rep;
}

/// State-repair suite: drift of the estimate across one
/// measure/damage/repair cycle and the expected measurement cost.
inline Report run_repair_suite(const ScenarioConfig& cfg) {
  cfg.validate({"num_questions", "game_eps", "eps", "delta", "T"});
  std::size_t nq = cfg.params.value("num_questions", 8);
  double game_eps = cfg.params.value("game_eps", 0.5);
  double eps = cfg.params.value("eps", 0.1);
  double delta = cfg.params.value("delta", 0.01);
  std::size_t T = cfg.params.value("T", 16);
  const double N = 2;  // binary damage measurement

  StopWatch watch;
  rw::GameInstance gi = rw::make_zhandry_game(nq, game_eps);
  rw::GameFrame frame(gi.game, gi.strategy);
  rw::ValEstParams vp(eps, delta);

  auto worker = [&](std::uint64_t seed) {
    Rng rng(seed);
    std::size_t r = rng.below(nq);
    rw::BinaryGameMeasurement pk = rw::win_measurement(frame, r);
    rw::RepairExptResult first = rw::run_repair_expt(frame, vp, pk, T, gi.strategy.initial, rng);
    rw::ValEstResult second = rw::val_est(frame, vp, first.post, rng);
    json row;
    row["seed"] = seed;
    row["p"] = first.estimate;
    row["p2"] = second.estimate;
    row["drift"] = std::abs(second.estimate - first.estimate) > 2 * eps ? 1 : 0;
    row["r_count"] = first.r_count;
    row["damage_outcome"] = first.damage_outcome;
    return row;
  };

  Report rep;
  rep.scenario = "repair_suite";
  rep.config_echo = json{{"num_questions", nq}, {"game_eps", game_eps}, {"eps", eps},
                         {"delta", delta},      {"T", T},               {"t", vp.t},
                         {"seeds", cfg.seed_count()}};
  rep.per_seed = run_seeds(cfg, worker);

  std::size_t runs = rep.per_seed.size();
  double drift = summarize(column(rep.per_seed, "drift")).mean;
  Summary cost = summarize(column(rep.per_seed, "r_count"));
  double drift_bound = N * (delta + 1.0 / static_cast<double>(T)) + 4.0 * std::sqrt(delta);
  double cost_bound = N + 4.0 * static_cast<double>(T) * std::sqrt(delta) + 1.0;

  rep.aggregate = json{{"drift_freq", drift}, {"r_count_mean", cost.mean}, {"r_count_stderr", cost.stderr_mean}};
  rep.checks.push_back(
      check_upper("repair_drift_freq", drift, drift_bound + freq_sigma3(std::max(drift, 0.01), runs)));
  rep.checks.push_back(check_upper("repair_cost_mean", cost.mean, cost_bound + 3 * cost.stderr_mean));
  rep.wall_seconds = watch.seconds();
  return rep;
}

/// End-to-end argument pipeline: honest completeness, the classical
/// extractor against a throttled adversary and unsat instances, and the
/// succinctness curve.
inline Report run_kilian_e2e(const ScenarioConfig& cfg) {
  cfg.validate({"honest_trials", "extract_seeds", "extract_eps", "unsat_seeds", "num_vars", "colors",
                "num_edges", "k_sel", "block_bits", "succinct_sizes", "succinct_trials", "succinct_k_sel"});
  std::size_t honest_trials = cfg.params.value("honest_trials", 1000);
  std::size_t extract_seeds = cfg.params.value("extract_seeds", 500);
  double extract_eps = cfg.params.value("extract_eps", 0.3);
  std::size_t unsat_seeds = cfg.params.value("unsat_seeds", 100);
  std::uint32_t num_vars = cfg.params.value("num_vars", 10);
  std::uint32_t colors = cfg.params.value("colors", 3);
  std::uint32_t num_edges = cfg.params.value("num_edges", 16);
  std::uint32_t k_sel = cfg.params.value("k_sel", 4);
  std::uint32_t block_bits = cfg.params.value("block_bits", 5);
  std::vector<std::uint32_t> sizes = cfg.params.value("succinct_sizes", std::vector<std::uint32_t>{64, 256, 1024, 4096});
  std::size_t succinct_trials = cfg.params.value("succinct_trials", 30);
  std::uint32_t succinct_k = cfg.params.value("succinct_k_sel", 8);

  StopWatch watch;
  Rng gen(20260810);
  kilian::Params prm;
  prm.instance = pcp::gen_planted_coloring(num_vars, colors, num_edges, gen);
  prm.pcp_cfg = {k_sel, block_bits};
  prm.family_id = HashFamilyId::kSha256;
  prm.hash_input_bits = 256;

  kilian::Params unsat_prm = prm;
  unsat_prm.instance = pcp::gen_unsat_nae(8, 24, 0.05, gen);

  Report rep;
  rep.scenario = "kilian_e2e";
  rep.config_echo = cfg.params;
  rep.config_echo["instance_gap"] = prm.instance.gap;
  rep.config_echo["unsat_gap"] = unsat_prm.instance.gap;

  // Honest completeness.
  std::size_t honest_ok = 0;
  for (std::uint64_t seed = 0; seed < honest_trials; seed++) {
    Rng rng(seed);
    kilian::Transcript t = kilian::run_honest(prm, *prm.instance.planted, rng);
    bool ok = kilian::verify_transcript(prm, t);
    honest_ok += ok ? 1 : 0;
    json row;
    row["phase"] = "honest";
    row["seed"] = seed;
    row["accept"] = ok ? 1 : 0;
    rep.per_seed.push_back(row);
  }

  // Extraction against the throttled adversary, with the win-rate oracle
  // invariant checked on every non-abort run.
  pcp::PCPParams pp = prm.pcp();
  std::size_t extract_ok = 0, win_rate_violations = 0;
  std::map<std::string, std::size_t> aborts;
  double k_sum = 0;
  for (std::uint64_t seed = 0; seed < extract_seeds; seed++) {
    extractor::ThrottledOracle oracle(prm, *prm.instance.planted, extract_eps, 777000 + seed);
    Rng rng(1000000 + seed);
    extractor::ExtractionResult res = extractor::extract_witness(oracle, prm, extract_eps, rng);
    bool success = res.witness.has_value();
    extract_ok += success ? 1 : 0;
    k_sum += static_cast<double>(res.k);
    aborts[extractor::abort_reason_name(res.reason)]++;
    bool wr_ok = true;
    if (res.assembled) {
      double wr = pcp::pcp_win_rate(prm.instance, pp, *res.assembled).value();
      wr_ok = wr >= static_cast<double>(res.k) / (2.0 * static_cast<double>(res.n));
      if (!wr_ok) win_rate_violations++;
    }
    json row;
    row["phase"] = "extract";
    row["seed"] = seed;
    row["success"] = success ? 1 : 0;
    row["k"] = res.k;
    row["n"] = res.n;
    row["reason"] = extractor::abort_reason_name(res.reason);
    row["win_rate_ok"] = wr_ok ? 1 : 0;
    rep.per_seed.push_back(row);
  }

  // Unsat instances must never yield witnesses.
  pcp::PCPString best = pcp::worst_case_proof(unsat_prm.instance, gen);
  std::size_t false_witnesses = 0;
  for (std::uint64_t seed = 0; seed < unsat_seeds; seed++) {
    extractor::FixedStringOracle oracle(unsat_prm, best);
    Rng rng(2000000 + seed);
    extractor::ExtractionResult res = extractor::extract_witness(oracle, unsat_prm, extract_eps, rng);
    if (res.witness) false_witnesses++;
    json row;
    row["phase"] = "unsat";
    row["seed"] = seed;
    row["witness"] = res.witness.has_value() ? 1 : 0;
    row["reason"] = extractor::abort_reason_name(res.reason);
    rep.per_seed.push_back(row);
  }

  // Succinctness curve: mean transcript bytes against a*qc*log2(ell)*h + b.
  std::vector<double> xs, ys;
  double ratio_at_top = 1.0;
  for (std::uint32_t ell : sizes) {
    Rng igen(3000000 + ell);
    kilian::Params sprm;
    sprm.instance = pcp::gen_planted_coloring(ell, 3, 2 * ell, igen);
    sprm.pcp_cfg = {succinct_k, 16};
    sprm.family_id = HashFamilyId::kSha256;
    sprm.hash_input_bits = 256;
    double total = 0;
    for (std::uint64_t seed = 0; seed < succinct_trials; seed++) {
      Rng rng(4000000 + 100 * ell + seed);
      kilian::Transcript t = kilian::run_honest(sprm, *sprm.instance.planted, rng);
      total += static_cast<double>(kilian::transcript_size(sprm, t));
    }
    double mean_bytes = total / static_cast<double>(succinct_trials);
    double full = static_cast<double>(kilian::full_proof_size(sprm));
    xs.push_back(std::log2(static_cast<double>(ell)));
    ys.push_back(mean_bytes);
    if (ell == sizes.back()) ratio_at_top = mean_bytes / full;
    json row;
    row["phase"] = "succinct";
    row["ell"] = ell;
    row["mean_bytes"] = mean_bytes;
    row["full_bytes"] = full;
    rep.per_seed.push_back(row);
  }
  LinFit fit = linear_fit(xs, ys);

  double honest_rate = static_cast<double>(honest_ok) / static_cast<double>(honest_trials);
  double extract_rate = static_cast<double>(extract_ok) / static_cast<double>(extract_seeds);
  json abort_hist = json::object();
  for (auto& [k, v] : aborts) abort_hist[k] = v;
  rep.aggregate = json{{"honest_accept_rate", honest_rate},
                       {"extract_success_rate", extract_rate},
                       {"extract_mean_k", k_sum / static_cast<double>(extract_seeds)},
                       {"abort_histogram", abort_hist},
                       {"win_rate_violations", win_rate_violations},
                       {"false_witnesses", false_witnesses},
                       {"succinct_r2", fit.r2},
                       {"succinct_slope_bytes_per_level", fit.a},
                       {"succinct_ratio_at_max", ratio_at_top}};
  rep.checks.push_back(check_lower("honest_accept_rate", honest_rate, 1.0));
  rep.checks.push_back(check_lower("extract_success_rate", extract_rate, extract_eps / 8.0));
  rep.checks.push_back(check_upper("win_rate_violations", static_cast<double>(win_rate_violations), 0.0));
  rep.checks.push_back(check_upper("false_witnesses", static_cast<double>(false_witnesses), 0.0));
  rep.checks.push_back(check_lower("succinct_r2", fit.r2, 0.99));
  rep.checks.push_back(check_upper("succinct_ratio_at_max", ratio_at_top, 0.05));
  rep.wall_seconds = watch.seconds();
  return rep;
}

using ScenarioFn = Report (*)(const ScenarioConfig&);

inline const std::map<std::string, ScenarioFn>& scenario_registry() {
  static const std::map<std::string, ScenarioFn> reg = {
      {"zhandry_counterexample", &run_zhandry_counterexample},
      {"collapse_demo", &run_collapse_demo},
      {"valest_suite", &run_valest_suite},
      {"repair_suite", &run_repair_suite},
      {"kilian_e2e", &run_kilian_e2e},
  };
  return reg;
}

inline Report run_scenario(const ScenarioConfig& cfg) {
  auto it = scenario_registry().find(cfg.scenario);
  if (it == scenario_registry().end()) throw std::invalid_argument("unknown scenario: " + cfg.scenario);
  return it->second(cfg);
}

}  // namespace pqk::exp
