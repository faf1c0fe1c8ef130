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

// Acceptance suite: runs the ten gate criteria end to end and prints one
// PASS/FAIL line per criterion. Every tolerance is pinned here. Exit code
// is zero iff every criterion passes.

#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "pqkilian/experiments/scenarios.hpp"
#include "pqkilian/quantum/jordan.hpp"
#include "pqkilian/rewinding/fork.hpp"

using namespace pqk;

namespace {

struct Criterion {
  int id;
  std::string name;
  double time_limit_s;  // 0 = no stated limit
  std::function<bool(std::string&)> run;
};

// ---- criterion 1: Merkle vector commitment ----

bool criterion_merkle(std::string& detail) {
  using namespace pqk::vc;
  auto family = std::make_shared<Sha256Family>(256);
  Rng rng(11);
  std::size_t complete = 0, tamper_rejections = 0, tamper_cases = 0;
  const int trials = 1000;
  for (int i = 0; i < trials; i++) {
    std::uint32_t ell = 1 + static_cast<std::uint32_t>(rng.below(64));
    Rng krng(50000 + i);
    CommitmentKey ck = vc_gen(ell, family, krng);
    std::vector<Symbol> m(ell);
    for (auto& s : m) s = rng.bytes(ck.alphabet_bytes());
    auto [cm, aux] = vc_commit(ck, m);
    std::set<std::uint32_t> q;
    std::size_t want = 1 + rng.below(std::min<std::uint64_t>(ell, 8));
    while (q.size() < want) q.insert(static_cast<std::uint32_t>(rng.below(ell)) + 1);
    OpeningProof pf = vc_open(ck, aux, q);
    std::vector<std::uint32_t> qv(q.begin(), q.end());
    std::vector<Symbol> v;
    for (auto idx : qv) v.push_back(m[idx - 1]);
    if (vc_verify(ck, cm, qv, v, pf)) complete++;

    // Single-bit tampers in v, serialized pf, and cm must all reject.
    if (i % 10 == 0) {
      {
        auto v2 = v;
        std::size_t which = rng.below(v2.size());
        v2[which][rng.below(v2[which].size())] ^= static_cast<std::uint8_t>(1u << rng.below(8));
        tamper_cases++;
        if (!vc_verify(ck, cm, qv, v2, pf)) tamper_rejections++;
      }
      {
        Bytes ser = serialize_proof(ck, pf);
        ser[rng.below(ser.size())] ^= static_cast<std::uint8_t>(1u << rng.below(8));
        OpeningProof pf2;
        tamper_cases++;
        if (!deserialize_proof(ck, ser, pf2) || !vc_verify(ck, cm, qv, v, pf2)) tamper_rejections++;
      }
      {
        auto cm2 = cm;
        cm2.root[rng.below(cm2.root.size())] ^= static_cast<std::uint8_t>(1u << rng.below(8));
        tamper_cases++;
        if (!vc_verify(ck, cm2, qv, v, pf)) tamper_rejections++;
      }
    }
  }

  // Binding smoke test: random forgery attempts against one commitment.
  Rng brng(77);
  CommitmentKey ck = vc_gen(16, family, brng);
  std::vector<Symbol> m(16);
  for (auto& s : m) s = brng.bytes(ck.alphabet_bytes());
  auto [cm, aux] = vc_commit(ck, m);
  OpeningProof honest = vc_open(ck, aux, {3});
  std::size_t binding_breaks = 0;
  for (int i = 0; i < 100000; i++) {
    std::vector<Symbol> v2 = {brng.bytes(ck.alphabet_bytes())};
    OpeningProof pf2 = honest;
    for (auto& node : pf2.nodes)
      if (brng.bernoulli(0.5)) node.hash[brng.below(node.hash.size())] ^= static_cast<std::uint8_t>(brng.below(256));
    if (v2[0] != m[2] && vc_verify(ck, cm, {3}, v2, pf2)) binding_breaks++;
  }

  std::ostringstream os;
  os << "completeness " << complete << "/" << trials << ", tamper rejections " << tamper_rejections << "/"
     << tamper_cases << ", binding breaks " << binding_breaks << "/100000";
  detail = os.str();
  return complete == trials && tamper_rejections == tamper_cases && binding_breaks == 0;
}

// ---- criterion 2: Jordan decomposition ----

bool criterion_jordan(std::string& detail) {
  using namespace pqk::qs;
  Rng rng(22);
  double worst = 0.0;
  const double tol = 1e-8;
  int pairs = 0;
  for (int trial = 0; trial < 100; trial++) {
    std::size_t dim = 4 + rng.below(29);  // up to 32
    std::size_t ra = 1 + rng.below(dim - 1), rb = 1 + rng.below(dim - 1);
    Mat g(dim, dim);
    for (Eigen::Index i = 0; i < g.rows(); i++)
      for (Eigen::Index j = 0; j < g.cols(); j++)
        g(i, j) = Complex(rng.next_double() - 0.5, rng.next_double() - 0.5);
    Eigen::HouseholderQR<Mat> qra(g);
    Mat qa = qra.householderQ();
    Mat pa = qa.leftCols(static_cast<Eigen::Index>(ra)) * qa.leftCols(static_cast<Eigen::Index>(ra)).adjoint();
    for (Eigen::Index i = 0; i < g.rows(); i++)
      for (Eigen::Index j = 0; j < g.cols(); j++)
        g(i, j) = Complex(rng.next_double() - 0.5, rng.next_double() - 0.5);
    Eigen::HouseholderQR<Mat> qrb(g);
    Mat qb = qrb.householderQ();
    Mat pb = qb.leftCols(static_cast<Eigen::Index>(rb)) * qb.leftCols(static_cast<Eigen::Index>(rb)).adjoint();

    JordanDecomposition jd;
    try {
      jd = jordan_decompose(pa, pb, tol);
    } catch (const std::exception& e) {
      detail = std::string("decomposition failed: ") + e.what();
      return false;
    }
    pairs++;
    Mat total = Mat::Zero(dim, dim);
    for (const JordanBlock& b : jd.blocks) {
      Mat pj = b.projector(dim);
      total += pj;
      worst = std::max(worst, (pj * pa - pa * pj).norm());
      worst = std::max(worst, (pj * pb - pb * pj).norm());
      if (b.dim == 2) {
        worst = std::max(worst, std::abs(std::norm(b.v1->dot(*b.w1)) - b.p));
        worst = std::max(worst,
                         (*b.v1 - (std::sqrt(b.p) * (*b.w1) + std::sqrt(1 - b.p) * (*b.w0))).norm());
      }
    }
    worst = std::max(worst, (total - Mat::Identity(dim, dim)).norm());
  }
  std::ostringstream os;
  os << pairs << " pairs, worst residual " << worst;
  detail = os.str();
  return pairs == 100 && worst <= tol;
}

// ---- criterion 3: alternating-measurement outcome law ----

bool criterion_alternating(std::string& detail) {
  using namespace pqk::qs;
  struct StateSpec {
    std::vector<double> ps;
    std::vector<double> alpha2;
  };
  std::vector<StateSpec> specs = {
      {{0.5}, {1.0}},
      {{0.2}, {1.0}},
      {{0.3, 0.7}, {0.5, 0.5}},
      {{0.25, 0.5, 0.75}, {0.3, 0.4, 0.3}},
      {{0.1, 0.35, 0.65, 0.9}, {0.2, 0.3, 0.3, 0.2}},
  };
  const std::size_t T = 200;
  const int trials = 1000;
  Rng rng(33);
  double min_pvalue = 1.0;
  for (const StateSpec& spec : specs) {
    std::size_t k = spec.ps.size();
    Mat pa = Mat::Zero(2 * k, 2 * k), pb = Mat::Zero(2 * k, 2 * k);
    Vec mix = Vec::Zero(2 * k);
    for (std::size_t i = 0; i < k; i++) {
      Vec a = Vec::Zero(2 * k), b = Vec::Zero(2 * k);
      a[2 * i] = 1.0;
      b[2 * i] = std::sqrt(spec.ps[i]);
      b[2 * i + 1] = std::sqrt(1 - spec.ps[i]);
      pa += a * a.adjoint();
      pb += b * b.adjoint();
      mix += std::sqrt(spec.alpha2[i]) * b;
    }
    auto proj_a = StructuredProjector::dense(pa);
    auto proj_b = StructuredProjector::dense(pb);
    RegisterLayout layout{{{"blocks", 2 * k}}};

    std::vector<double> qcounts(T + 1, 0), ccounts(T + 1, 0);
    for (int i = 0; i < trials; i++) {
      StateVector psi(layout, mix);
      qcounts[nreps_count_from_one(alternating_outcomes(proj_a, proj_b, psi, T, rng))] += 1;
      double u = rng.next_double(), acc = 0;
      std::size_t pick = k - 1;
      for (std::size_t i2 = 0; i2 < k; i2++) {
        acc += spec.alpha2[i2];
        if (u < acc) {
          pick = i2;
          break;
        }
      }
      ccounts[nreps_count_from_one(mwdist_sample(spec.ps[pick], T, rng))] += 1;
    }
    std::vector<double> qa, qb;
    double aq = 0, ac = 0;
    for (std::size_t m = 0; m <= T; m++) {
      aq += qcounts[m];
      ac += ccounts[m];
      if (aq + ac >= 20) {
        qa.push_back(aq);
        qb.push_back(ac);
        aq = ac = 0;
      }
    }
    if (aq + ac > 0) {
      qa.push_back(aq);
      qb.push_back(ac);
    }
    std::size_t df = 0;
    double stat = chi2_two_sample(qa, qb, &df);
    min_pvalue = std::min(min_pvalue, chi2_sf(stat, static_cast<double>(df)));
  }
  std::ostringstream os;
  os << specs.size() << " states, min chi-squared p-value " << min_pvalue;
  detail = os.str();
  return min_pvalue > 0.01;
}

// ---- shared scenario-driven criteria ----

exp::Report valest_report() {
  exp::ScenarioConfig cfg;
  cfg.scenario = "valest_suite";
  cfg.params = {{"num_questions", 16}, {"game_eps", 0.5}, {"eps", 0.1}, {"delta", 0.05}, {"p_level", 0.25}};
  cfg.seed_begin = 0;
  cfg.seed_end = 1000;
  return exp::run_valest_suite(cfg);
}

exp::Report repair_report() {
  exp::ScenarioConfig cfg;
  cfg.scenario = "repair_suite";
  cfg.params = {{"num_questions", 8}, {"game_eps", 0.5}, {"eps", 0.1}, {"delta", 0.01}, {"T", 16}};
  cfg.seed_begin = 0;
  cfg.seed_end = 200;
  return exp::run_repair_suite(cfg);
}

exp::Report zhandry_report() {
  exp::ScenarioConfig cfg;
  cfg.scenario = "zhandry_counterexample";
  cfg.params = {{"eps", 0.5}, {"num_questions", 16}, {"n", 8}, {"eta0", 0.25}, {"c", 64.0}};
  cfg.seed_begin = 0;
  cfg.seed_end = 200;
  return exp::run_zhandry_counterexample(cfg);
}

exp::Report collapse_report() {
  exp::ScenarioConfig cfg;
  cfg.scenario = "collapse_demo";
  cfg.params = {{"hash_bits", 16}, {"key", 0xC0FFEE}, {"trials", 10000}};
  return exp::run_collapse_demo(cfg);
}

exp::Report kilian_report() {
  exp::ScenarioConfig cfg;
  cfg.scenario = "kilian_e2e";
  cfg.params = {{"honest_trials", 1000}, {"extract_seeds", 500}, {"extract_eps", 0.3},
                {"unsat_seeds", 100},    {"num_vars", 10},       {"colors", 3},
                {"num_edges", 16},       {"k_sel", 4},           {"block_bits", 5}};
  return exp::run_kilian_e2e(cfg);
}

std::string describe(const exp::Report& rep, const std::vector<std::string>& names) {
  std::ostringstream os;
  bool first = true;
  for (const auto& c : rep.checks) {
    bool wanted = names.empty();
    for (const auto& n : names) wanted = wanted || n == c.name;
    if (!wanted) continue;
    if (!first) os << "; ";
    first = false;
    os << c.name << " " << c.observed << (c.is_upper ? " <= " : " >= ") << c.bound
       << (c.pass ? "" : " [FAIL]");
  }
  return os.str();
}

bool checks_pass(const exp::Report& rep, const std::vector<std::string>& names) {
  for (const auto& c : rep.checks) {
    bool wanted = names.empty();
    for (const auto& n : names) wanted = wanted || n == c.name;
    if (wanted && !c.pass) return false;
  }
  return true;
}

// ---- criterion 7: fork expectation bound ----

bool criterion_fork(std::string& detail) {
  const std::size_t nq = 64, n = 8;
  const double game_eps = 0.5, eta0 = 0.25;
  rw::GameInstance gi = rw::make_unique_answer_game(nq, game_eps);
  rw::GameFrame frame(gi.game, gi.strategy);
  double eta = rw::exact_value(gi.game, gi.strategy);  // the oracle-computed value
  rw::PlaySchedule sched(n, eta0);
  const int seeds = 200;
  std::vector<double> sizes;
  try {
    for (int s = 0; s < seeds; s++) {
      Rng rng(7000 + s);
      std::vector<std::size_t> rs(n);
      for (auto& r : rs) r = rng.below(nq);
      rw::ForkResult fr = rw::fork(frame, sched, rs, gi.strategy.initial, rng);
      sizes.push_back(static_cast<double>(fr.records.size()));
    }
  } catch (const std::logic_error& e) {
    detail = std::string("structural assertion failed: ") + e.what();
    return false;
  }
  Summary s = summarize(sizes);
  double bound = static_cast<double>(n) * (eta - eta0) -
                 static_cast<double>(n) * static_cast<double>(n) / static_cast<double>(nq);
  std::ostringstream os;
  os << "mean |W| " << s.mean << " >= " << bound << " - 3se (" << 3 * s.stderr_mean << "), eta " << eta
     << ", t " << sched.ve.t;
  detail = os.str();
  return s.mean >= bound - 3 * s.stderr_mean;
}

}  // namespace

int main(int argc, char** argv) {
  std::string data_dir = "data";
  for (int i = 1; i + 1 < argc; i++)
    if (std::string(argv[i]) == "--data-dir") data_dir = argv[i + 1];

  // Corpus sanity: every shipped instance loads, validates, and (where
  // enumerable) its recorded gap matches a fresh exhaustive measurement.
  bool corpus_ok = true;
  std::string corpus_note = "no corpus directory";
  if (std::filesystem::exists(data_dir + "/csp")) {
    std::size_t files = 0;
    corpus_ok = true;
    for (const auto& entry : std::filesystem::directory_iterator(data_dir + "/csp")) {
      if (entry.path().extension() != ".json") continue;
      files++;
      try {
        pcp::CSPInstance x = pcp::load_csp(entry.path().string());
        double total = std::pow(static_cast<double>(x.alphabet_size), static_cast<double>(x.num_vars));
        if (x.gap > 0 && total <= 2e6) {
          bool sat = false;
          double gap = pcp::measure_gap_exhaustive(x, &sat);
          if (sat || std::abs(gap - x.gap) > 1e-12) corpus_ok = false;
        }
      } catch (const std::exception&) {
        corpus_ok = false;
      }
    }
    corpus_note = std::to_string(files) + " instances checked";
    if (files == 0) corpus_ok = false;
  } else {
    corpus_ok = false;
  }
  std::printf("[corpus     ] %s - %s\n", corpus_ok ? "PASS" : "FAIL", corpus_note.c_str());

  // Shared scenario runs feeding several criteria.
  exp::Report kilian_rep;  // built lazily inside its criteria

  bool kilian_ready = false;
  auto ensure_kilian = [&]() {
    if (!kilian_ready) {
      kilian_rep = kilian_report();
      kilian_ready = true;
    }
  };

  std::vector<Criterion> criteria;
  criteria.push_back({1, "merkle vector commitment", 5.0, criterion_merkle});
  criteria.push_back({2, "jordan decomposition", 0.0, criterion_jordan});
  criteria.push_back({3, "alternating-measurement law", 120.0, criterion_alternating});
  criteria.push_back({4, "value estimation", 0.0, [&](std::string& d) {
                        exp::Report rep = valest_report();
                        d = describe(rep, {"unbiased_mean_gap", "sequential_disagree_freq"});
                        return rep.pass();
                      }});
  criteria.push_back({5, "state repair", 600.0, [&](std::string& d) {
                        exp::Report rep = repair_report();
                        d = describe(rep, {});
                        return rep.pass();
                      }});
  criteria.push_back({6, "repeated-game separation", 900.0, [&](std::string& d) {
                        exp::Report rep = zhandry_report();
                        d = describe(rep, {});
                        return rep.pass();
                      }});
  criteria.push_back({7, "fork expectation", 0.0, criterion_fork});
  criteria.push_back({8, "collapse demo", 0.0, [&](std::string& d) {
                        exp::Report rep = collapse_report();
                        d = describe(rep, {});
                        return rep.pass();
                      }});
  criteria.push_back({9, "kilian extractor", 0.0, [&](std::string& d) {
                        ensure_kilian();
                        std::vector<std::string> names = {"honest_accept_rate", "extract_success_rate",
                                                          "win_rate_violations", "false_witnesses"};
                        d = describe(kilian_rep, names);
                        return checks_pass(kilian_rep, names);
                      }});
  criteria.push_back({10, "succinctness", 0.0, [&](std::string& d) {
                        ensure_kilian();
                        std::vector<std::string> names = {"succinct_r2", "succinct_ratio_at_max"};
                        d = describe(kilian_rep, names);
                        return checks_pass(kilian_rep, names);
                      }});

  bool all_pass = corpus_ok;
  for (Criterion& c : criteria) {
    exp::StopWatch watch;
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
      ok = false;
    }
    double secs = watch.seconds();
    if (c.time_limit_s > 0 && secs > c.time_limit_s) {
      ok = false;
      detail += " [over time limit]";
    }
    std::printf("[criterion %2d] %s (%.1f s) %s - %s\n", c.id, ok ? "PASS" : "FAIL", secs, c.name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    all_pass = all_pass && ok;
  }
  std::printf("acceptance: %s\n", all_pass ? "PASS" : "FAIL");
  return all_pass ? 0 : 1;
}
