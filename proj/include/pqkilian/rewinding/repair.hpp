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

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "pqkilian/common/stats.hpp"
#include "pqkilian/rewinding/valest.hpp"

namespace pqk::rw {

/// Closed estimate window [p - eps, p + eps] on the integer repeat-count
/// grid: |m' - m_p| <= eps * t with boundary grid points included.
struct EstimateWindow {
  std::size_t lo = 0, hi = 0;  // inclusive, in 0..2t

  static EstimateWindow centered(std::size_t m_p, const ValEstParams& vp) {
    double radius = vp.eps * static_cast<double>(vp.t);
    double lo_d = static_cast<double>(m_p) - radius;
    double hi_d = static_cast<double>(m_p) + radius;
    EstimateWindow w;
    w.lo = lo_d <= 0.0 ? 0 : static_cast<std::size_t>(std::ceil(lo_d - 1e-9));
    w.hi = static_cast<std::size_t>(std::floor(hi_d + 1e-9));
    if (w.hi > 2 * vp.t) w.hi = 2 * vp.t;
    return w;
  }

  bool contains(std::size_t m) const { return m >= lo && m <= hi; }
};

/// The measured-value POVM element of ValEst restricted to the window:
/// diagonal in the Jordan frame with weights Pr[Bin(2t, p_j) in window].
/// This is the compression <0_W| A_p |0_W> of the window projector of the
/// dilated measurement onto the fresh-ancilla slice, which is all that the
/// repair walk below ever needs.
inline std::vector<double> window_weights(const GameFrame& frame, const ValEstParams& vp,
                                          const EstimateWindow& w) {
  std::vector<double> g(frame.dim());
  for (std::size_t j = 0; j < frame.dim(); j++)
    g[j] = binom_range_prob(2 * vp.t, w.lo, w.hi, frame.eigenvalues()[j]);
  return g;
}

/// A binary projective measurement on the game space, given by its
/// outcome-1 projector applier; outcome 0 is the complement.
struct BinaryGameMeasurement {
  std::function<void(Vec&)> apply_one;
};

inline BinaryGameMeasurement win_measurement(const GameFrame& frame, std::size_t r) {
  const Game* g = &frame.game();
  const Strategy* s = &frame.strategy();
  return BinaryGameMeasurement{[g, s, r](Vec& v) { apply_win_projector(*g, *s, r, v); }};
}

struct RepairResult {
  Vec post;                     // repaired state on the game space
  std::size_t calls_m = 0;      // applications of the estimate measurement A_p
  std::size_t calls_p = 0;      // applications of the damage measurement B_k
  bool loop_timed_out = false;  // T rounds elapsed without A_p -> 1
  std::size_t resample_draws = 0;
};

/// State repair after a damaging binary measurement, run entirely inside
/// the invariant subspace V0 + A_p V0 of the dilated pair (A_p, B_k):
/// every reachable vector is a_dil = a x |0_W> + A_p (b x |0_W>), because
/// B_k projects the ancillas back onto |0_W> and A_p is idempotent. Inner
/// products against the compression G close the algebra:
///   |x|^2 = |a|^2 + 2 Re<a, G b> + <b, G b>,
///   A_p x  -> (0, a + b),
///   B_k x  -> (Pi_k (a + G b), 0).
/// The final "apply U_M and discard W" step composes with the next
/// measurement of M as an incoherent ValEst trajectory conditioned on the
/// estimate window (all W ancillas are write-once controls, so measuring
/// them late equals measuring them as they are produced); rejection
/// sampling realizes the conditioning exactly.
inline RepairResult repair(const GameFrame& frame, const ValEstParams& vp, const BinaryGameMeasurement& pk,
                           int damage_outcome, std::size_t m_p, std::size_t T, const Vec& psi, Rng& rng,
                           std::size_t max_resample = 200000) {
  EstimateWindow window = EstimateWindow::centered(m_p, vp);
  std::vector<double> g = window_weights(frame, vp, window);

  // Work in frame coordinates where G is diagonal.
  Vec a = frame.to_frame(psi);
  Vec b = Vec::Zero(a.size());

  auto gmul = [&](const Vec& v) {
    Vec out = v;
    for (Eigen::Index j = 0; j < out.size(); j++) out[j] *= g[static_cast<std::size_t>(j)];
    return out;
  };
  auto apply_pk_frame = [&](const Vec& v, bool one) {
    Vec h = frame.from_frame(v);
    Vec proj = h;
    pk.apply_one(proj);
    return frame.to_frame(one ? proj : Vec(h - proj));
  };

  RepairResult res;
  auto measure_a = [&]() {
    res.calls_m++;
    Vec merged = a + b;
    double pr1 = std::clamp(merged.dot(gmul(merged)).real(), 0.0, 1.0);
    if (rng.next_double() < pr1) {
      b = merged / std::sqrt(std::max(pr1, 1e-300));
      a = Vec::Zero(a.size());
      return 1;
    }
    // Complement of A_p maps (a, b) to (a, -a).
    double inv = 1.0 / std::sqrt(std::max(1.0 - pr1, 1e-300));
    a *= inv;
    b = -a;
    return 0;
  };
  auto measure_b = [&]() {
    res.calls_p++;
    // B_k x = (Pi_k (a + G b)) x |0_W|; the state is normalized, so the
    // branch mass is the squared norm directly.
    Vec target = apply_pk_frame(a + gmul(b), damage_outcome == 1);
    double pr_match = std::clamp(target.squaredNorm(), 0.0, 1.0);
    if (rng.next_double() < pr_match) {
      a = target / std::sqrt(std::max(pr_match, 1e-300));
      b = Vec::Zero(a.size());
      return 1;
    }
    double inv = 1.0 / std::sqrt(std::max(1.0 - pr_match, 1e-300));
    a = (a - target) * inv;
    b *= inv;
    return 0;
  };

  int last_a = measure_a();
  if (last_a != 1) {
    for (std::size_t round = 0; round < T; round++) {
      measure_b();
      last_a = measure_a();
      if (last_a == 1) break;
    }
  }
  res.loop_timed_out = last_a != 1;

  // Final step: apply U_M, discard W; realized as a ValEst trajectory on
  // the residual game vector conditioned on (window / complement).
  Vec residual;
  bool want_window;
  if (last_a == 1) {
    residual = frame.from_frame(b);  // state is A_p(c x |0>), c = b
    want_window = true;
  } else {
    residual = frame.from_frame(a);  // state is (I - A_p)(a x |0>)
    want_window = false;
  }
  residual /= residual.norm();

  for (;;) {
    res.resample_draws++;
    if (res.resample_draws > max_resample)
      throw std::runtime_error("repair: conditioned trajectory resampling exceeded its cap");
    ValEstResult trial = val_est(frame, vp, residual, rng);
    if (window.contains(trial.repeat_count) == want_window) {
      res.post = trial.post;
      break;
    }
  }
  return res;
}

struct RepairExptResult {
  std::size_t m_p = 0;       // first estimate, on the repeat-count grid
  double estimate = 0.0;     // m_p / t - 1/2
  int damage_outcome = 0;
  std::size_t r_count = 0;   // calls to M and P inside Repair
  Vec post;
};

/// The measure / damage / repair experiment: M -> p, P -> k, Repair(k, p).
/// Applying it twice and comparing the two estimates exercises its
/// almost-projectivity; r_count drives the expected-cost check.
inline RepairExptResult run_repair_expt(const GameFrame& frame, const ValEstParams& vp,
                                        const BinaryGameMeasurement& pk, std::size_t T, const Vec& psi,
                                        Rng& rng) {
  RepairExptResult out;
  ValEstResult est = val_est(frame, vp, psi, rng);
  out.m_p = est.repeat_count;
  out.estimate = est.estimate;

  // Damage: the binary projective measurement P on the game space.
  Vec proj = est.post;
  pk.apply_one(proj);
  double pr1 = std::clamp(proj.squaredNorm(), 0.0, 1.0);
  Vec damaged;
  if (rng.next_double() < pr1) {
    out.damage_outcome = 1;
    damaged = proj / std::sqrt(std::max(pr1, 1e-300));
  } else {
    out.damage_outcome = 0;
    damaged = (est.post - proj) / std::sqrt(std::max(1.0 - pr1, 1e-300));
  }

  RepairResult rep = repair(frame, vp, pk, out.damage_outcome, out.m_p, T, damaged, rng);
  out.r_count = rep.calls_m + rep.calls_p;
  out.post = rep.post;
  return out;
}

}  // namespace pqk::rw
