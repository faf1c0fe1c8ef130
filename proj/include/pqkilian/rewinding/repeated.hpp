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

#include <functional>
#include <vector>

#include "pqkilian/rewinding/repair.hpp"

namespace pqk::rw {

/// Parameter schedule for the n-round player: eps = eta0/(2n+2),
/// delta = eta0^2/(c n^2) for the configurable universal constant c, and
/// T = ceil(1/sqrt(delta)) repair rounds.
struct PlaySchedule {
  std::size_t n = 1;
  double eta0 = 0.25;
  double c = 64.0;
  ValEstParams ve;
  std::size_t repair_rounds = 1;

  PlaySchedule(std::size_t rounds, double eta, double univ_c = 64.0) : n(rounds), eta0(eta), c(univ_c) {
    if (n == 0 || !(eta0 > 0.0 && eta0 <= 1.0)) throw std::invalid_argument("play schedule: bad parameters");
    double eps = eta0 / (2.0 * static_cast<double>(n) + 2.0);
    double delta = eta0 * eta0 / (c * static_cast<double>(n) * static_cast<double>(n));
    ve = ValEstParams(eps, delta);
    repair_rounds = static_cast<std::size_t>(std::ceil(1.0 / std::sqrt(delta)));
  }

  /// Same schedule shape with an explicitly overridden ValEst grain; used
  /// by desk-scale demos that cannot afford the full paper budget.
  PlaySchedule with_valest(const ValEstParams& override_ve) const {
    PlaySchedule s = *this;
    s.ve = override_ve;
    s.repair_rounds = static_cast<std::size_t>(std::ceil(1.0 / std::sqrt(override_ve.delta)));
    return s;
  }
};

/// The referee measures the answer register of the sent state (already
/// rotated by U_{S,r}) and returns the win bit, mutating the state. It may
/// additionally measure the response register (Fork does).
using RefereeCallback = std::function<int(std::size_t round, std::size_t r, Vec& sent, Rng& rng)>;

/// Plain referee: binary projective measurement of the win predicate on
/// the answer register. Consumes one uniform.
inline int referee_win_measurement(const Game& g, const Strategy& s, std::size_t r, Vec& sent, Rng& rng) {
  Vec proj = sent;
  for (Eigen::Index i = 0; i < proj.size(); i++)
    if (!g.win(r, s.answer_of[static_cast<std::size_t>(i)])) proj[i] = 0.0;
  double pr1 = std::clamp(proj.squaredNorm(), 0.0, 1.0);
  if (rng.next_double() < pr1) {
    sent = proj / std::sqrt(std::max(pr1, 1e-300));
    return 1;
  }
  sent = (sent - proj) / std::sqrt(std::max(1.0 - pr1, 1e-300));
  return 0;
}

inline std::size_t answer_label_count(const Strategy& s) {
  std::size_t mx = 0;
  for (std::size_t z : s.answer_of) mx = std::max(mx, z);
  return mx + 1;
}

/// Computational measurement of the answer register: collapses onto one
/// answer-label class. Consumes a uniform only when more than one class
/// carries weight, so collapsing games are measured for free.
inline std::size_t measure_answer_register(const Strategy& s, Vec& sent, Rng& rng) {
  std::vector<double> mass(answer_label_count(s), 0.0);
  for (Eigen::Index i = 0; i < sent.size(); i++)
    mass[s.answer_of[static_cast<std::size_t>(i)]] += std::norm(sent[i]);
  std::size_t support = 0, last = 0;
  for (std::size_t z = 0; z < mass.size(); z++)
    if (mass[z] > 1e-12) {
      support++;
      last = z;
    }
  std::size_t picked = last;
  if (support > 1) {
    double total = 0.0;
    for (double m : mass) total += m;
    double u = rng.next_double() * total;
    double acc = 0.0;
    for (std::size_t z = 0; z < mass.size(); z++) {
      acc += mass[z];
      if (u < acc) {
        picked = z;
        break;
      }
    }
    for (Eigen::Index i = 0; i < sent.size(); i++)
      if (s.answer_of[static_cast<std::size_t>(i)] != picked) sent[i] = 0.0;
    sent /= sent.norm();
  }
  return picked;
}

struct PlayRound {
  double estimate = 0.0;
  std::size_t repeat_count = 0;
  int win = 0;
  std::size_t repair_cost = 0;
  bool repair_timed_out = false;
};

struct PlayResult {
  std::vector<PlayRound> rounds;
  Vec final_state;
  std::size_t total_wins() const {
    std::size_t w = 0;
    for (const PlayRound& r : rounds) w += static_cast<std::size_t>(r.win);
    return w;
  }
};

/// The n-round repeated-game player: per round, estimate the value, play
/// the round coherently, hand the answer register to the referee, undo the
/// strategy unitary, and repair. Challenges come from the caller (the
/// referee side samples them).
inline PlayResult repeated_play(const GameFrame& frame, const PlaySchedule& sched,
                                const std::vector<std::size_t>& challenges, const RefereeCallback& referee,
                                const Vec& initial, Rng& rng) {
  if (challenges.size() != sched.n) throw std::invalid_argument("repeated_play: challenge count mismatch");
  PlayResult out;
  out.rounds.resize(sched.n);
  Vec psi = initial;
  for (std::size_t i = 0; i < sched.n; i++) {
    ValEstResult est = val_est(frame, sched.ve, psi, rng);
    psi = est.post;
    out.rounds[i].estimate = est.estimate;
    out.rounds[i].repeat_count = est.repeat_count;

    std::size_t r = challenges[i];
    frame.strategy().apply_u(r, psi);
    int b = referee(i, r, psi, rng);
    frame.strategy().apply_u_dag(r, psi);
    out.rounds[i].win = b;

    RepairResult rep = repair(frame, sched.ve, win_measurement(frame, r), b, est.repeat_count,
                              sched.repair_rounds, psi, rng);
    psi = rep.post;
    out.rounds[i].repair_cost = rep.calls_m + rep.calls_p;
    out.rounds[i].repair_timed_out = rep.loop_timed_out;
  }
  out.final_state = psi;
  return out;
}

}  // namespace pqk::rw
