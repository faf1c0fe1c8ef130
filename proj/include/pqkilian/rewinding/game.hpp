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
#include <stdexcept>
#include <vector>

#include "pqkilian/quantum/state.hpp"

namespace pqk::rw {

using qs::Complex;
using qs::Mat;
using qs::Vec;

/// A single-player game (R, Z, f): question set indices 0..|R|-1, answer
/// labels 0..|Z|-1, and a total win predicate.
struct Game {
  std::size_t num_questions = 0;
  std::size_t num_answers = 0;
  std::function<bool(std::size_t, std::size_t)> win;
};

/// A unitary quantum strategy on an answer register and internal registers,
/// presented in an explicit orthonormal working basis: basis vector i
/// carries the definite answer label answer_of[i]. apply_u(r, v) applies
/// U_{S,r} in these coordinates; the adjoint must invert it exactly.
struct Strategy {
  std::size_t dim = 0;
  std::vector<std::size_t> answer_of;
  std::function<void(std::size_t, Vec&)> apply_u;
  std::function<void(std::size_t, Vec&)> apply_u_dag;
  Vec initial;
};

/// Projector onto winning answers for challenge r, conjugated back through
/// the strategy unitary: v <- U_r^dag Pi_win U_r v.
inline void apply_win_projector(const Game& g, const Strategy& s, std::size_t r, Vec& v) {
  s.apply_u(r, v);
  for (Eigen::Index i = 0; i < v.size(); i++)
    if (!g.win(r, s.answer_of[static_cast<std::size_t>(i)])) v[i] = 0.0;
  s.apply_u_dag(r, v);
}

/// Exact strategy value: the mean over challenges of the winning-branch
/// mass. This is the brute-force oracle anchoring every statistical test.
inline double exact_value(const Game& g, const Strategy& s, const Vec& psi) {
  double total = 0.0;
  for (std::size_t r = 0; r < g.num_questions; r++) {
    Vec w = psi;
    apply_win_projector(g, s, r, w);
    total += w.squaredNorm();
  }
  return total / static_cast<double>(g.num_questions);
}

inline double exact_value(const Game& g, const Strategy& s) { return exact_value(g, s, s.initial); }

/// Validates the strategy surface: unitarity probes and answer labels.
inline void validate_strategy(const Game& g, const Strategy& s, Rng& rng, int probes = 3) {
  if (s.answer_of.size() != s.dim || static_cast<std::size_t>(s.initial.size()) != s.dim)
    throw std::invalid_argument("strategy: inconsistent dimensions");
  for (std::size_t z : s.answer_of)
    if (z >= g.num_answers) throw std::invalid_argument("strategy: answer label out of range");
  for (int t = 0; t < probes; t++) {
    std::size_t r = rng.below(g.num_questions);
    Vec v(static_cast<Eigen::Index>(s.dim));
    for (Eigen::Index i = 0; i < v.size(); i++)
      v[i] = Complex(rng.next_double() - 0.5, rng.next_double() - 0.5);
    v /= v.norm();
    Vec w = v;
    s.apply_u(r, w);
    if (std::abs(w.norm() - 1.0) > 1e-9) throw std::runtime_error("strategy: U_r does not preserve norm");
    s.apply_u_dag(r, w);
    if ((w - v).norm() > 1e-7) throw std::runtime_error("strategy: adjoint does not invert U_r");
  }
}

struct GameInstance {
  Game game;
  Strategy strategy;
};

/// The damage counterexample family: the win measurement for challenge r
/// projects onto u_r = sqrt(eps)|0> + sqrt(1-eps)|1+r> inside an internal
/// register of dimension |R|+1; all challenges share the same answer bit.
/// Working basis: index z*(|R|+1) + i for answer bit z and internal i.
inline GameInstance make_zhandry_game(std::size_t num_questions, double eps) {
  if (num_questions == 0 || eps < 0.0 || eps > 1.0) throw std::invalid_argument("zhandry game: bad parameters");
  std::size_t m = num_questions + 1;  // internal dimension
  GameInstance gi;
  gi.game.num_questions = num_questions;
  gi.game.num_answers = 2;
  gi.game.win = [](std::size_t, std::size_t z) { return z == 1; };

  gi.strategy.dim = 2 * m;
  gi.strategy.answer_of.resize(2 * m);
  for (std::size_t i = 0; i < 2 * m; i++) gi.strategy.answer_of[i] = i / m;

  double se = std::sqrt(eps), s1 = std::sqrt(1.0 - eps);
  // U_r swaps the u_r component between the two answer branches and fixes
  // the orthogonal complement; it is self-adjoint.
  auto apply = [m, se, s1](std::size_t r, Vec& v) {
    auto u_dot = [&](Eigen::Index base) {
      return se * v[base] + s1 * v[base + static_cast<Eigen::Index>(1 + r)];
    };
    Complex c0 = u_dot(0);
    Complex c1 = u_dot(static_cast<Eigen::Index>(m));
    auto add_u = [&](Eigen::Index base, Complex coef) {
      v[base] += coef * se;
      v[base + static_cast<Eigen::Index>(1 + r)] += coef * s1;
    };
    add_u(0, c1 - c0);
    add_u(static_cast<Eigen::Index>(m), c0 - c1);
  };
  gi.strategy.apply_u = apply;
  gi.strategy.apply_u_dag = apply;

  Vec init = Vec::Zero(static_cast<Eigen::Index>(2 * m));
  init[0] = 1.0;  // answer bit 0, internal |0>
  gi.strategy.initial = init;
  return gi;
}

/// Zhandry-family rank-one projectors on the bare internal register, for
/// the naive repetition arm (no strategy wrapper, direct measurements).
inline std::vector<Vec> zhandry_directions(std::size_t num_questions, double eps) {
  std::vector<Vec> dirs(num_questions);
  double se = std::sqrt(eps), s1 = std::sqrt(1.0 - eps);
  for (std::size_t r = 0; r < num_questions; r++) {
    Vec u = Vec::Zero(static_cast<Eigen::Index>(num_questions + 1));
    u[0] = se;
    u[static_cast<Eigen::Index>(1 + r)] = s1;
    dirs[r] = u;
  }
  return dirs;
}

/// Unique-answer variant: winning challenge r requires the distinct answer
/// label 1+r, produced exactly on the u_r component. Measuring the answer
/// register of an accepting response is a no-op (each accepting branch has
/// a definite label), so the game is collapsing by construction.
/// Working basis: indices 0..|R| are answer 0 with internal e_i; index
/// |R|+1+r is answer 1+r carrying internal u_r.
inline GameInstance make_unique_answer_game(std::size_t num_questions, double eps) {
  if (num_questions == 0 || eps < 0.0 || eps > 1.0) throw std::invalid_argument("answer game: bad parameters");
  std::size_t m = num_questions + 1;
  GameInstance gi;
  gi.game.num_questions = num_questions;
  gi.game.num_answers = m;
  gi.game.win = [](std::size_t r, std::size_t z) { return z == r + 1; };

  gi.strategy.dim = m + num_questions;
  gi.strategy.answer_of.resize(gi.strategy.dim);
  for (std::size_t i = 0; i < m; i++) gi.strategy.answer_of[i] = 0;
  for (std::size_t r = 0; r < num_questions; r++) gi.strategy.answer_of[m + r] = 1 + r;

  double se = std::sqrt(eps), s1 = std::sqrt(1.0 - eps);
  auto apply = [m, se, s1](std::size_t r, Vec& v) {
    Complex c = se * v[0] + s1 * v[static_cast<Eigen::Index>(1 + r)];
    Complex b = v[static_cast<Eigen::Index>(m + r)];
    // a <- a - c u_r + b u_r ; b_r <- c
    Complex delta = b - c;
    v[0] += delta * se;
    v[static_cast<Eigen::Index>(1 + r)] += delta * s1;
    v[static_cast<Eigen::Index>(m + r)] = c;
  };
  gi.strategy.apply_u = apply;
  gi.strategy.apply_u_dag = apply;

  Vec init = Vec::Zero(static_cast<Eigen::Index>(gi.strategy.dim));
  init[0] = 1.0;
  gi.strategy.initial = init;
  return gi;
}

/// Deterministic always-win strategy on a two-answer game; its value is 1.
inline GameInstance make_always_win_game(std::size_t num_questions) {
  GameInstance gi;
  gi.game.num_questions = num_questions;
  gi.game.num_answers = 2;
  gi.game.win = [](std::size_t, std::size_t z) { return z == 1; };
  gi.strategy.dim = 2;
  gi.strategy.answer_of = {0, 1};
  auto apply = [](std::size_t, Vec& v) { std::swap(v[0], v[1]); };
  gi.strategy.apply_u = apply;
  gi.strategy.apply_u_dag = apply;
  Vec init = Vec::Zero(2);
  init[0] = 1.0;
  gi.strategy.initial = init;
  return gi;
}

/// Uniform-random-answer strategy over a caller-supplied predicate; the
/// value equals the accepting fraction of (r, z) pairs.
inline GameInstance make_uniform_answer_game(std::size_t num_questions, std::size_t num_answers,
                                             std::function<bool(std::size_t, std::size_t)> win) {
  GameInstance gi;
  gi.game.num_questions = num_questions;
  gi.game.num_answers = num_answers;
  gi.game.win = std::move(win);
  gi.strategy.dim = num_answers;
  gi.strategy.answer_of.resize(num_answers);
  for (std::size_t z = 0; z < num_answers; z++) gi.strategy.answer_of[z] = z;
  auto noop = [](std::size_t, Vec&) {};
  gi.strategy.apply_u = noop;
  gi.strategy.apply_u_dag = noop;
  Vec init = Vec::Constant(static_cast<Eigen::Index>(num_answers),
                           Complex(1.0 / std::sqrt(static_cast<double>(num_answers)), 0.0));
  gi.strategy.initial = init;
  return gi;
}

}  // namespace pqk::rw
