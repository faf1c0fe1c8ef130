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

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <vector>

#include "pqkilian/common/rng.hpp"
#include "pqkilian/quantum/measure.hpp"
#include "pqkilian/rewinding/game.hpp"

namespace pqk::rw {

/// t(eps, delta) = max{ceil(n_{eps/2,delta/4}/2), ceil(log_{5/8}(delta/2))}
/// with n_{e,d} = ln(1/(2d)) / (2 e^2); natural logs, ceilings where the
/// formulas leave reals.
struct ValEstParams {
  double eps = 0.1;
  double delta = 0.05;
  std::size_t t = 0;

  ValEstParams() { derive(); }
  ValEstParams(double e, double d) : eps(e), delta(d) { derive(); }

  void derive() {
    if (!(eps > 0.0 && eps < 1.0 && delta > 0.0 && delta < 1.0))
      throw std::invalid_argument("valest params: eps, delta must be in (0,1)");
    double n_chernoff = std::log(1.0 / (2.0 * (delta / 4.0))) / (2.0 * (eps / 2.0) * (eps / 2.0));
    double tail = std::log(delta / 2.0) / std::log(5.0 / 8.0);
    t = static_cast<std::size_t>(std::max(std::ceil(n_chernoff / 2.0), std::ceil(tail)));
    if (t < 1) t = 1;
  }
};

/// Estimate grid: p_tilde = 2*(m/2t) - 1/2 = m/t - 1/2 for the repeat
/// count m in 0..2t.
inline double estimate_from_count(std::size_t m, std::size_t t) {
  return static_cast<double>(m) / static_cast<double>(t) - 0.5;
}

/// Ambient register slices: 0 = top, 1 = bottom, 2+r = |r,r>. The |+_R>
/// amplitudes on the slices are (1/2, 1/2, 1/sqrt(2|R|), ...).
inline double plus_slice_coefficient(std::size_t slice, std::size_t num_questions) {
  if (slice <= 1) return 0.5;
  return 1.0 / std::sqrt(2.0 * static_cast<double>(num_questions));
}

/// Jordan frame of the projector pair (Pi_Game, Pi_+R). The compression of
/// Pi_Game onto the |+_R> slice is
///     E = 1/4 I + (1/(2|R|)) sum_r Pi_{f,r},
/// acting on the strategy space; its eigenpairs (p_j, psi_j) label the
/// Jordan blocks reachable from any |+_R> x psi state, and every eigenvalue
/// lies in [1/4, 3/4] thanks to the top/bottom branches.
class GameFrame {
 public:
  GameFrame(Game game, Strategy strategy) : game_(std::move(game)), strategy_(std::move(strategy)) {
    std::size_t d = strategy_.dim;
    Mat e = Mat::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; i++) {
      Vec col = Vec::Zero(static_cast<Eigen::Index>(d));
      col[static_cast<Eigen::Index>(i)] = 1.0;
      Vec acc = Vec::Zero(static_cast<Eigen::Index>(d));
      for (std::size_t r = 0; r < game_.num_questions; r++) {
        Vec w = col;
        apply_win_projector(game_, strategy_, r, w);
        acc += w;
      }
      e.col(static_cast<Eigen::Index>(i)) = acc / (2.0 * static_cast<double>(game_.num_questions));
      e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) += 0.25;
    }
    Mat herm = 0.5 * (e + e.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(herm);
    if (es.info() != Eigen::Success) throw std::runtime_error("game frame: eigensolve failed");
    eigvecs_ = es.eigenvectors();
    eigvals_.resize(d);
    sqp_.resize(d);
    sq1p_.resize(d);
    for (std::size_t j = 0; j < d; j++) {
      double p = es.eigenvalues()[static_cast<Eigen::Index>(j)];
      if (p < 0.25 - 1e-7 || p > 0.75 + 1e-7)
        throw std::runtime_error("game frame: eigenvalue escaped [1/4, 3/4]");
      p = std::clamp(p, 0.25, 0.75);
      eigvals_[j] = p;
      sqp_[j] = std::sqrt(p);
      sq1p_[j] = std::sqrt(1.0 - p);
    }
  }

  const Game& game() const { return game_; }
  const Strategy& strategy() const { return strategy_; }
  std::size_t dim() const { return strategy_.dim; }
  const std::vector<double>& eigenvalues() const { return eigvals_; }

  Vec to_frame(const Vec& psi) const { return eigvecs_.adjoint() * psi; }
  Vec from_frame(const Vec& c) const { return eigvecs_ * c; }

  /// <psi| E |psi> = 1/4 + Val/2; exposed for cross-checks.
  double compressed_expectation(const Vec& psi) const {
    Vec c = to_frame(psi);
    double s = 0;
    for (std::size_t j = 0; j < dim(); j++) s += std::norm(c[static_cast<Eigen::Index>(j)]) * eigvals_[j];
    return s;
  }

  double sqp(std::size_t j) const { return sqp_[j]; }
  double sq1p(std::size_t j) const { return sq1p_[j]; }

 private:
  Game game_;
  Strategy strategy_;
  Mat eigvecs_;
  std::vector<double> eigvals_;
  std::vector<double> sqp_, sq1p_;
};

/// Reconstructs sum_j c_j w_j^0 in the ambient (register x game) space and
/// collapses the register factor in the computational basis (the trace-out
/// of an entangled register). Uses w_j^0 = (v_j^1 - sqrt(p_j) w_j^1) /
/// sqrt(1-p_j) and v_j^1 = Pi_Game w_j^1 / sqrt(p_j); p_j in [1/4,3/4]
/// keeps everything well conditioned. Consumes one uniform.
inline Vec collapse_registers_from_w0(const GameFrame& frame, const Vec& c, Rng& rng) {
  std::size_t d = frame.dim();
  std::size_t nr = frame.game().num_questions;
  std::size_t slices = nr + 2;

  Vec a(static_cast<Eigen::Index>(d)), b(static_cast<Eigen::Index>(d));
  for (std::size_t j = 0; j < d; j++) {
    a[static_cast<Eigen::Index>(j)] = c[static_cast<Eigen::Index>(j)] / (frame.sqp(j) * frame.sq1p(j));
    b[static_cast<Eigen::Index>(j)] = c[static_cast<Eigen::Index>(j)] * frame.sqp(j) / frame.sq1p(j);
  }
  Vec ah = frame.from_frame(a);
  Vec bh = frame.from_frame(b);

  std::vector<Vec> parts(slices);
  for (std::size_t s = 0; s < slices; s++) {
    double coef = plus_slice_coefficient(s, nr);
    if (s == 0) {
      parts[s] = coef * (ah - bh);
    } else if (s == 1) {
      parts[s] = -coef * bh;
    } else {
      Vec w = ah;
      apply_win_projector(frame.game(), frame.strategy(), s - 2, w);
      parts[s] = coef * (w - bh);
    }
  }
  std::vector<double> mass(slices);
  double total = 0.0;
  for (std::size_t s = 0; s < slices; s++) {
    mass[s] = parts[s].squaredNorm();
    total += mass[s];
  }
  double u = rng.next_double() * total;
  std::size_t pick = slices - 1;
  double acc = 0.0;
  for (std::size_t s = 0; s < slices; s++) {
    acc += mass[s];
    if (u < acc) {
      pick = s;
      break;
    }
  }
  return parts[pick] / std::sqrt(std::max(mass[pick], 1e-300));
}

struct ValEstResult {
  std::size_t repeat_count = 0;  // m in 0..2t
  double estimate = 0.0;         // m/t - 1/2
  bool timed_out = false;        // disentangling tail hit its cap
  Vec post;                      // post-measurement state on the game space
  std::vector<int> log;          // L_1..L_{2t} plus tail outcomes
};

namespace detail {

/// Walk state for the alternating measurements, tracked per Jordan block.
/// One global outcome bit is shared by all blocks, every transition
/// coefficient is real, and the only negative coefficient (-sqrt(p) on the
/// drop branch from a 0-labeled vector) hits all blocks at once, i.e. it
/// is a global phase. The walk therefore evolves squared block weights in
/// real arithmetic; the initial amplitudes are kept to rebuild the exit
/// state. Consumes one uniform per step.
struct FrameWalk {
  const GameFrame* frame;
  Vec c0;                   // initial amplitudes in the frame
  std::vector<double> s;    // current squared weights, unnormalized
  std::vector<double> s0;   // initial squared weights
  int bit = 1;              // current basis label bit; the start is w^1

  FrameWalk(const GameFrame* f, Vec initial) : frame(f), c0(std::move(initial)) {
    std::size_t d = frame->dim();
    s.resize(d);
    s0.resize(d);
    for (std::size_t j = 0; j < d; j++) {
      s0[j] = std::norm(c0[static_cast<Eigen::Index>(j)]);
      s[j] = s0[j];
    }
  }

  int step(Rng& rng) {
    const std::vector<double>& p = frame->eigenvalues();
    std::size_t d = s.size();
    double total = 0.0, mass_p = 0.0;
    for (std::size_t j = 0; j < d; j++) {
      total += s[j];
      mass_p += s[j] * p[j];
    }
    if (!(total > 0.0)) throw std::runtime_error("frame walk: weights collapsed to zero");
    double pr1 = (bit == 1 ? mass_p : total - mass_p) / total;
    pr1 = std::clamp(pr1, 0.0, 1.0);
    int outcome = rng.next_double() < pr1 ? 1 : 0;
    // coef^2 is p_j when the outcome repeats a 1-path and on the 0->0
    // drop, and 1-p_j on the flips; see the four transition relations.
    bool use_p = (outcome == 1) == (bit == 1);
    for (std::size_t j = 0; j < d; j++) s[j] *= use_p ? p[j] : 1.0 - p[j];
    if (total < 1e-100) {
      double inv = 1.0 / total;
      for (std::size_t j = 0; j < d; j++) s[j] *= inv;
    }
    bit = outcome;
    return outcome;
  }

  /// Current amplitudes: the initial phases with the walked magnitudes,
  /// up to an irrelevant global phase. Normalized.
  Vec amplitudes() const {
    std::size_t d = s.size();
    Vec c(static_cast<Eigen::Index>(d));
    double total = 0.0;
    for (std::size_t j = 0; j < d; j++) total += s[j];
    for (std::size_t j = 0; j < d; j++) {
      if (s0[j] <= 0.0) {
        c[static_cast<Eigen::Index>(j)] = 0.0;
      } else {
        c[static_cast<Eigen::Index>(j)] =
            c0[static_cast<Eigen::Index>(j)] * std::sqrt(s[j] / (s0[j] * total));
      }
    }
    return c;
  }
};

}  // namespace detail

/// ValEst on the Jordan frame: initialize the control registers to |+_R>,
/// alternate the game measurement and the |+_R> measurement 2t times,
/// disentangle with up to 2t further measurements, discard the registers,
/// and output 2*NReps(1, L) - 1/2. Identical in distribution to
/// val_est_explicit; one uniform per measurement plus one for the rare
/// timed-out register collapse.
inline ValEstResult val_est(const GameFrame& frame, const ValEstParams& vp, const Vec& psi, Rng& rng) {
  std::size_t two_t = 2 * vp.t;
  detail::FrameWalk walk(&frame, frame.to_frame(psi));
  ValEstResult res;
  res.log.reserve(two_t + 2);

  std::size_t m = 0;
  int prev = 1;
  for (std::size_t i = 0; i < two_t; i++) {
    int b = walk.step(rng);
    res.log.push_back(b);
    if (b == prev) m++;
    prev = b;
  }
  res.repeat_count = m;
  res.estimate = estimate_from_count(m, vp.t);

  bool disentangled = res.log.back() == 1;
  if (!disentangled) {
    for (std::size_t extra = 0; extra < two_t && !disentangled; extra += 2) {
      res.log.push_back(walk.step(rng));
      int b = walk.step(rng);
      res.log.push_back(b);
      disentangled = b == 1;
    }
  }

  if (disentangled) {
    res.post = frame.from_frame(walk.amplitudes());  // registers end in |+_R>, a clean product
  } else {
    res.timed_out = true;
    res.post = collapse_registers_from_w0(frame, walk.amplitudes(), rng);
  }
  res.post /= res.post.norm();
  return res;
}

// ---- Explicit workspace engine (oracle-grade cross-check) ----

/// Builds the literal (R',R) x game workspace as quantum_sim primitives:
/// the controlled game projector in conjugated form and the |+_R> projector
/// as a Householder-conjugated basis predicate.
struct ExplicitWorkspace {
  qs::RegisterLayout layout;
  qs::StructuredProjector game_proj;
  qs::StructuredProjector plus_proj;
  std::size_t slices = 0;
  std::size_t d = 0;

  static ExplicitWorkspace build(const Game& g, const Strategy& s) {
    ExplicitWorkspace ws;
    ws.d = s.dim;
    ws.slices = g.num_questions + 2;
    ws.layout.factors = {{"register", ws.slices}, {"game", ws.d}};
    ws.layout.validate();

    const Game* gp = &g;
    const Strategy* sp = &s;
    std::size_t d = ws.d, slices = ws.slices;

    // Controlled strategy unitary: slice r applies U_{S,r}; the top and
    // bottom slices carry register value 0 and get U_{S,0}.
    qs::ApplicableUnitary ctrl_u;
    ctrl_u.apply = [gp, sp, d, slices](Vec& v) {
      for (std::size_t sl = 0; sl < slices; sl++) {
        std::size_t r = sl <= 1 ? 0 : sl - 2;
        Vec seg = v.segment(static_cast<Eigen::Index>(sl * d), static_cast<Eigen::Index>(d));
        sp->apply_u(r, seg);
        v.segment(static_cast<Eigen::Index>(sl * d), static_cast<Eigen::Index>(d)) = seg;
      }
      (void)gp;
    };
    ctrl_u.apply_adjoint = [gp, sp, d, slices](Vec& v) {
      for (std::size_t sl = 0; sl < slices; sl++) {
        std::size_t r = sl <= 1 ? 0 : sl - 2;
        Vec seg = v.segment(static_cast<Eigen::Index>(sl * d), static_cast<Eigen::Index>(d));
        sp->apply_u_dag(r, seg);
        v.segment(static_cast<Eigen::Index>(sl * d), static_cast<Eigen::Index>(d)) = seg;
      }
      (void)gp;
    };
    auto win_keep = [gp, sp, d](std::size_t index) {
      std::size_t sl = index / d, h = index % d;
      if (sl == 0) return true;   // top branch always wins
      if (sl == 1) return false;  // bottom branch always loses
      return gp->win(sl - 2, sp->answer_of[h]);
    };
    ws.game_proj = qs::StructuredProjector::conjugated(ctrl_u, win_keep);

    // |+_R><+_R| x I via a register-factor Householder that maps |+_R> to
    // the top slice, conjugating the keep-top predicate.
    std::size_t nq = g.num_questions;
    Eigen::VectorXd hv(static_cast<Eigen::Index>(slices));
    for (std::size_t sl = 0; sl < slices; sl++) hv[static_cast<Eigen::Index>(sl)] = plus_slice_coefficient(sl, nq);
    Eigen::VectorXd refl = -hv;
    refl[0] += 1.0;  // e_top - |+_R>
    double rn = refl.norm();
    if (rn > 1e-12) refl /= rn;
    auto householder = [refl, d, slices](Vec& v) {
      for (std::size_t h = 0; h < d; h++) {
        Complex dot = 0.0;
        for (std::size_t sl = 0; sl < slices; sl++)
          dot += refl[static_cast<Eigen::Index>(sl)] * v[static_cast<Eigen::Index>(sl * d + h)];
        for (std::size_t sl = 0; sl < slices; sl++)
          v[static_cast<Eigen::Index>(sl * d + h)] -= 2.0 * refl[static_cast<Eigen::Index>(sl)] * dot;
      }
    };
    qs::ApplicableUnitary hh{householder, householder};
    ws.plus_proj = qs::StructuredProjector::conjugated(hh, [d](std::size_t index) { return index / d == 0; });
    return ws;
  }

  /// |+_R> tensor psi as a workspace state.
  qs::StateVector initial_state(const Vec& psi) const {
    Vec x = Vec::Zero(static_cast<Eigen::Index>(slices * d));
    std::size_t nq = slices - 2;
    for (std::size_t sl = 0; sl < slices; sl++)
      x.segment(static_cast<Eigen::Index>(sl * d), static_cast<Eigen::Index>(d)) =
          plus_slice_coefficient(sl, nq) * psi;
    return qs::StateVector(layout, std::move(x));
  }
};

/// Literal state-vector ValEst over the explicit workspace; distributed
/// identically to val_est and used to validate it at small t.
inline ValEstResult val_est_explicit(const Game& g, const Strategy& s, const ValEstParams& vp, const Vec& psi,
                                     Rng& rng) {
  ExplicitWorkspace ws = ExplicitWorkspace::build(g, s);
  qs::StateVector state = ws.initial_state(psi);
  std::size_t d = ws.d, slices = ws.slices, nq = slices - 2;

  std::size_t two_t = 2 * vp.t;
  ValEstResult res;
  std::size_t m = 0;
  int prev = 1;
  for (std::size_t i = 0; i < two_t; i++) {
    int b = qs::measure_binary(i % 2 == 0 ? ws.game_proj : ws.plus_proj, state, rng);
    res.log.push_back(b);
    if (b == prev) m++;
    prev = b;
  }
  res.repeat_count = m;
  res.estimate = estimate_from_count(m, vp.t);

  bool disentangled = res.log.back() == 1;
  if (!disentangled) {
    for (std::size_t extra = 0; extra < two_t && !disentangled; extra += 2) {
      res.log.push_back(qs::measure_binary(ws.game_proj, state, rng));
      int b = qs::measure_binary(ws.plus_proj, state, rng);
      res.log.push_back(b);
      disentangled = b == 1;
    }
  }

  const Vec& x = state.amplitudes();
  if (disentangled) {
    Vec y = Vec::Zero(static_cast<Eigen::Index>(d));
    for (std::size_t sl = 0; sl < slices; sl++)
      y += plus_slice_coefficient(sl, nq) *
           x.segment(static_cast<Eigen::Index>(sl * d), static_cast<Eigen::Index>(d));
    res.post = y;
  } else {
    res.timed_out = true;
    std::vector<double> mass(slices);
    double total = 0.0;
    for (std::size_t sl = 0; sl < slices; sl++) {
      mass[sl] = x.segment(static_cast<Eigen::Index>(sl * d), static_cast<Eigen::Index>(d)).squaredNorm();
      total += mass[sl];
    }
    double u = rng.next_double() * total;
    std::size_t pick = slices - 1;
    double acc = 0.0;
    for (std::size_t sl = 0; sl < slices; sl++) {
      acc += mass[sl];
      if (u < acc) {
        pick = sl;
        break;
      }
    }
    res.post = x.segment(static_cast<Eigen::Index>(pick * d), static_cast<Eigen::Index>(d));
  }
  res.post /= res.post.norm();
  return res;
}

}  // namespace pqk::rw
