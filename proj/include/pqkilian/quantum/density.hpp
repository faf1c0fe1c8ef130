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

#include <stdexcept>

#include "pqkilian/quantum/state.hpp"

namespace pqk::qs {

/// Mixed-state oracle path; deliberately dense and small (D <= 256). This
/// is the brute-force reference the Monte-Carlo state-vector runs are
/// checked against.
class DensityOp {
 public:
  explicit DensityOp(Mat rho) : rho_(std::move(rho)) { validate(); }

  static DensityOp pure(const Vec& psi) { return DensityOp(psi * psi.adjoint()); }

  const Mat& matrix() const { return rho_; }
  std::size_t dim() const { return static_cast<std::size_t>(rho_.rows()); }

  void validate() const {
    if (rho_.rows() != rho_.cols()) throw std::invalid_argument("density: not square");
    if (rho_.rows() > 256) throw std::invalid_argument("density: oracle limited to D <= 256");
    if ((rho_ - rho_.adjoint()).norm() > 1e-9) throw std::invalid_argument("density: not Hermitian");
    if (std::abs(rho_.trace().real() - 1.0) > 1e-9 || std::abs(rho_.trace().imag()) > 1e-9)
      throw std::invalid_argument("density: trace is not 1");
    Eigen::SelfAdjointEigenSolver<Mat> es(rho_);
    if (es.eigenvalues().minCoeff() < -1e-9) throw std::invalid_argument("density: not positive semidefinite");
  }

  /// Exact binary-measurement channel: returns Pr[outcome 1] and replaces
  /// the state by the unconditional post-measurement mixture.
  double measure_binary_channel(const Mat& proj) {
    Mat p1 = proj * rho_ * proj;
    Mat rest = (Mat::Identity(rho_.rows(), rho_.cols()) - proj);
    Mat p0 = rest * rho_ * rest;
    double pr1 = p1.trace().real();
    rho_ = p1 + p0;
    return pr1;
  }

  /// Post-selects on outcome 1; throws if the outcome has no support.
  double postselect(const Mat& proj) {
    Mat p1 = proj * rho_ * proj;
    double pr1 = p1.trace().real();
    if (pr1 < 1e-12) throw std::runtime_error("density: post-selection on a null branch");
    rho_ = p1 / pr1;
    return pr1;
  }

  void apply_unitary(const Mat& u) { rho_ = u * rho_ * u.adjoint(); }

 private:
  Mat rho_;
};

inline double trace_distance(const Mat& a, const Mat& b) {
  Eigen::SelfAdjointEigenSolver<Mat> es(a - b);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

struct GentleCheckResult {
  double delta;           // 1 - Tr(Pi rho)
  double distance;        // d(rho, rho')
  bool bound_holds;       // distance < 2 sqrt(delta)
};

/// Measures how much post-selecting on an almost-certain outcome disturbs
/// the state; the gentle-measurement bound must hold whenever delta < 1.
inline GentleCheckResult gentle_check(const Mat& proj, const DensityOp& rho) {
  DensityOp work = rho;
  double pr1 = (proj * rho.matrix() * proj).trace().real();
  double delta = 1.0 - pr1;
  if (pr1 < 1e-12) throw std::runtime_error("gentle_check: outcome has no support (delta = 1 edge)");
  work.postselect(proj);
  double dist = trace_distance(rho.matrix(), work.matrix());
  GentleCheckResult res;
  res.delta = std::max(delta, 0.0);
  res.distance = dist;
  res.bound_holds = dist < 2.0 * std::sqrt(std::max(delta, 0.0)) + 1e-12;
  return res;
}

}  // namespace pqk::qs
