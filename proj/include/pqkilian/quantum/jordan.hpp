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

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pqkilian/quantum/state.hpp"

namespace pqk::qs {

/// One invariant subspace of a projector pair. Two-dimensional blocks carry
/// all four basis vectors with phases fixed so that
///   v1 = sqrt(p) w1 + sqrt(1-p) w0   and   w1 = sqrt(p) v1 + sqrt(1-p) v0.
/// One-dimensional blocks keep only the labels that apply; p = 1 when both
/// projectors act as identity or both as zero, and p = 0 otherwise.
struct JordanBlock {
  double p = 0.0;
  int dim = 1;
  std::optional<Vec> v1, v0, w1, w0;

  Mat projector(std::size_t n) const {
    Mat pi = Mat::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    if (dim == 2) {
      pi += (*v1) * v1->adjoint();
      pi += (*v0) * v0->adjoint();
    } else {
      const Vec& u = v1 ? *v1 : (v0 ? *v0 : (w1 ? *w1 : *w0));
      pi += u * u.adjoint();
    }
    return pi;
  }
};

struct JordanDecomposition {
  std::vector<JordanBlock> blocks;
};

class JordanError : public std::runtime_error {
 public:
  explicit JordanError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline void check_projector(const Mat& p, double tol, const char* name) {
  if ((p - p.adjoint()).norm() > tol) throw JordanError(std::string(name) + ": not Hermitian");
  if ((p * p - p).norm() > tol) throw JordanError(std::string(name) + ": not idempotent");
}

/// Columns of an orthonormal basis for the eigenvalue~1 (or ~0) space.
inline Mat eigenspace_basis(const Mat& p, bool image, double cut = 0.5) {
  Eigen::SelfAdjointEigenSolver<Mat> es(p);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); i++) {
    double ev = es.eigenvalues()[i];
    if (image ? ev > cut : ev <= cut) keep.push_back(i);
  }
  Mat basis(p.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); k++) basis.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(keep[k]);
  return basis;
}

}  // namespace detail

/// Dense oracle-grade decomposition of a Hilbert space into the invariant
/// blocks of two projectors. Eigenvalues come from Pa Pb Pa restricted to
/// image(Pa); the kernel of Pa is completed with one-dimensional blocks.
/// Eigenvalues within cluster_tol merge onto their cluster mean.
inline JordanDecomposition jordan_decompose(const Mat& pa, const Mat& pb, double tol = 1e-8,
                                            double cluster_tol = 1e-7) {
  if (pa.rows() != pa.cols() || pb.rows() != pb.cols() || pa.rows() != pb.rows())
    throw std::invalid_argument("jordan: dimension mismatch");
  if (pa.rows() > (1 << 10)) throw std::invalid_argument("jordan: dense oracle limited to D <= 1024");
  detail::check_projector(pa, 1e-8, "Pa");
  detail::check_projector(pb, 1e-8, "Pb");

  const double edge = 1e-9;
  JordanDecomposition jd;

  Mat abasis = detail::eigenspace_basis(pa, true);
  if (abasis.cols() > 0) {
    Mat s = abasis.adjoint() * pb * abasis;
    Eigen::SelfAdjointEigenSolver<Mat> es(s);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); i++) {
      double p = std::clamp(es.eigenvalues()[i], 0.0, 1.0);
      Vec v1 = abasis * es.eigenvectors().col(i);
      JordanBlock blk;
      if (p > 1.0 - edge) {
        blk.p = 1.0;  // both act as identity
        blk.dim = 1;
        blk.v1 = v1;
        blk.w1 = v1;
      } else if (p < edge) {
        blk.p = 0.0;  // Pa identity, Pb zero
        blk.dim = 1;
        blk.v1 = v1;
        blk.w0 = v1;
      } else {
        blk.p = p;
        blk.dim = 2;
        Vec w1 = (pb * v1) / std::sqrt(p);
        Vec w0 = (v1 - std::sqrt(p) * w1) / std::sqrt(1.0 - p);
        Vec v0 = (w1 - std::sqrt(p) * v1) / std::sqrt(1.0 - p);
        blk.v1 = v1;
        blk.v0 = v0;
        blk.w1 = w1;
        blk.w0 = w0;
      }
      jd.blocks.push_back(std::move(blk));
    }
  }

  // Kernel completion: the part of ker(Pa) not already inside the 2-dim
  // blocks is invariant; split it by the compressed Pb.
  std::size_t n = static_cast<std::size_t>(pa.rows());
  Mat covered = Mat::Zero(pa.rows(), pa.cols());
  for (const JordanBlock& b : jd.blocks) covered += b.projector(n);
  Mat rest = Mat::Identity(pa.rows(), pa.cols()) - covered;
  Eigen::SelfAdjointEigenSolver<Mat> rs(rest);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < rs.eigenvalues().size(); i++)
    if (rs.eigenvalues()[i] > 0.5) keep.push_back(i);
  if (!keep.empty()) {
    Mat kbasis(pa.rows(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t k = 0; k < keep.size(); k++) kbasis.col(static_cast<Eigen::Index>(k)) = rs.eigenvectors().col(keep[k]);
    Mat s = kbasis.adjoint() * pb * kbasis;
    Eigen::SelfAdjointEigenSolver<Mat> es(s);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); i++) {
      double q = std::clamp(es.eigenvalues()[i], 0.0, 1.0);
      Vec u = kbasis * es.eigenvectors().col(i);
      JordanBlock blk;
      blk.dim = 1;
      if (q > 1.0 - edge) {
        blk.p = 0.0;  // Pa zero, Pb identity
        blk.v0 = u;
        blk.w1 = u;
      } else if (q < edge) {
        blk.p = 1.0;  // both act as zero
        blk.v0 = u;
        blk.w0 = u;
      } else {
        throw JordanError("jordan: kernel completion found a non-invariant direction");
      }
      jd.blocks.push_back(std::move(blk));
    }
  }

  // Cluster nearby eigenvalues onto their mean.
  std::vector<std::size_t> order(jd.blocks.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return jd.blocks[a].p < jd.blocks[b].p; });
  std::size_t start = 0;
  while (start < order.size()) {
    std::size_t end = start + 1;
    double sum = jd.blocks[order[start]].p;
    while (end < order.size() && jd.blocks[order[end]].p - jd.blocks[order[end - 1]].p <= cluster_tol) {
      sum += jd.blocks[order[end]].p;
      end++;
    }
    double mean = sum / static_cast<double>(end - start);
    for (std::size_t k = start; k < end; k++) jd.blocks[order[k]].p = mean;
    start = end;
  }

  // Residual checks: completeness and commutation with both projectors.
  Mat total = Mat::Zero(pa.rows(), pa.cols());
  for (const JordanBlock& b : jd.blocks) total += b.projector(n);
  if ((total - Mat::Identity(pa.rows(), pa.cols())).norm() > tol)
    throw JordanError("jordan: block projectors do not resolve the identity");
  for (const JordanBlock& b : jd.blocks) {
    Mat pj = b.projector(n);
    if ((pj * pa - pa * pj).norm() > tol || (pj * pb - pb * pj).norm() > tol)
      throw JordanError("jordan: block projector fails to commute");
  }
  return jd;
}

}  // namespace pqk::qs
