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
#include <memory>
#include <utility>

#include "pqkilian/common/rng.hpp"
#include "pqkilian/quantum/state.hpp"

namespace pqk::qs {

/// A unitary given by its action, never materialized. apply/apply_adjoint
/// must be exact inverses; probe_unitary spot-checks norm preservation.
struct ApplicableUnitary {
  std::function<void(Vec&)> apply;
  std::function<void(Vec&)> apply_adjoint;
};

inline void probe_unitary(const ApplicableUnitary& u, std::size_t dim, Rng& rng, int probes = 4,
                          double tol = kNormTol) {
  for (int t = 0; t < probes; t++) {
    Vec v(dim);
    for (Eigen::Index i = 0; i < v.size(); i++)
      v[i] = Complex(rng.next_double() - 0.5, rng.next_double() - 0.5);
    v /= v.norm();
    Vec w = v;
    u.apply(w);
    if (std::abs(w.norm() - 1.0) > tol) throw std::runtime_error("unitary probe: norm not preserved");
    u.apply_adjoint(w);
    if ((w - v).norm() > 1e-7) throw std::runtime_error("unitary probe: adjoint is not the inverse");
  }
}

/// Hermitian projector in one of three applicable forms:
///  (a) explicit dense matrix,
///  (b) a predicate over computational basis labels (diagonal projector),
///  (c) U^dagger (basis predicate) U for an applicable unitary U.
/// Forms (b) and (c) never materialize a matrix, which is what makes
/// thousands of measurements at large D affordable.
class StructuredProjector {
 public:
  static StructuredProjector dense(Mat m) {
    StructuredProjector p;
    p.kind_ = Kind::kDense;
    p.mat_ = std::make_shared<Mat>(std::move(m));
    return p;
  }

  static StructuredProjector basis_predicate(std::function<bool(std::size_t)> keep) {
    StructuredProjector p;
    p.kind_ = Kind::kPredicate;
    p.keep_ = std::move(keep);
    return p;
  }

  static StructuredProjector conjugated(ApplicableUnitary u, std::function<bool(std::size_t)> keep) {
    StructuredProjector p;
    p.kind_ = Kind::kConjugated;
    p.unitary_ = std::move(u);
    p.keep_ = std::move(keep);
    return p;
  }

  void apply(Vec& v) const {
    switch (kind_) {
      case Kind::kDense:
        v = (*mat_) * v;
        break;
      case Kind::kPredicate:
        for (Eigen::Index i = 0; i < v.size(); i++)
          if (!keep_(static_cast<std::size_t>(i))) v[i] = 0.0;
        break;
      case Kind::kConjugated:
        unitary_.apply(v);
        for (Eigen::Index i = 0; i < v.size(); i++)
          if (!keep_(static_cast<std::size_t>(i))) v[i] = 0.0;
        unitary_.apply_adjoint(v);
        break;
    }
  }

  Vec applied(const Vec& v) const {
    Vec w = v;
    apply(w);
    return w;
  }

 private:
  enum class Kind { kDense, kPredicate, kConjugated };
  Kind kind_ = Kind::kPredicate;
  std::shared_ptr<const Mat> mat_;
  std::function<bool(std::size_t)> keep_;
  ApplicableUnitary unitary_;
};

/// Idempotence/Hermiticity residual check on random probes, per the module
/// invariants. Dense form also checks Hermiticity directly.
inline void probe_projector(const StructuredProjector& p, std::size_t dim, Rng& rng, int probes = 4,
                            double tol = kNormTol) {
  for (int t = 0; t < probes; t++) {
    Vec v(dim);
    for (Eigen::Index i = 0; i < v.size(); i++)
      v[i] = Complex(rng.next_double() - 0.5, rng.next_double() - 0.5);
    v /= v.norm();
    Vec once = p.applied(v);
    Vec twice = p.applied(once);
    if ((twice - once).norm() > tol) throw std::runtime_error("projector probe: not idempotent");
    // Hermiticity via <u, Pv> == <Pu, v> on a second probe.
    Vec u(dim);
    for (Eigen::Index i = 0; i < u.size(); i++)
      u[i] = Complex(rng.next_double() - 0.5, rng.next_double() - 0.5);
    u /= u.norm();
    Complex lhs = u.dot(once);
    Complex rhs = p.applied(u).dot(v);
    if (std::abs(lhs - rhs) > 1e-7) throw std::runtime_error("projector probe: not Hermitian");
  }
}

}  // namespace pqk::qs
