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

#include <complex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace pqk::qs {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

inline constexpr double kNormTol = 1e-9;
inline constexpr std::size_t kDimensionCap = std::size_t{1} << 18;

/// Ordered named register factors; factor 0 is the most significant index
/// digit, so basis index = ((i0 * d1 + i1) * d2 + i2) ...
struct RegisterLayout {
  struct Factor {
    std::string name;
    std::size_t dim;
  };
  std::vector<Factor> factors;

  std::size_t dim() const {
    std::size_t d = 1;
    for (const Factor& f : factors) d *= f.dim;
    return d;
  }

  void validate(std::size_t cap = kDimensionCap) const {
    std::size_t d = 1;
    for (const Factor& f : factors) {
      if (f.dim == 0) throw std::invalid_argument("layout: zero-dimension factor " + f.name);
      if (d > cap / f.dim) throw std::invalid_argument("layout: dimension cap exceeded");
      d *= f.dim;
    }
  }

  std::size_t factor_count() const { return factors.size(); }

  /// Decomposes a flat basis index into per-factor digits.
  std::vector<std::size_t> digits(std::size_t index) const {
    std::vector<std::size_t> out(factors.size());
    for (std::size_t k = factors.size(); k-- > 0;) {
      out[k] = index % factors[k].dim;
      index /= factors[k].dim;
    }
    return out;
  }

  std::size_t flat(const std::vector<std::size_t>& digit) const {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < factors.size(); k++) idx = idx * factors[k].dim + digit[k];
    return idx;
  }
};

/// A pure state over a layout; mutated in place by measurements. Norm is
/// re-checked after every operation.
class StateVector {
 public:
  StateVector(RegisterLayout layout, Vec amps) : layout_(std::move(layout)), amps_(std::move(amps)) {
    layout_.validate();
    if (static_cast<std::size_t>(amps_.size()) != layout_.dim())
      throw std::invalid_argument("state: amplitude count does not match layout");
    assert_normalized();
  }

  static StateVector basis(RegisterLayout layout, std::size_t index) {
    Vec v = Vec::Zero(static_cast<Eigen::Index>(layout.dim()));
    v[static_cast<Eigen::Index>(index)] = 1.0;
    return StateVector(std::move(layout), std::move(v));
  }

  const RegisterLayout& layout() const { return layout_; }
  const Vec& amplitudes() const { return amps_; }
  Vec& amplitudes() { return amps_; }
  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }

  double norm() const { return amps_.norm(); }

  void renormalize() {
    double n = amps_.norm();
    if (n < 1e-12) throw std::runtime_error("state: cannot renormalize a null vector");
    amps_ /= n;
  }

  void assert_normalized(double tol = kNormTol) const {
    if (std::abs(amps_.norm() - 1.0) > tol) throw std::runtime_error("state: norm drifted beyond tolerance");
  }

 private:
  RegisterLayout layout_;
  Vec amps_;
};

}  // namespace pqk::qs
