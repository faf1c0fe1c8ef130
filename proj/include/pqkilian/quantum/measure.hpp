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
#include <memory>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "pqkilian/common/rng.hpp"
#include "pqkilian/quantum/operators.hpp"
#include "pqkilian/quantum/state.hpp"

namespace pqk::qs {

/// Optional per-measurement trace hook: (outcome, post-measurement norm).
using TraceHook = std::function<void(int, double)>;

/// JSON-lines trace emitter: one {"step":..,"outcome":..,"norm":..} row per
/// measurement, for the experiments module's optional logs.
inline TraceHook jsonl_trace(std::ostream& out) {
  auto step = std::make_shared<std::size_t>(0);
  return [&out, step](int outcome, double norm) {
    out << "{\"step\":" << (*step)++ << ",\"outcome\":" << outcome << ",\"norm\":" << norm << "}\n";
  };
}

/// Binary projective measurement by the Born rule; consumes exactly one
/// uniform draw. The post-measurement state replaces psi.
inline int measure_binary(const StructuredProjector& proj, StateVector& psi, Rng& rng,
                          const TraceHook& trace = {}) {
  Vec projected = proj.applied(psi.amplitudes());
  double p1 = projected.squaredNorm();
  if (p1 < 0) p1 = 0;
  if (p1 > 1) p1 = std::min(p1, 1.0 + 1e-9);
  int outcome = rng.next_double() < p1 ? 1 : 0;
  if (outcome == 1) {
    if (p1 < 1e-12) throw std::runtime_error("measure_binary: selected branch is numerically degenerate");
    psi.amplitudes() = projected / std::sqrt(p1);
  } else {
    Vec rest = psi.amplitudes() - projected;
    double p0 = rest.squaredNorm();
    if (p0 < 1e-12) throw std::runtime_error("measure_binary: selected branch is numerically degenerate");
    psi.amplitudes() = rest / std::sqrt(p0);
  }
  psi.assert_normalized();
  if (trace) trace(outcome, psi.norm());
  return outcome;
}

struct MixmResult {
  std::size_t challenge;
  int outcome;
};

/// Uniformly samples r and applies the binary measurement for projector
/// family member r.
inline MixmResult mixm(const std::vector<StructuredProjector>& family, StateVector& psi, Rng& rng,
                       const TraceHook& trace = {}) {
  if (family.empty()) throw std::invalid_argument("mixm: empty measurement family");
  std::size_t r = rng.below(family.size());
  int b = measure_binary(family[r], psi, rng, trace);
  return MixmResult{r, b};
}

/// Marriott-Watrous outcome chain: b0 = 1, each bit repeats the previous
/// one with probability p. Returns b1..bT.
inline std::vector<int> mwdist_sample(double p, std::size_t T, Rng& rng) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("mwdist: p outside [0,1]");
  std::vector<int> out(T);
  int prev = 1;
  for (std::size_t i = 0; i < T; i++) {
    int b = rng.next_double() < p ? prev : 1 - prev;
    out[i] = b;
    prev = b;
  }
  return out;
}

/// Fraction of consecutive repeated bits in a (n+1)-bit string.
inline double nreps(const std::vector<int>& bits) {
  if (bits.size() < 2) throw std::invalid_argument("nreps: need at least two bits");
  std::size_t reps = 0;
  for (std::size_t j = 1; j < bits.size(); j++)
    if (bits[j - 1] == bits[j]) reps++;
  return static_cast<double>(reps) / static_cast<double>(bits.size() - 1);
}

/// Integer repeat count for a chain that starts at the implicit b0 = 1.
inline std::size_t nreps_count_from_one(const std::vector<int>& bits) {
  std::size_t reps = 0;
  int prev = 1;
  for (int b : bits) {
    if (b == prev) reps++;
    prev = b;
  }
  return reps;
}

/// Applies A,B,A,B,... for T measurements starting from a state in
/// image(B); outcomes follow the mixture-of-MWDist law.
inline std::vector<int> alternating_outcomes(const StructuredProjector& a, const StructuredProjector& b,
                                             StateVector& psi, std::size_t T, Rng& rng,
                                             const TraceHook& trace = {}) {
  Vec check = b.applied(psi.amplitudes());
  if ((check - psi.amplitudes()).norm() > 1e-7)
    throw std::invalid_argument("alternating_outcomes: state must lie in image(B)");
  std::vector<int> outcomes(T);
  for (std::size_t i = 0; i < T; i++)
    outcomes[i] = measure_binary(i % 2 == 0 ? a : b, psi, rng, trace);
  return outcomes;
}

}  // namespace pqk::qs
