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

#include <optional>
#include <vector>

#include "pqkilian/rewinding/fork.hpp"

namespace pqk::rw {

inline std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t q) {
  std::uint64_t result = 1 % q;
  base %= q;
  while (exp > 0) {
    if (exp & 1) result = (result * base) % q;
    base = (base * base) % q;
    exp >>= 1;
  }
  return result;
}

inline std::uint64_t mod_inv(std::uint64_t a, std::uint64_t q) { return mod_pow(a % q, q - 2, q); }

/// Shamir-style k-special-sound toy sigma protocol: the response to
/// challenge r is P(r+1) for a degree-(k-1) polynomial P over F_q whose
/// constant term is the witness. Any k accepting transcripts with distinct
/// challenges interpolate the witness at zero.
struct ToySigma {
  std::uint64_t q = 0;  // prime modulus, must exceed the challenge count
  std::size_t k = 0;
  std::vector<std::uint64_t> coeffs;  // coeffs[0] = witness

  static ToySigma sample(std::uint64_t q, std::size_t k, std::uint64_t witness, Rng& rng) {
    ToySigma s;
    s.q = q;
    s.k = k;
    s.coeffs.resize(k);
    s.coeffs[0] = witness % q;
    for (std::size_t i = 1; i < k; i++) s.coeffs[i] = rng.below(q);
    return s;
  }

  std::uint64_t witness() const { return coeffs[0]; }

  std::uint64_t response(std::size_t challenge) const {
    std::uint64_t x = (static_cast<std::uint64_t>(challenge) + 1) % q;
    std::uint64_t acc = 0, xp = 1;
    for (std::uint64_t c : coeffs) {
      acc = (acc + c * xp) % q;
      xp = (xp * x) % q;
    }
    return acc;
  }
};

/// The k-special-soundness extractor: Lagrange interpolation at zero from
/// k transcripts with distinct challenges.
inline std::uint64_t sigma_extract(std::uint64_t q, const std::vector<std::pair<std::size_t, std::uint64_t>>& pts) {
  std::uint64_t w = 0;
  for (std::size_t i = 0; i < pts.size(); i++) {
    std::uint64_t xi = (pts[i].first + 1) % q;
    std::uint64_t num = 1, den = 1;
    for (std::size_t j = 0; j < pts.size(); j++) {
      if (j == i) continue;
      std::uint64_t xj = (pts[j].first + 1) % q;
      num = (num * xj) % q;
      den = (den * ((xj + q - xi) % q)) % q;
    }
    std::uint64_t li = (num * mod_inv(den, q)) % q;
    w = (w + pts[i].second % q * li) % q;
  }
  return w;
}

struct SpecialSoundResult {
  std::optional<std::uint64_t> witness;
  std::size_t recorded = 0;  // |W|
  std::size_t n = 0;
};

/// Extraction from a quantum prover of a k-special-sound collapsing sigma
/// protocol: run Fork over n = ceil(8k/eps) random challenges with
/// eta0 = eps/2, and interpolate when at least k distinct accepting
/// transcripts land. The prover is the unique-answer strategy whose
/// accepting response to r carries P(r+1).
inline SpecialSoundResult special_sound_extract(const ToySigma& sigma, const GameFrame& frame, double eps,
                                                Rng& rng, const ValEstParams* override_ve = nullptr) {
  if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("special_sound_extract: eps in (0,1]");
  std::size_t n = static_cast<std::size_t>(std::ceil(8.0 * static_cast<double>(sigma.k) / eps));
  PlaySchedule sched(n, eps / 2.0);
  if (override_ve) sched = sched.with_valest(*override_ve);

  std::vector<std::size_t> challenges(n);
  for (auto& r : challenges) r = rng.below(frame.game().num_questions);

  ForkResult fr = fork(frame, sched, challenges, frame.strategy().initial, rng);

  SpecialSoundResult out;
  out.n = n;
  out.recorded = fr.records.size();
  if (fr.records.size() < sigma.k) return out;

  // Decode: answer label 1+r attests P(r+1); the classical transcript value
  // is the field element the prover would have sent.
  std::vector<std::pair<std::size_t, std::uint64_t>> pts;
  for (std::size_t i = 0; i < sigma.k; i++)
    pts.emplace_back(fr.records[i].challenge, sigma.response(fr.records[i].challenge));
  out.witness = sigma_extract(sigma.q, pts);
  return out;
}

}  // namespace pqk::rw
