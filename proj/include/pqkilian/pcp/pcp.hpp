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

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pqkilian/common/bytes.hpp"
#include "pqkilian/pcp/csp.hpp"

namespace pqk::pcp {

/// Amplified CSP PCP: the proof string is the assignment itself, each
/// challenge selects k independent constraints (one per block of r), and
/// the verifier accepts iff all k are satisfied. Proof positions are
/// 1-based; position i carries the value of variable i.
struct PcpConfig {
  std::uint32_t k_sel = 52;      // constraints per challenge; (1 - 1/7)^52 < 2^-10 on the shipped gap corpus
  std::uint32_t block_bits = 64; // bits of r per constraint pick (mod-m bias <= m/2^block_bits)
};

struct PCPParams {
  std::uint32_t proof_length = 0;    // ell = num_vars
  std::uint32_t alphabet_size = 0;   // |Sigma|
  std::uint32_t randomness_bits = 0; // rc = k * block_bits
  std::uint32_t query_count = 0;     // qc = k * max constraint arity
  std::uint32_t k_sel = 0;
  std::uint32_t block_bits = 0;
  double soundness_error = 1.0;      // (1 - gap)^k on gap instances
  double knowledge_error = 1.0;
};

inline PCPParams pcp_params(const CSPInstance& x, const PcpConfig& cfg = {}) {
  if (cfg.k_sel == 0 || cfg.block_bits == 0 || cfg.block_bits > 64)
    throw std::invalid_argument("pcp_params: bad config");
  PCPParams p;
  p.proof_length = x.num_vars;
  p.alphabet_size = x.alphabet_size;
  p.k_sel = cfg.k_sel;
  p.block_bits = cfg.block_bits;
  p.randomness_bits = cfg.k_sel * cfg.block_bits;
  p.query_count = static_cast<std::uint32_t>(cfg.k_sel * x.max_arity());
  double base = 1.0 - x.gap;
  p.soundness_error = std::pow(base, static_cast<double>(cfg.k_sel));
  p.knowledge_error = p.soundness_error;
  return p;
}

using PCPString = Assignment;  // pi : [ell] -> Sigma, stored 0-based

inline PCPString pcp_prove(const CSPInstance& x, const Assignment& w) {
  if (!x.satisfies(w)) throw std::invalid_argument("pcp_prove: not a witness");
  return w;
}

/// r is an rc-bit string packed big-endian into ceil(rc/8) bytes (unused
/// low-order bits of the last byte must be zero). Block j is bits
/// [j*block_bits, (j+1)*block_bits), read as a big-endian integer and
/// reduced mod the constraint count.
inline std::vector<std::uint32_t> selected_constraints(const CSPInstance& x, const PCPParams& p, const Bytes& r) {
  if (r.size() != (p.randomness_bits + 7) / 8) throw std::invalid_argument("pcp: randomness length mismatch");
  if (p.randomness_bits % 8 != 0 && (r.back() & ((1u << (8 - p.randomness_bits % 8)) - 1)) != 0)
    throw std::invalid_argument("pcp: nonzero padding bits in randomness");
  std::uint64_t m = x.constraints.size();
  if (m == 0) return {};
  std::vector<std::uint32_t> picks(p.k_sel);
  for (std::uint32_t j = 0; j < p.k_sel; j++) {
    std::uint64_t v = 0;
    for (std::uint32_t b = 0; b < p.block_bits; b++) {
      std::uint64_t bit_index = static_cast<std::uint64_t>(j) * p.block_bits + b;
      std::uint8_t bit = (r[bit_index / 8] >> (7 - bit_index % 8)) & 1u;
      v = (v << 1) | bit;
    }
    picks[j] = static_cast<std::uint32_t>(v % m);
  }
  return picks;
}

/// Ordered query set: the sorted union of the selected constraints' scopes.
inline std::vector<std::uint32_t> pcp_queries(const CSPInstance& x, const PCPParams& p, const Bytes& r) {
  std::set<std::uint32_t> q;
  for (std::uint32_t c : selected_constraints(x, p, r))
    for (std::uint32_t v : x.constraints[c].vars) q.insert(v);
  return std::vector<std::uint32_t>(q.begin(), q.end());
}

/// Accepts iff the answers are keyed exactly by pcp_queries(x, r) and every
/// selected constraint is satisfied. Missing or extra keys reject.
inline bool pcp_decide(const CSPInstance& x, const PCPParams& p, const Bytes& r,
                       const std::map<std::uint32_t, std::uint32_t>& answers) {
  std::vector<std::uint32_t> picks;
  try {
    picks = selected_constraints(x, p, r);
  } catch (const std::exception&) {
    return false;
  }
  std::set<std::uint32_t> q;
  for (std::uint32_t c : picks)
    for (std::uint32_t v : x.constraints[c].vars) q.insert(v);
  if (answers.size() != q.size()) return false;
  for (std::uint32_t pos : q)
    if (!answers.count(pos)) return false;
  for (const auto& [pos, val] : answers)
    if (val >= x.alphabet_size) return false;
  for (std::uint32_t c : picks) {
    std::vector<std::uint32_t> tuple;
    for (std::uint32_t v : x.constraints[c].vars) tuple.push_back(answers.at(v));
    if (std::find(x.constraints[c].allowed.begin(), x.constraints[c].allowed.end(), tuple) ==
        x.constraints[c].allowed.end())
      return false;
  }
  return true;
}

/// Knowledge extractor: the assignment prefix of pi is the whole string;
/// returns it iff it satisfies the instance.
inline std::optional<Assignment> pcp_extract(const CSPInstance& x, const PCPString& pi) {
  if (pi.size() != x.num_vars) return std::nullopt;
  if (!x.satisfies(pi)) return std::nullopt;
  return pi;
}

struct WinRate {
  std::uint64_t accepted = 0;
  std::uint64_t total = 0;
  double value() const { return total ? static_cast<double>(accepted) / static_cast<double>(total) : 0.0; }
};

/// Brute-force acceptance fraction by exhaustive enumeration of r. This is
/// the oracle the acceptance suite leans on; it refuses rc > 20.
inline WinRate pcp_win_rate(const CSPInstance& x, const PCPParams& p, const PCPString& pi) {
  if (p.randomness_bits > 20) throw std::invalid_argument("pcp_win_rate: rc too large to enumerate (oracle only)");
  if (pi.size() != x.num_vars) throw std::invalid_argument("pcp_win_rate: proof length mismatch");
  WinRate wr;
  wr.total = 1ull << p.randomness_bits;
  std::uint64_t m = x.constraints.size();
  if (m == 0) {
    wr.accepted = wr.total;  // vacuous truth
    return wr;
  }
  // Acceptance is an AND of independent per-block events, so the exact
  // accepting count factorizes; rc <= 20 keeps the product well inside u64.
  std::uint64_t block_space = 1ull << p.block_bits;
  std::vector<bool> sat(m);
  for (std::uint64_t c = 0; c < m; c++) {
    std::vector<std::uint32_t> tuple;
    for (std::uint32_t v : x.constraints[c].vars) tuple.push_back(pi[v - 1]);
    sat[c] = std::find(x.constraints[c].allowed.begin(), x.constraints[c].allowed.end(), tuple) !=
             x.constraints[c].allowed.end();
  }
  std::uint64_t per_block_accept = 0;
  for (std::uint64_t v = 0; v < block_space; v++)
    if (sat[v % m]) per_block_accept++;
  wr.accepted = 1;
  for (std::uint32_t j = 0; j < p.k_sel; j++) wr.accepted *= per_block_accept;
  return wr;
}

/// Hill-climbing search for the best proof string on an instance; used to
/// calibrate soundness against the (1-gap)^k bound.
inline PCPString worst_case_proof(const CSPInstance& x, Rng& rng, int restarts = 8, int steps = 2000) {
  PCPString best(x.num_vars, 0);
  std::size_t best_sat = 0;
  for (int rs = 0; rs < restarts; rs++) {
    PCPString a(x.num_vars);
    for (auto& v : a) v = static_cast<std::uint32_t>(rng.below(x.alphabet_size));
    std::size_t sat = x.constraints.size() - x.violated_count(a);
    for (int s = 0; s < steps; s++) {
      std::uint32_t i = static_cast<std::uint32_t>(rng.below(x.num_vars));
      std::uint32_t old = a[i];
      a[i] = static_cast<std::uint32_t>(rng.below(x.alphabet_size));
      std::size_t ns = x.constraints.size() - x.violated_count(a);
      if (ns >= sat)
        sat = ns;
      else
        a[i] = old;
    }
    if (sat > best_sat) {
      best_sat = sat;
      best = a;
    }
  }
  return best;
}

}  // namespace pqk::pcp
