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
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pqkilian/kilian/protocol.hpp"

namespace pqk::extractor {

/// Resettable malicious-prover interface: commit() fixes the transcript
/// prefix, respond(r) re-runs the prover from that intermediate state.
/// Implementations must be deterministic given (committed state, r, own
/// seed) so that rewinding is literal re-invocation.
class ClassicalProverOracle {
 public:
  virtual ~ClassicalProverOracle() = default;
  virtual vc::Commitment commit(const vc::CommitmentKey& ck) = 0;
  virtual kilian::Response respond(const Bytes& r) = 0;
};

/// Commits to a fixed assignment (no witness check) and opens it honestly
/// on every challenge; models a best-effort prover on unsat instances.
class FixedStringOracle : public ClassicalProverOracle {
 public:
  FixedStringOracle(kilian::Params prm, pcp::PCPString pi) : prm_(std::move(prm)), pi_(std::move(pi)) {
    if (pi_.size() != prm_.instance.num_vars) throw std::invalid_argument("oracle: proof length mismatch");
  }

  vc::Commitment commit(const vc::CommitmentKey& ck) override {
    ck_ = ck;
    std::vector<vc::Symbol> leaves;
    for (std::uint32_t v : pi_) leaves.push_back(kilian::encode_symbol(v, ck.alphabet_bytes()));
    auto [cm, aux] = vc::vc_commit(ck, leaves);
    aux_ = std::move(aux);
    return cm;
  }

  kilian::Response respond(const Bytes& r) override {
    pcp::PCPParams p = prm_.pcp();
    std::vector<std::uint32_t> q = pcp_queries(prm_.instance, p, r);
    kilian::Response z;
    z.positions = q;
    for (std::uint32_t pos : q) z.answers.push_back(pi_[pos - 1]);
    if (!q.empty()) z.proof = vc::vc_open(ck_, aux_, std::set<std::uint32_t>(q.begin(), q.end()));
    return z;
  }

 protected:
  kilian::Params prm_;
  pcp::PCPString pi_;
  vc::CommitmentKey ck_;
  vc::MerkleAux aux_;
};

/// Honest prover: a FixedStringOracle whose string is a checked witness.
class HonestOracle : public FixedStringOracle {
 public:
  HonestOracle(kilian::Params prm, const pcp::Assignment& w)
      : FixedStringOracle(prm, pcp::pcp_prove(prm.instance, w)) {}
};

/// Answers honestly with probability epsilon, else returns garbage. The
/// per-challenge coin is derived from (oracle seed, r) so the same r always
/// gets the same behavior.
class ThrottledOracle : public HonestOracle {
 public:
  ThrottledOracle(kilian::Params prm, pcp::Assignment w, double epsilon, std::uint64_t seed)
      : HonestOracle(std::move(prm), std::move(w)), eps_(epsilon), seed_(seed) {}

  kilian::Response respond(const Bytes& r) override {
    Rng coin(seed_ ^ mix(r));
    if (coin.next_double() < eps_) return HonestOracle::respond(r);
    kilian::Response z = HonestOracle::respond(r);
    for (auto& a : z.answers) a = (a + 1) % prm_.instance.alphabet_size;  // breaks the hash paths
    return z;
  }

 private:
  static std::uint64_t mix(const Bytes& r) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::uint8_t b : r) h = (h ^ b) * 0x100000001b3ULL;
    return h;
  }
  double eps_;
  std::uint64_t seed_;
};

/// Answers only challenges whose first bit is 0.
class FirstBitOracle : public HonestOracle {
 public:
  using HonestOracle::HonestOracle;
  kilian::Response respond(const Bytes& r) override {
    kilian::Response z = HonestOracle::respond(r);
    if (!r.empty() && (r[0] & 0x80u)) {
      for (auto& a : z.answers) a = (a + 1) % prm_.instance.alphabet_size;
    }
    return z;
  }
};

/// Always returns structurally broken responses.
class GarbageOracle : public ClassicalProverOracle {
 public:
  explicit GarbageOracle(std::size_t digest_bytes) : digest_bytes_(digest_bytes) {}
  vc::Commitment commit(const vc::CommitmentKey&) override { return vc::Commitment{Bytes(digest_bytes_, 0xA5)}; }
  kilian::Response respond(const Bytes&) override { return kilian::Response{}; }

 private:
  std::size_t digest_bytes_;
};

struct ExtractionBudget {
  std::uint64_t n = 0;         // challenge samples
  std::uint64_t k_target = 0;  // distinct accepting transcripts required
};

/// n = ceil(60 * ell * ln(2|Sigma|) / eps), k = ceil(6 * ell * ln(2|Sigma|)).
/// Natural log throughout (documented; the k/(2n) invariant is
/// base-independent).
inline ExtractionBudget extraction_budget(const pcp::PCPParams& p, double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("extraction_budget: eps must be in (0,1]");
  double l2s = std::log(2.0 * static_cast<double>(p.alphabet_size));
  ExtractionBudget b;
  b.k_target = static_cast<std::uint64_t>(std::ceil(6.0 * p.proof_length * l2s));
  b.n = static_cast<std::uint64_t>(std::ceil(60.0 * p.proof_length * l2s / eps));
  if (b.n < b.k_target) b.n = b.k_target;
  return b;
}

struct AcceptedPair {
  Bytes r;
  kilian::Response z;
};

/// Runs the oracle on every challenge in rs; keeps the first accepting
/// response per distinct challenge (transcripts are re-verified here, the
/// oracle is never trusted).
inline std::vector<AcceptedPair> record_transcripts(ClassicalProverOracle& oracle, const kilian::Params& prm,
                                                    const vc::CommitmentKey& ck, const vc::Commitment& cm,
                                                    const std::vector<Bytes>& rs) {
  std::vector<AcceptedPair> accepted;
  std::set<Bytes> seen;
  for (const Bytes& r : rs) {
    if (!seen.insert(r).second) continue;  // distinct challenges only
    kilian::Response z;
    try {
      z = oracle.respond(r);
    } catch (const std::exception&) {
      continue;
    }
    kilian::Transcript t{ck, cm, r, z};
    if (kilian::verify_transcript(prm, t)) accepted.push_back(AcceptedPair{r, std::move(z)});
  }
  return accepted;
}

/// Combines accepted answers into a PCP string, starting from the all-zero
/// string. Returns nullopt iff some position is answered with two values
/// (a position-binding break or a cheating oracle).
inline std::optional<pcp::PCPString> assemble_pcp(std::uint32_t ell, const std::vector<AcceptedPair>& pairs) {
  pcp::PCPString pi(ell, 0);
  std::map<std::uint32_t, std::uint32_t> fixed;
  for (const AcceptedPair& p : pairs) {
    for (std::size_t i = 0; i < p.z.positions.size(); i++) {
      std::uint32_t pos = p.z.positions[i], val = p.z.answers[i];
      auto [it, fresh] = fixed.emplace(pos, val);
      if (!fresh && it->second != val) return std::nullopt;
    }
  }
  for (const auto& [pos, val] : fixed) pi[pos - 1] = val;
  return pi;
}

enum class AbortReason { kNone, kTooFewTranscripts, kInconsistent, kPcpExtractFailed };

inline const char* abort_reason_name(AbortReason r) {
  switch (r) {
    case AbortReason::kNone: return "none";
    case AbortReason::kTooFewTranscripts: return "too-few-transcripts";
    case AbortReason::kInconsistent: return "inconsistent";
    case AbortReason::kPcpExtractFailed: return "pcp-extract-failed";
  }
  return "?";
}

struct ExtractionResult {
  std::optional<pcp::Assignment> witness;
  std::optional<pcp::PCPString> assembled;
  AbortReason reason = AbortReason::kNone;
  std::uint64_t n = 0;
  std::uint64_t k = 0;  // distinct accepting transcripts recorded
};

/// The Kilian extractor: run the first round, sample n challenges, record
/// accepting transcripts, abort if fewer than k_target, assemble and hand
/// to the PCP knowledge extractor. The final witness check is total, so a
/// non-witness is never returned as a witness.
inline ExtractionResult extract_witness(ClassicalProverOracle& oracle, const kilian::Params& prm, double eps,
                                        Rng& rng) {
  pcp::PCPParams p = prm.pcp();
  ExtractionBudget budget = extraction_budget(p, eps);

  vc::CommitmentKey ck = vc::vc_gen(p.proof_length, prm.family(), rng);
  vc::Commitment cm = oracle.commit(ck);

  std::vector<Bytes> rs(budget.n);
  for (auto& r : rs) r = kilian::sample_randomness(p, rng);

  std::vector<AcceptedPair> pairs = record_transcripts(oracle, prm, ck, cm, rs);

  ExtractionResult res;
  res.n = budget.n;
  res.k = pairs.size();
  if (pairs.size() < budget.k_target) {
    res.reason = AbortReason::kTooFewTranscripts;
    return res;
  }
  res.assembled = assemble_pcp(p.proof_length, pairs);
  if (!res.assembled) {
    res.reason = AbortReason::kInconsistent;
    return res;
  }
  res.witness = pcp::pcp_extract(prm.instance, *res.assembled);
  if (!res.witness) {
    res.reason = AbortReason::kPcpExtractFailed;
    return res;
  }
  return res;
}

}  // namespace pqk::extractor
