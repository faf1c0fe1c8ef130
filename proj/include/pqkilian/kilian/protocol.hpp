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
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "pqkilian/common/bytes.hpp"
#include "pqkilian/common/rng.hpp"
#include "pqkilian/pcp/pcp.hpp"
#include "pqkilian/vc/merkle.hpp"

namespace pqk::kilian {

/// Raised on any out-of-phase message; the offending session is poisoned.
class ProtocolError : public std::runtime_error {
 public:
  explicit ProtocolError(const std::string& what) : std::runtime_error(what) {}
};

/// Everything both parties agree on out of band: the instance, the PCP
/// amplification knobs, and the commitment hash family.
struct Params {
  pcp::CSPInstance instance;
  pcp::PcpConfig pcp_cfg;
  HashFamilyId family_id = HashFamilyId::kSha256;
  std::uint32_t hash_input_bits = 256;

  pcp::PCPParams pcp() const { return pcp::pcp_params(instance, pcp_cfg); }
  std::shared_ptr<const HashFamily> family() const { return make_family(family_id, hash_input_bits); }
};

/// Fixed leaf encoding: the symbol value as a big-endian integer in the
/// low-order tail of an n-bit leaf.
inline vc::Symbol encode_symbol(std::uint32_t value, std::size_t width_bytes) {
  vc::Symbol s(width_bytes, 0);
  for (std::size_t i = 0; i < 4 && i < width_bytes; i++)
    s[width_bytes - 1 - i] = static_cast<std::uint8_t>(value >> (8 * i));
  return s;
}

struct Response {
  std::vector<std::uint32_t> positions;       // = opened query set, ascending
  std::vector<std::uint32_t> answers;         // symbol values, same order
  vc::OpeningProof proof;
};

/// The four-message record (ck, cm, r, z); publicly verifiable.
struct Transcript {
  vc::CommitmentKey ck;
  vc::Commitment cm;
  Bytes r;
  Response z;
};

inline Bytes sample_randomness(const pcp::PCPParams& p, Rng& rng) {
  Bytes r = rng.bytes((p.randomness_bits + 7) / 8);
  if (p.randomness_bits % 8 != 0) r.back() &= static_cast<std::uint8_t>(0xFF << (8 - p.randomness_bits % 8));
  return r;
}

/// Accepts iff the PCP verifier accepts the answers, the opened positions
/// are exactly the query set derived from r (never trusting prover-sent
/// positions), and the opening proof verifies. Total on arbitrary input.
inline bool verify_transcript(const Params& prm, const Transcript& t) {
  const pcp::CSPInstance& x = prm.instance;
  pcp::PCPParams p;
  try {
    p = prm.pcp();
  } catch (const std::exception&) {
    return false;
  }
  if (t.ck.vector_length != p.proof_length) return false;
  if (!t.ck.family || family_id(*t.ck.family) != prm.family_id ||
      t.ck.family->input_bits() != prm.hash_input_bits)
    return false;
  if (t.cm.root.size() != t.ck.digest_bytes()) return false;
  if (t.r.size() != (p.randomness_bits + 7) / 8) return false;

  std::vector<std::uint32_t> q;
  try {
    q = pcp_queries(x, p, t.r);
  } catch (const std::exception&) {
    return false;
  }
  if (t.z.positions != q) return false;  // any query outside Q rejects
  if (t.z.answers.size() != q.size()) return false;

  std::map<std::uint32_t, std::uint32_t> answers;
  for (std::size_t i = 0; i < q.size(); i++) {
    if (t.z.answers[i] >= x.alphabet_size) return false;
    answers[q[i]] = t.z.answers[i];
  }
  if (!pcp_decide(x, p, t.r, answers)) return false;

  if (q.empty()) return t.z.proof.nodes.empty() && t.z.proof.indices.empty();
  std::vector<vc::Symbol> leaves;
  leaves.reserve(q.size());
  for (std::uint32_t v : t.z.answers) leaves.push_back(encode_symbol(v, t.ck.alphabet_bytes()));
  return vc::vc_verify(t.ck, t.cm, q, leaves, t.z.proof);
}

// ---- Session state machines ----

enum class Phase { kAwaitingCk, kSentCk, kCommitted, kChallenged, kDone, kFailed };

class ProverSession {
 public:
  ProverSession(Params prm, pcp::Assignment witness) : prm_(std::move(prm)), w_(std::move(witness)) {}

  /// Message 2: commit to the PCP string under the received key.
  vc::Commitment on_commitment_key(const vc::CommitmentKey& ck) {
    require(Phase::kAwaitingCk, "commitment key");
    pi_ = pcp::pcp_prove(prm_.instance, w_);  // throws not-a-witness before any state change
    ck_ = ck;
    if (ck.vector_length != pi_.size()) {
      phase_ = Phase::kFailed;
      throw ProtocolError("commitment key length does not match proof length");
    }
    std::vector<vc::Symbol> leaves;
    leaves.reserve(pi_.size());
    for (std::uint32_t v : pi_) leaves.push_back(encode_symbol(v, ck.alphabet_bytes()));
    auto [cm, aux] = vc::vc_commit(ck, leaves);
    aux_ = std::move(aux);
    phase_ = Phase::kCommitted;
    return cm;
  }

  /// Message 4: open the queried positions for the received challenge.
  Response on_challenge(const Bytes& r) {
    require(Phase::kCommitted, "challenge");
    pcp::PCPParams p = prm_.pcp();
    std::vector<std::uint32_t> q;
    try {
      q = pcp_queries(prm_.instance, p, r);
    } catch (const std::exception&) {
      phase_ = Phase::kFailed;
      throw ProtocolError("malformed challenge");
    }
    Response z;
    z.positions = q;
    for (std::uint32_t pos : q) z.answers.push_back(pi_[pos - 1]);
    if (!q.empty()) z.proof = vc::vc_open(ck_, aux_, std::set<std::uint32_t>(q.begin(), q.end()));
    phase_ = Phase::kDone;
    return z;
  }

  Phase phase() const { return phase_; }

 private:
  void require(Phase expect, const char* msg) {
    if (phase_ != expect) {
      phase_ = Phase::kFailed;
      throw ProtocolError(std::string("prover: unexpected ") + msg + " in this phase");
    }
  }

  Params prm_;
  pcp::Assignment w_;
  pcp::PCPString pi_;
  vc::CommitmentKey ck_;
  vc::MerkleAux aux_;
  Phase phase_ = Phase::kAwaitingCk;
};

class VerifierSession {
 public:
  explicit VerifierSession(Params prm) : prm_(std::move(prm)) {}

  /// Message 1: sample the commitment key.
  vc::CommitmentKey keygen(Rng& rng) {
    require(Phase::kAwaitingCk, "keygen");
    pcp::PCPParams p = prm_.pcp();
    ck_ = vc::vc_gen(p.proof_length, prm_.family(), rng);
    phase_ = Phase::kSentCk;
    return ck_;
  }

  void on_commitment(const vc::Commitment& cm) {
    require(Phase::kSentCk, "commitment");
    if (cm.root.size() != ck_.digest_bytes()) {
      phase_ = Phase::kFailed;
      throw ProtocolError("verifier: malformed commitment");
    }
    cm_ = cm;
    phase_ = Phase::kCommitted;
  }

  /// Message 3: sample PCP randomness.
  Bytes challenge(Rng& rng) {
    require(Phase::kCommitted, "challenge");
    r_ = sample_randomness(prm_.pcp(), rng);
    phase_ = Phase::kChallenged;
    return r_;
  }

  bool on_response(const Response& z) {
    require(Phase::kChallenged, "response");
    Transcript t{ck_, cm_, r_, z};
    verdict_ = verify_transcript(prm_, t);
    phase_ = Phase::kDone;
    return verdict_;
  }

  Transcript transcript(const Response& z) const { return Transcript{ck_, cm_, r_, z}; }
  Phase phase() const { return phase_; }
  bool verdict() const { return verdict_; }

 private:
  void require(Phase expect, const char* msg) {
    if (phase_ != expect) {
      phase_ = Phase::kFailed;
      throw ProtocolError(std::string("verifier: unexpected ") + msg + " in this phase");
    }
  }

  Params prm_;
  vc::CommitmentKey ck_;
  vc::Commitment cm_;
  Bytes r_;
  bool verdict_ = false;
  Phase phase_ = Phase::kAwaitingCk;
};

/// Honest end-to-end run with both roles in process.
inline Transcript run_honest(const Params& prm, const pcp::Assignment& w, Rng& rng) {
  VerifierSession v(prm);
  ProverSession p(prm, w);
  vc::CommitmentKey ck = v.keygen(rng);
  vc::Commitment cm = p.on_commitment_key(ck);
  v.on_commitment(cm);
  Bytes r = v.challenge(rng);
  Response z = p.on_challenge(r);
  v.on_response(z);
  return v.transcript(z);
}

// ---- Serialization ----
//
// Message payloads (the wire layer adds a 1-byte type tag and a u32be
// length):
//   msg1 ck: serialize_key bytes
//   msg2 cm: raw root
//   msg3 r:  [rc u32be][packed bits]
//   msg4 z:  [|Q| u32be][(position u32be, value u32be) x |Q|][proof bytes]
// A transcript file is the four payloads framed the same way, in order.

inline Bytes serialize_msg3(const pcp::PCPParams& p, const Bytes& r) {
  Bytes out;
  put_u32be(out, p.randomness_bits);
  out.insert(out.end(), r.begin(), r.end());
  return out;
}

inline bool deserialize_msg3(const Bytes& in, std::uint32_t expect_rc, Bytes& r) {
  ByteReader rd(in);
  std::uint32_t rc = 0;
  if (!rd.read_u32be(rc) || rc != expect_rc) return false;
  return rd.read_bytes(r, (rc + 7) / 8) && rd.done();
}

inline Bytes serialize_msg4(const vc::CommitmentKey& ck, const Response& z) {
  Bytes out;
  put_u32be(out, static_cast<std::uint32_t>(z.positions.size()));
  for (std::size_t i = 0; i < z.positions.size(); i++) {
    put_u32be(out, z.positions[i]);
    put_u32be(out, z.answers[i]);
  }
  Bytes pf = z.positions.empty() ? Bytes{} : vc::serialize_proof(ck, z.proof);
  out.insert(out.end(), pf.begin(), pf.end());
  return out;
}

inline bool deserialize_msg4(const vc::CommitmentKey& ck, const Bytes& in, Response& z) {
  ByteReader rd(in);
  std::uint32_t nq = 0;
  if (!rd.read_u32be(nq) || nq > (1u << 24)) return false;
  z.positions.resize(nq);
  z.answers.resize(nq);
  for (std::uint32_t i = 0; i < nq; i++)
    if (!rd.read_u32be(z.positions[i]) || !rd.read_u32be(z.answers[i])) return false;
  if (nq == 0) return rd.done();
  Bytes rest;
  if (!rd.read_bytes(rest, rd.n)) return false;
  return vc::deserialize_proof(ck, rest, z.proof);
}

enum : std::uint8_t { kMsgCk = 0x01, kMsgCm = 0x02, kMsgChallenge = 0x03, kMsgResponse = 0x04 };

inline void frame(Bytes& out, std::uint8_t tag, const Bytes& payload) {
  put_u8(out, tag);
  put_u32be(out, static_cast<std::uint32_t>(payload.size()));
  out.insert(out.end(), payload.begin(), payload.end());
}

inline Bytes serialize_transcript(const Params& prm, const Transcript& t) {
  Bytes out;
  frame(out, kMsgCk, vc::serialize_key(t.ck));
  frame(out, kMsgCm, t.cm.root);
  frame(out, kMsgChallenge, serialize_msg3(prm.pcp(), t.r));
  frame(out, kMsgResponse, serialize_msg4(t.ck, t.z));
  return out;
}

inline bool deserialize_transcript(const Params& prm, const Bytes& in, Transcript& t) {
  ByteReader rd(in);
  auto next = [&](std::uint8_t expect_tag, Bytes& payload) {
    std::uint8_t tag = 0;
    std::uint32_t len = 0;
    if (!rd.read_u8(tag) || tag != expect_tag || !rd.read_u32be(len)) return false;
    return rd.read_bytes(payload, len);
  };
  Bytes b1, b2, b3, b4;
  if (!next(kMsgCk, b1) || !next(kMsgCm, b2) || !next(kMsgChallenge, b3) || !next(kMsgResponse, b4) || !rd.done())
    return false;
  if (!vc::deserialize_key(b1, t.ck)) return false;
  t.cm.root = b2;
  pcp::PCPParams p;
  try {
    p = prm.pcp();
  } catch (const std::exception&) {
    return false;
  }
  if (!deserialize_msg3(b3, p.randomness_bits, t.r)) return false;
  return deserialize_msg4(t.ck, b4, t.z);
}

/// Exact serialized byte count of the four framed messages.
inline std::size_t transcript_size(const Params& prm, const Transcript& t) {
  return serialize_transcript(prm, t).size();
}

/// Size of the full PCP string if it were sent directly, for succinctness
/// comparisons: ell symbols of n bits each.
inline std::size_t full_proof_size(const Params& prm) {
  return static_cast<std::size_t>(prm.pcp().proof_length) * (prm.hash_input_bits / 8);
}

inline nlohmann::json transcript_debug_json(const Params& prm, const Transcript& t) {
  nlohmann::json j;
  j["ck"] = {{"vector_length", t.ck.vector_length},
             {"family", t.ck.family->name()},
             {"hash_key", to_hex(t.ck.hash_key)}};
  j["cm"] = to_hex(t.cm.root);
  j["r"] = to_hex(t.r);
  j["z"] = {{"positions", t.z.positions},
            {"answers", t.z.answers},
            {"proof_nodes", t.z.proof.nodes.size()}};
  j["bytes"] = transcript_size(prm, t);
  j["accepts"] = verify_transcript(prm, t);
  return j;
}

}  // namespace pqk::kilian
