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

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <vector>

#include "pqkilian/common/bytes.hpp"
#include "pqkilian/common/rng.hpp"
#include "pqkilian/hash/family.hpp"

namespace pqk::vc {

/// One committed symbol: exactly alphabet_width = n bits.
using Symbol = Bytes;

struct CommitmentKey {
  std::uint32_t vector_length = 0;  // ell
  std::shared_ptr<const HashFamily> family;
  Bytes hash_key;

  std::size_t alphabet_bytes() const { return family->input_bytes(); }
  std::size_t digest_bytes() const { return family->output_bytes(); }
};

struct Commitment {
  Bytes root;
  bool operator==(const Commitment& o) const { return root == o.root; }
};

/// Message plus every tree level. Level 0 holds the leaf digests over the
/// padded vector of 2^ceil(log2 ell) leaves; the last level is the root.
struct MerkleAux {
  std::vector<Symbol> message;
  std::vector<std::vector<Bytes>> tree;
};

struct ProofNode {
  std::uint8_t level;       // 0 = leaf-digest level
  std::uint32_t position;   // node index within its level
  Bytes hash;

  bool operator<(const ProofNode& o) const {
    return level != o.level ? level < o.level : position < o.position;
  }
};

/// Deduplicated authentication paths: every node appears once, sorted by
/// (level, position); indices are the opened positions, 1-based ascending.
struct OpeningProof {
  std::uint32_t vector_length = 0;
  std::vector<std::uint32_t> indices;
  std::vector<ProofNode> nodes;
};

inline std::uint32_t tree_depth(std::uint32_t ell) {
  std::uint32_t d = 0;
  while ((1u << d) < ell) d++;
  return d;
}

/// VC.Gen: the hash key is the next key_bytes() of the seeded stream.
inline CommitmentKey vc_gen(std::uint32_t ell, std::shared_ptr<const HashFamily> family, Rng& rng) {
  if (ell == 0) throw std::invalid_argument("vc_gen: vector length must be >= 1");
  CommitmentKey ck;
  ck.vector_length = ell;
  ck.family = std::move(family);
  ck.hash_key = rng.bytes(ck.family->key_bytes());
  return ck;
}

namespace detail {

inline Bytes leaf_digest(const CommitmentKey& ck, const Symbol& s) {
  return ck.family->eval(ck.hash_key, HashDomain::kLeaf, s);
}

inline Bytes node_digest(const CommitmentKey& ck, const Bytes& left, const Bytes& right) {
  Bytes in;
  in.reserve(left.size() + right.size());
  in.insert(in.end(), left.begin(), left.end());
  in.insert(in.end(), right.begin(), right.end());
  return ck.family->eval(ck.hash_key, HashDomain::kNode, in);
}

/// Root digests of all-padding subtrees, by level. pad[0] = digest of the
/// all-zero symbol, pad[j+1] = h(pad[j] || pad[j]).
inline std::vector<Bytes> padding_digests(const CommitmentKey& ck, std::uint32_t depth) {
  std::vector<Bytes> pad(depth + 1);
  pad[0] = leaf_digest(ck, Symbol(ck.alphabet_bytes(), 0));
  for (std::uint32_t j = 0; j < depth; j++) pad[j + 1] = node_digest(ck, pad[j], pad[j]);
  return pad;
}

/// A node covers only padding iff its leftmost leaf is at or beyond ell.
inline bool is_padding_node(std::uint32_t ell, std::uint32_t level, std::uint32_t pos) {
  return (static_cast<std::uint64_t>(pos) << level) >= ell;
}

}  // namespace detail

inline std::pair<Commitment, MerkleAux> vc_commit(const CommitmentKey& ck, const std::vector<Symbol>& m) {
  if (m.size() != ck.vector_length) throw std::invalid_argument("vc_commit: message length mismatch");
  for (const Symbol& s : m)
    if (s.size() != ck.alphabet_bytes()) throw std::invalid_argument("vc_commit: symbol width mismatch");

  std::uint32_t depth = tree_depth(ck.vector_length);
  std::size_t padded = 1ull << depth;

  MerkleAux aux;
  aux.message = m;
  aux.tree.resize(depth + 1);
  aux.tree[0].resize(padded);
  Symbol zero(ck.alphabet_bytes(), 0);
  for (std::size_t i = 0; i < padded; i++)
    aux.tree[0][i] = detail::leaf_digest(ck, i < m.size() ? m[i] : zero);
  for (std::uint32_t j = 0; j < depth; j++) {
    aux.tree[j + 1].resize(aux.tree[j].size() / 2);
    for (std::size_t i = 0; i < aux.tree[j + 1].size(); i++)
      aux.tree[j + 1][i] = detail::node_digest(ck, aux.tree[j][2 * i], aux.tree[j][2 * i + 1]);
  }
  return {Commitment{aux.tree[depth][0]}, std::move(aux)};
}

/// VC.Open with path deduplication: walking all opened leaves up level by
/// level, a sibling enters the proof only if it is neither derivable from
/// already-known nodes nor an all-padding subtree (which the verifier
/// recomputes itself).
inline OpeningProof vc_open(const CommitmentKey& ck, const MerkleAux& aux, const std::set<std::uint32_t>& q) {
  if (q.empty()) throw std::invalid_argument("vc_open: empty query set");
  for (std::uint32_t i : q)
    if (i < 1 || i > ck.vector_length) throw std::invalid_argument("vc_open: index out of range");

  std::uint32_t depth = tree_depth(ck.vector_length);
  OpeningProof pf;
  pf.vector_length = ck.vector_length;
  pf.indices.assign(q.begin(), q.end());

  std::set<std::uint32_t> known;  // positions known at the current level
  for (std::uint32_t i : q) known.insert(i - 1);
  for (std::uint32_t level = 0; level < depth; level++) {
    std::set<std::uint32_t> parents;
    for (std::uint32_t pos : known) {
      std::uint32_t sib = pos ^ 1u;
      if (!known.count(sib) && !detail::is_padding_node(ck.vector_length, level, sib))
        pf.nodes.push_back(ProofNode{static_cast<std::uint8_t>(level), sib, aux.tree[level][sib]});
      parents.insert(pos >> 1);
    }
    known = std::move(parents);
  }
  std::sort(pf.nodes.begin(), pf.nodes.end());
  pf.nodes.erase(std::unique(pf.nodes.begin(), pf.nodes.end(),
                             [](const ProofNode& a, const ProofNode& b) {
                               return a.level == b.level && a.position == b.position;
                             }),
                 pf.nodes.end());
  return pf;
}

/// VC.Verify: total on arbitrary inputs, returns 0 rather than throwing.
/// Accepts iff the frontier recomputation from v reaches cm.root consuming
/// exactly the supplied proof nodes.
inline bool vc_verify(const CommitmentKey& ck, const Commitment& cm, const std::vector<std::uint32_t>& q,
                      const std::vector<Symbol>& v, const OpeningProof& pf) {
  if (pf.vector_length != ck.vector_length) return false;
  if (q.empty() || v.size() != q.size()) return false;
  if (pf.indices != q) return false;
  for (std::size_t i = 0; i + 1 < q.size(); i++)
    if (q[i] >= q[i + 1]) return false;  // ascending, no duplicates
  for (std::uint32_t i : q)
    if (i < 1 || i > ck.vector_length) return false;
  for (const Symbol& s : v)
    if (s.size() != ck.alphabet_bytes()) return false;

  std::uint32_t depth = tree_depth(ck.vector_length);
  std::vector<Bytes> pad = detail::padding_digests(ck, depth);

  std::map<std::pair<std::uint32_t, std::uint32_t>, Bytes> supplied;
  for (const ProofNode& n : pf.nodes) {
    if (n.level >= depth) return false;
    if (n.hash.size() != ck.digest_bytes()) return false;
    if (detail::is_padding_node(ck.vector_length, n.level, n.position)) return false;
    if (!supplied.emplace(std::make_pair(n.level, n.position), n.hash).second) return false;
  }

  std::map<std::uint32_t, Bytes> level_nodes;
  for (std::size_t i = 0; i < q.size(); i++) level_nodes[q[i] - 1] = detail::leaf_digest(ck, v[i]);

  std::size_t consumed = 0;
  for (std::uint32_t level = 0; level < depth; level++) {
    std::map<std::uint32_t, Bytes> parents;
    for (auto it = level_nodes.begin(); it != level_nodes.end(); ++it) {
      std::uint32_t pos = it->first, sib = pos ^ 1u;
      std::uint32_t parent = pos >> 1;
      if (parents.count(parent)) continue;  // pair handled via its other child
      Bytes sib_hash;
      if (auto kt = level_nodes.find(sib); kt != level_nodes.end()) {
        sib_hash = kt->second;
      } else if (auto pt = supplied.find({level, sib}); pt != supplied.end()) {
        sib_hash = pt->second;
        consumed++;
      } else if (detail::is_padding_node(ck.vector_length, level, sib)) {
        sib_hash = pad[level];
      } else {
        return false;  // required node missing
      }
      const Bytes& left = (pos & 1u) ? sib_hash : it->second;
      const Bytes& right = (pos & 1u) ? it->second : sib_hash;
      parents[parent] = detail::node_digest(ck, left, right);
    }
    level_nodes = std::move(parents);
  }
  if (consumed != supplied.size()) return false;  // extra nodes are malformed
  return level_nodes.size() == 1 && level_nodes.begin()->second == cm.root;
}

// ---- Serialization (documented in README; bit-exact) ----
//
// Commitment: the raw root bytes.
// Proof:      [ell u32be][|Q| u32be][Q as u32be, 1-based ascending]
//             [node_count u32be] then per node [level u8][position u32be]
//             [digest bytes]. Everything except the digest payloads is
//             header/coordinate metadata.

inline Bytes serialize_proof(const CommitmentKey& ck, const OpeningProof& pf) {
  Bytes out;
  put_u32be(out, pf.vector_length);
  put_u32be(out, static_cast<std::uint32_t>(pf.indices.size()));
  for (std::uint32_t i : pf.indices) put_u32be(out, i);
  put_u32be(out, static_cast<std::uint32_t>(pf.nodes.size()));
  for (const ProofNode& n : pf.nodes) {
    put_u8(out, n.level);
    put_u32be(out, n.position);
    out.insert(out.end(), n.hash.begin(), n.hash.end());
  }
  (void)ck;
  return out;
}

/// Returns false on malformed bytes (verify then rejects).
inline bool deserialize_proof(const CommitmentKey& ck, const Bytes& in, OpeningProof& pf) {
  ByteReader r(in);
  std::uint32_t nq = 0, nn = 0;
  if (!r.read_u32be(pf.vector_length) || !r.read_u32be(nq)) return false;
  if (nq > (1u << 24)) return false;
  pf.indices.resize(nq);
  for (auto& i : pf.indices)
    if (!r.read_u32be(i)) return false;
  if (!r.read_u32be(nn) || nn > (1u << 24)) return false;
  pf.nodes.resize(nn);
  for (auto& n : pf.nodes) {
    if (!r.read_u8(n.level) || !r.read_u32be(n.position)) return false;
    if (!r.read_bytes(n.hash, ck.digest_bytes())) return false;
  }
  return r.done();
}

inline Bytes serialize_key(const CommitmentKey& ck) {
  Bytes out;
  put_u32be(out, ck.vector_length);
  put_u8(out, static_cast<std::uint8_t>(family_id(*ck.family)));
  put_u32be(out, static_cast<std::uint32_t>(ck.family->input_bits()));
  out.insert(out.end(), ck.hash_key.begin(), ck.hash_key.end());
  return out;
}

inline bool deserialize_key(const Bytes& in, CommitmentKey& ck) {
  ByteReader r(in);
  std::uint8_t fid = 0;
  std::uint32_t bits = 0;
  if (!r.read_u32be(ck.vector_length) || !r.read_u8(fid) || !r.read_u32be(bits)) return false;
  if (ck.vector_length == 0 || bits == 0 || bits > 4096) return false;
  try {
    ck.family = make_family(static_cast<HashFamilyId>(fid), bits);
  } catch (const std::exception&) {
    return false;
  }
  return r.read_bytes(ck.hash_key, ck.family->key_bytes()) && r.done();
}

}  // namespace pqk::vc
