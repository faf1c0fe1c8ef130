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

#include <catch2/catch_amalgamated.hpp>

#include "pqkilian/vc/merkle.hpp"

using namespace pqk;
using namespace pqk::vc;

namespace {

CommitmentKey toy_key(std::uint32_t ell, std::uint64_t seed, std::size_t bits = 32) {
  Rng rng(seed);
  return vc_gen(ell, std::make_shared<ToyHashFamily>(bits), rng);
}

std::vector<Symbol> random_message(const CommitmentKey& ck, Rng& rng) {
  std::vector<Symbol> m(ck.vector_length);
  for (auto& s : m) s = rng.bytes(ck.alphabet_bytes());
  return m;
}

}  // namespace

TEST_CASE("vc_gen records the length and draws the key from the seed stream") {
  CommitmentKey ck1 = toy_key(1, 0);
  REQUIRE(ck1.vector_length == 1);

  CommitmentKey ck = toy_key(8, 7);
  Rng replay(7);  // independent replay of the same stream
  REQUIRE(ck.hash_key == replay.bytes(ck.family->key_bytes()));

  Rng rng(0);
  REQUIRE_THROWS_AS(vc_gen(0, std::make_shared<ToyHashFamily>(32), rng), std::invalid_argument);
}

TEST_CASE("single-leaf tree: the root is the leaf digest, the path is empty") {
  CommitmentKey ck = toy_key(1, 3);
  Rng rng(11);
  auto m = random_message(ck, rng);
  auto [cm, aux] = vc_commit(ck, m);
  REQUIRE(cm.root == ck.family->eval(ck.hash_key, HashDomain::kLeaf, m[0]));

  OpeningProof pf = vc_open(ck, aux, {1});
  REQUIRE(pf.nodes.empty());
  REQUIRE(vc_verify(ck, cm, {1}, {m[0]}, pf));
}

TEST_CASE("4-leaf toy tree root matches a straight-line recomputation") {
  CommitmentKey ck = toy_key(4, 7);
  std::vector<Symbol> m = {{0x00, 0x00, 0x00, 0x01},
                           {0x00, 0x00, 0x00, 0x02},
                           {0x00, 0x00, 0x00, 0x03},
                           {0x00, 0x00, 0x00, 0x04}};
  auto [cm, aux] = vc_commit(ck, m);

  // Independent 3-node recomputation straight from the family.
  const HashFamily& h = *ck.family;
  auto leaf = [&](const Symbol& s) { return h.eval(ck.hash_key, HashDomain::kLeaf, s); };
  auto node = [&](Bytes a, const Bytes& b) {
    a.insert(a.end(), b.begin(), b.end());
    return h.eval(ck.hash_key, HashDomain::kNode, a);
  };
  Bytes root = node(node(leaf(m[0]), leaf(m[1])), node(leaf(m[2]), leaf(m[3])));
  REQUIRE(cm.root == root);
  REQUIRE(to_hex(cm.root).size() == 4);  // 16-bit digest renders as 4 hex digits

  // Determinism: committing twice gives identical roots.
  auto [cm2, aux2] = vc_commit(ck, m);
  REQUIRE(cm2.root == cm.root);
}

TEST_CASE("64-bit toy tree renders an 8-hex-digit root, frozen") {
  Rng rng(7);
  CommitmentKey ck = vc_gen(4, std::make_shared<ToyHashFamily>(64), rng);
  std::vector<Symbol> m = {{0, 0, 0, 0, 0, 0, 0, 1},
                           {0, 0, 0, 0, 0, 0, 0, 2},
                           {0, 0, 0, 0, 0, 0, 0, 3},
                           {0, 0, 0, 0, 0, 0, 0, 4}};
  auto [cm, aux] = vc_commit(ck, m);
  const HashFamily& h = *ck.family;
  auto leaf = [&](const Symbol& s) { return h.eval(ck.hash_key, HashDomain::kLeaf, s); };
  auto node = [&](Bytes a, const Bytes& b) {
    a.insert(a.end(), b.begin(), b.end());
    return h.eval(ck.hash_key, HashDomain::kNode, a);
  };
  REQUIRE(cm.root == node(node(leaf(m[0]), leaf(m[1])), node(leaf(m[2]), leaf(m[3]))));
  REQUIRE(to_hex(cm.root).size() == 8);
}

TEST_CASE("sibling queries share ancestors: hand-enumerated dedup") {
  CommitmentKey ck = toy_key(8, 5);
  Rng rng(6);
  auto m = random_message(ck, rng);
  auto [cm, aux] = vc_commit(ck, m);

  // Leaves 0 and 1 (positions 1,2) are siblings: their level-0 digests are
  // both derivable from the opened values, so the proof needs exactly the
  // two uncle nodes (level 1, pos 1) and (level 2, pos 1).
  OpeningProof pf = vc_open(ck, aux, {1, 2});
  REQUIRE(pf.nodes.size() == 2);
  REQUIRE(pf.nodes[0].level == 1);
  REQUIRE(pf.nodes[0].position == 1);
  REQUIRE(pf.nodes[1].level == 2);
  REQUIRE(pf.nodes[1].position == 1);
  REQUIRE(vc_verify(ck, cm, {1, 2}, {m[0], m[1]}, pf));

  REQUIRE_THROWS_AS(vc_open(ck, aux, {9}), std::invalid_argument);
  REQUIRE_THROWS_AS(vc_open(ck, aux, std::set<std::uint32_t>{}), std::invalid_argument);
}

TEST_CASE("dedup never exceeds the naive per-query bound") {
  Rng rng(12);
  for (std::uint32_t ell : {3u, 8u, 17u, 64u}) {
    CommitmentKey ck = toy_key(ell, ell);
    auto m = random_message(ck, rng);
    auto [cm, aux] = vc_commit(ck, m);
    std::set<std::uint32_t> q;
    while (q.size() < std::min(ell, 5u)) q.insert(static_cast<std::uint32_t>(rng.below(ell)) + 1);
    OpeningProof pf = vc_open(ck, aux, q);
    REQUIRE(pf.nodes.size() <= q.size() * tree_depth(ell));
    std::vector<std::uint32_t> qv(q.begin(), q.end());
    std::vector<Symbol> v;
    for (auto i : qv) v.push_back(m[i - 1]);
    REQUIRE(vc_verify(ck, cm, qv, v, pf));
  }
}

TEST_CASE("tampering with the value, proof, or commitment kills verification") {
  CommitmentKey ck = toy_key(8, 21);
  Rng rng(22);
  auto m = random_message(ck, rng);
  auto [cm, aux] = vc_commit(ck, m);
  OpeningProof pf = vc_open(ck, aux, {3, 6});
  std::vector<Symbol> v = {m[2], m[5]};
  REQUIRE(vc_verify(ck, cm, {3, 6}, v, pf));

  auto v2 = v;
  v2[0][3] ^= 1;
  REQUIRE_FALSE(vc_verify(ck, cm, {3, 6}, v2, pf));

  auto pf2 = pf;
  pf2.nodes[0].hash[0] ^= 1;
  REQUIRE_FALSE(vc_verify(ck, cm, {3, 6}, v, pf2));

  auto cm2 = cm;
  cm2.root[0] ^= 1;
  REQUIRE_FALSE(vc_verify(ck, cm2, {3, 6}, v, pf));
}

TEST_CASE("a proof for length 8 is rejected under a length-16 key") {
  CommitmentKey ck8 = toy_key(8, 31);
  Rng rng(32);
  auto m = random_message(ck8, rng);
  auto [cm, aux] = vc_commit(ck8, m);
  OpeningProof pf = vc_open(ck8, aux, {1});

  CommitmentKey ck16 = ck8;
  ck16.vector_length = 16;
  REQUIRE_FALSE(vc_verify(ck16, cm, {1}, {m[0]}, pf));
}

TEST_CASE("non-power-of-two lengths verify and keep padding out of proofs") {
  for (std::uint32_t ell : {3u, 5u, 6u, 7u, 9u}) {
    CommitmentKey ck = toy_key(ell, 100 + ell);
    Rng rng(200 + ell);
    auto m = random_message(ck, rng);
    auto [cm, aux] = vc_commit(ck, m);
    OpeningProof pf = vc_open(ck, aux, {ell});  // the last real leaf
    for (const ProofNode& n : pf.nodes)
      REQUIRE_FALSE(vc::detail::is_padding_node(ell, n.level, n.position));
    REQUIRE(vc_verify(ck, cm, {ell}, {m[ell - 1]}, pf));
  }
}

TEST_CASE("proof serialization round-trips and stays within the size bound") {
  CommitmentKey ck = toy_key(32, 77);
  Rng rng(78);
  auto m = random_message(ck, rng);
  auto [cm, aux] = vc_commit(ck, m);
  OpeningProof pf = vc_open(ck, aux, {1, 9, 17, 30});
  Bytes ser = serialize_proof(ck, pf);

  OpeningProof back;
  REQUIRE(deserialize_proof(ck, ser, back));
  REQUIRE(serialize_proof(ck, back) == ser);
  REQUIRE(vc_verify(ck, cm, back.indices, {m[0], m[8], m[16], m[29]}, back));

  // Hash payload is at most |Q| * depth * digest bytes; the rest is header.
  std::size_t hash_payload = pf.nodes.size() * ck.digest_bytes();
  std::size_t header = ser.size() - hash_payload;
  REQUIRE(hash_payload <= 4 * tree_depth(32) * ck.digest_bytes());
  REQUIRE(header == 4 + 4 + 4 * 4 + 4 + pf.nodes.size() * 5);

  // Totality: mutated or truncated bytes must never crash, only reject.
  for (std::size_t cut = 0; cut < ser.size(); cut += 3) {
    Bytes trunc(ser.begin(), ser.begin() + cut);
    OpeningProof junk;
    if (deserialize_proof(ck, trunc, junk))
      REQUIRE_FALSE(vc_verify(ck, cm, junk.indices, {m[0]}, junk));
  }
  Rng fuzz(99);
  for (int i = 0; i < 200; i++) {
    Bytes mut = ser;
    mut[fuzz.below(mut.size())] ^= static_cast<std::uint8_t>(1 + fuzz.below(255));
    OpeningProof junk;
    if (deserialize_proof(ck, mut, junk)) {
      std::vector<Symbol> v = {m[0], m[8], m[16], m[29]};
      (void)vc_verify(ck, cm, junk.indices, v, junk);  // must not throw
    }
  }
}

TEST_CASE("completeness holds over random messages and query sets") {
  Rng rng(1000);
  for (int trial = 0; trial < 100; trial++) {
    std::uint32_t ell = 1 + static_cast<std::uint32_t>(rng.below(40));
    CommitmentKey ck = toy_key(ell, 5000 + trial);
    auto m = random_message(ck, rng);
    auto [cm, aux] = vc_commit(ck, m);
    std::set<std::uint32_t> q;
    std::size_t want = 1 + rng.below(std::min<std::uint64_t>(ell, 6));
    while (q.size() < want) q.insert(static_cast<std::uint32_t>(rng.below(ell)) + 1);
    OpeningProof pf = vc_open(ck, aux, q);
    std::vector<std::uint32_t> qv(q.begin(), q.end());
    std::vector<Symbol> v;
    for (auto i : qv) v.push_back(m[i - 1]);
    REQUIRE(vc_verify(ck, cm, qv, v, pf));
  }
}
