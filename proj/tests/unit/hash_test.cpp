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

#include <map>

#include "pqkilian/hash/family.hpp"

using namespace pqk;

namespace {

// Straight-line recomputation of the documented toy formula, written
// independently of ToyHashFamily::eval.
std::uint64_t toy_oracle(std::uint64_t key, std::uint8_t tag, std::uint64_t x, std::size_t n) {
  std::uint64_t mask = (n == 64) ? ~0ULL : ((1ULL << n) - 1);
  std::uint64_t spread = 0;
  for (std::size_t i = 0; i < n; i += 8) spread |= static_cast<std::uint64_t>(tag) << i;
  std::uint64_t y = (x ^ key ^ spread) & mask;
  y = (y * (0x9e3779b97f4a7c15ULL & mask)) & mask;
  y ^= y >> (n / 2);
  y = (y * (0xbf58476d1ce4e5b9ULL & mask)) & mask;
  y ^= y >> (n / 2);
  return y & ((1ULL << (n / 2)) - 1);
}

Bytes be_bytes(std::uint64_t v, std::size_t n) {
  Bytes b(n);
  for (std::size_t i = 0; i < n; i++) b[i] = static_cast<std::uint8_t>(v >> (8 * (n - 1 - i)));
  return b;
}

std::uint64_t be_load(const Bytes& b) {
  std::uint64_t v = 0;
  for (std::uint8_t x : b) v = (v << 8) | x;
  return v;
}

}  // namespace

TEST_CASE("toy family compresses by exactly half and is deterministic") {
  for (std::size_t n : {16u, 32u, 64u}) {
    ToyHashFamily f(n);
    REQUIRE(f.output_bits() == n / 2);
    Rng rng(1);
    Bytes key = rng.bytes(f.key_bytes());
    Bytes x = rng.bytes(f.input_bytes());
    REQUIRE(f.eval(key, HashDomain::kLeaf, x) == f.eval(key, HashDomain::kLeaf, x));
  }
}

TEST_CASE("toy family matches the straight-line oracle") {
  ToyHashFamily f(32);
  Rng rng(9);
  for (int i = 0; i < 200; i++) {
    std::uint64_t key = rng.next_u32();
    std::uint64_t x = rng.next_u32();
    for (std::uint8_t tag : {0x00, 0x01}) {
      Bytes got = f.eval(be_bytes(key, 4), static_cast<HashDomain>(tag), be_bytes(x, 4));
      REQUIRE(be_load(got) == toy_oracle(key, tag, x, 32));
    }
  }
}

TEST_CASE("toy family at 16 bits is exactly 2^8-to-1") {
  ToyHashFamily f(16);
  Bytes key = be_bytes(0xBEEF, 2);
  std::map<std::uint64_t, int> buckets;
  for (std::uint64_t x = 0; x < (1u << 16); x++)
    buckets[be_load(f.eval(key, HashDomain::kLeaf, be_bytes(x, 2)))]++;
  REQUIRE(buckets.size() == 256);
  for (auto& [y, c] : buckets) REQUIRE(c == 256);
}

TEST_CASE("domain tags separate leaf and node hashing") {
  ToyHashFamily f(32);
  Sha256Family g(256);
  Rng rng(4);
  Bytes kt = rng.bytes(f.key_bytes()), xt = rng.bytes(f.input_bytes());
  REQUIRE(f.eval(kt, HashDomain::kLeaf, xt) != f.eval(kt, HashDomain::kNode, xt));
  Bytes kg = rng.bytes(g.key_bytes()), xg = rng.bytes(g.input_bytes());
  REQUIRE(g.eval(kg, HashDomain::kLeaf, xg) != g.eval(kg, HashDomain::kNode, xg));
}

TEST_CASE("sha256 family truncates to n/2 bits") {
  Sha256Family g(256);
  REQUIRE(g.output_bytes() == 16);
  Rng rng(5);
  Bytes k = rng.bytes(g.key_bytes()), x = rng.bytes(g.input_bytes());
  Bytes y1 = g.eval(k, HashDomain::kLeaf, x);
  REQUIRE(y1.size() == 16);
  x[0] ^= 1;
  REQUIRE(g.eval(k, HashDomain::kLeaf, x) != y1);
}

TEST_CASE("width mismatches are rejected") {
  ToyHashFamily f(32);
  Bytes key(4, 0), bad(3, 0);
  REQUIRE_THROWS_AS(f.eval(key, HashDomain::kLeaf, bad), std::invalid_argument);
  REQUIRE_THROWS_AS(f.eval(Bytes(2, 0), HashDomain::kLeaf, Bytes(4, 0)), std::invalid_argument);
}
