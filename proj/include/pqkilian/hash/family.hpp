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

#include <openssl/sha.h>

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>

#include "pqkilian/common/bytes.hpp"
#include "pqkilian/common/rng.hpp"

namespace pqk {

/// Domain tags prepended to every compression input. Leaves and internal
/// nodes must never collide structurally.
enum class HashDomain : std::uint8_t { kLeaf = 0x00, kNode = 0x01 };

/// Keyed 2-to-1 compression family: input_bits n -> output_bits n/2,
/// deterministic for a fixed key. eval() additionally takes a 1-byte domain
/// tag; the tag byte is folded into the input, ahead of the n payload bits.
class HashFamily {
 public:
  virtual ~HashFamily() = default;

  virtual std::string name() const = 0;
  virtual std::size_t input_bits() const = 0;
  std::size_t output_bits() const { return input_bits() / 2; }
  std::size_t input_bytes() const { return input_bits() / 8; }
  std::size_t output_bytes() const { return output_bits() / 8; }
  virtual std::size_t key_bytes() const = 0;

  /// payload.size() must equal input_bytes().
  virtual Bytes eval(const Bytes& key, HashDomain tag, const Bytes& payload) const = 0;
};

/// Toy family, small enough to put the whole input space in superposition.
/// The n-bit input passes through an invertible multiply/xorshift mixing
/// permutation of [2^n] and the low n/2 bits are the digest, so the map is
/// exactly 2^(n/2)-to-1. For input width n (16..64 bits, multiple of 16):
///
///   y = x XOR key XOR spread_n(tag)        spread_n repeats the tag byte
///   y = (y * C1) mod 2^n                   C1 = 0x9e3779b97f4a7c15 mod 2^n
///   y = y XOR (y >> n/2)
///   y = (y * C2) mod 2^n                   C2 = 0xbf58476d1ce4e5b9 mod 2^n
///   y = y XOR (y >> n/2)
///   out = y mod 2^(n/2)
///
/// Both constants are odd, so every step is a bijection on n-bit words; the
/// formula is frozen here and tests recompute it straight-line.
class ToyHashFamily : public HashFamily {
 public:
  explicit ToyHashFamily(std::size_t input_bits) : n_(input_bits) {
    if (n_ < 16 || n_ > 64 || n_ % 16 != 0) throw std::invalid_argument("toy hash: input_bits must be in {16,32,48,64}");
  }

  std::string name() const override { return "toy-mix-" + std::to_string(n_); }
  std::size_t input_bits() const override { return n_; }
  std::size_t key_bytes() const override { return n_ / 8; }

  Bytes eval(const Bytes& key, HashDomain tag, const Bytes& payload) const override {
    if (payload.size() != input_bytes()) throw std::invalid_argument("toy hash: payload width mismatch");
    if (key.size() != key_bytes()) throw std::invalid_argument("toy hash: key width mismatch");
    std::uint64_t out = mix(load_be(payload), load_be(key), static_cast<std::uint8_t>(tag), n_);
    Bytes res(n_ / 16);
    for (std::size_t i = 0; i < res.size(); i++)
      res[i] = static_cast<std::uint8_t>(out >> (8 * (res.size() - 1 - i)));
    return res;
  }

  /// Integer-level convenience used by the quantum collapse experiments
  /// (leaf domain tag).
  std::uint64_t eval_word(std::uint64_t key, std::uint64_t x) const {
    return mix(x, key, 0x00, n_);
  }

  static std::uint64_t mix(std::uint64_t x, std::uint64_t key, std::uint8_t tag, std::size_t n) {
    std::uint64_t mask = (n == 64) ? ~0ULL : ((1ULL << n) - 1);
    std::uint64_t spread = 0;
    for (std::size_t i = 0; i < n; i += 8) spread |= static_cast<std::uint64_t>(tag) << i;
    std::uint64_t y = (x ^ key ^ spread) & mask;
    y = (y * (0x9e3779b97f4a7c15ULL & mask)) & mask;
    y ^= y >> (n / 2);
    y = (y * (0xbf58476d1ce4e5b9ULL & mask)) & mask;
    y ^= y >> (n / 2);
    return y & ((n / 2 == 64) ? ~0ULL : ((1ULL << (n / 2)) - 1));
  }

 private:
  static std::uint64_t load_be(const Bytes& b) {
    std::uint64_t v = 0;
    for (std::uint8_t x : b) v = (v << 8) | x;
    return v;
  }

  std::size_t n_;
};

/// Cryptographic instantiation: SHA-256 over (key || tag || payload),
/// truncated to n/2 bits. Used for protocol-scale Merkle commitments.
class Sha256Family : public HashFamily {
 public:
  explicit Sha256Family(std::size_t input_bits) : n_(input_bits) {
    if (n_ % 16 != 0 || n_ < 16 || n_ / 2 > 256) throw std::invalid_argument("sha256 family: output must fit in 256 bits");
  }

  std::string name() const override { return "sha256-trunc-" + std::to_string(n_); }
  std::size_t input_bits() const override { return n_; }
  std::size_t key_bytes() const override { return 16; }

  Bytes eval(const Bytes& key, HashDomain tag, const Bytes& payload) const override {
    if (payload.size() != input_bytes()) throw std::invalid_argument("sha256 family: payload width mismatch");
    if (key.size() != key_bytes()) throw std::invalid_argument("sha256 family: key width mismatch");
    Bytes in;
    in.reserve(key.size() + 1 + payload.size());
    in.insert(in.end(), key.begin(), key.end());
    in.push_back(static_cast<std::uint8_t>(tag));
    in.insert(in.end(), payload.begin(), payload.end());
    std::uint8_t digest[SHA256_DIGEST_LENGTH];
    SHA256(in.data(), in.size(), digest);
    return Bytes(digest, digest + output_bytes());
  }

 private:
  std::size_t n_;
};

/// Family ids used on the wire (CommitmentKey serialization).
enum class HashFamilyId : std::uint8_t { kToy = 0x01, kSha256 = 0x02 };

inline std::shared_ptr<const HashFamily> make_family(HashFamilyId id, std::size_t input_bits) {
  switch (id) {
    case HashFamilyId::kToy:
      return std::make_shared<ToyHashFamily>(input_bits);
    case HashFamilyId::kSha256:
      return std::make_shared<Sha256Family>(input_bits);
  }
  throw std::invalid_argument("unknown hash family id");
}

inline HashFamilyId family_id(const HashFamily& f) {
  return f.name().rfind("toy", 0) == 0 ? HashFamilyId::kToy : HashFamilyId::kSha256;
}

}  // namespace pqk
