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

#include <array>
#include <cstdint>
#include <cstring>
#include <vector>

namespace pqk {

/// Seedable deterministic CSPRNG: the ChaCha20 block function (RFC 8439)
/// keyed from a 64-bit seed. The output byte stream for a given seed is
/// fixed across platforms, which is what replayable experiments need.
///
/// Key schedule: the 256-bit key is the first four outputs of splitmix64
/// applied to the seed; nonce is zero; the block counter starts at 0.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t s = seed;
    for (int i = 0; i < 4; i++) {
      std::uint64_t v = splitmix64(s);
      key_[2 * i] = static_cast<std::uint32_t>(v);
      key_[2 * i + 1] = static_cast<std::uint32_t>(v >> 32);
    }
    counter_ = 0;
    pos_ = 64;  // force refill on first use
  }

  std::uint64_t seed_stream_position() const { return counter_ * 64 + pos_; }

  void fill_bytes(std::uint8_t* out, std::size_t n) {
    while (n > 0) {
      if (pos_ == 64) refill();
      std::size_t take = std::min<std::size_t>(64 - pos_, n);
      std::memcpy(out, block_.data() + pos_, take);
      pos_ += take;
      out += take;
      n -= take;
    }
  }

  std::vector<std::uint8_t> bytes(std::size_t n) {
    std::vector<std::uint8_t> v(n);
    fill_bytes(v.data(), n);
    return v;
  }

  std::uint32_t next_u32() {
    std::uint8_t b[4];
    fill_bytes(b, 4);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
  }

  std::uint64_t next_u64() {
    std::uint64_t lo = next_u32();
    std::uint64_t hi = next_u32();
    return lo | (hi << 32);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Unbiased uniform integer in [0, n). Rejection sampling on the top range.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) return 0;
    std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      std::uint64_t v = next_u64();
      if (v >= threshold) return v % n;
    }
  }

  bool bernoulli(double p) { return next_double() < p; }

 private:
  static std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static std::uint32_t rotl(std::uint32_t x, int k) { return (x << k) | (x >> (32 - k)); }

  static void quarter_round(std::uint32_t& a, std::uint32_t& b, std::uint32_t& c, std::uint32_t& d) {
    a += b; d ^= a; d = rotl(d, 16);
    c += d; b ^= c; b = rotl(b, 12);
    a += b; d ^= a; d = rotl(d, 8);
    c += d; b ^= c; b = rotl(b, 7);
  }

  void refill() {
    std::uint32_t st[16];
    static constexpr std::uint32_t kSigma[4] = {0x61707865, 0x3320646e, 0x79622d32, 0x6b206574};
    for (int i = 0; i < 4; i++) st[i] = kSigma[i];
    for (int i = 0; i < 8; i++) st[4 + i] = key_[i];
    st[12] = static_cast<std::uint32_t>(counter_);
    st[13] = static_cast<std::uint32_t>(counter_ >> 32);
    st[14] = 0;
    st[15] = 0;
    std::uint32_t w[16];
    std::memcpy(w, st, sizeof(w));
    for (int round = 0; round < 10; round++) {
      quarter_round(w[0], w[4], w[8], w[12]);
      quarter_round(w[1], w[5], w[9], w[13]);
      quarter_round(w[2], w[6], w[10], w[14]);
      quarter_round(w[3], w[7], w[11], w[15]);
      quarter_round(w[0], w[5], w[10], w[15]);
      quarter_round(w[1], w[6], w[11], w[12]);
      quarter_round(w[2], w[7], w[8], w[13]);
      quarter_round(w[3], w[4], w[9], w[14]);
    }
    for (int i = 0; i < 16; i++) {
      std::uint32_t v = w[i] + st[i];
      block_[4 * i] = static_cast<std::uint8_t>(v);
      block_[4 * i + 1] = static_cast<std::uint8_t>(v >> 8);
      block_[4 * i + 2] = static_cast<std::uint8_t>(v >> 16);
      block_[4 * i + 3] = static_cast<std::uint8_t>(v >> 24);
    }
    counter_++;
    pos_ = 0;
  }

  std::array<std::uint32_t, 8> key_{};
  std::array<std::uint8_t, 64> block_{};
  std::uint64_t counter_ = 0;
  std::size_t pos_ = 64;
};

}  // namespace pqk
