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
#include <stdexcept>
#include <string>
#include <vector>

namespace pqk {

using Bytes = std::vector<std::uint8_t>;

inline std::string to_hex(const Bytes& b) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  s.reserve(2 * b.size());
  for (std::uint8_t x : b) {
    s.push_back(digits[x >> 4]);
    s.push_back(digits[x & 0xF]);
  }
  return s;
}

/// Big-endian writers/readers used by every wire format in the repo.
inline void put_u8(Bytes& out, std::uint8_t v) { out.push_back(v); }

inline void put_u32be(Bytes& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

inline void put_u64be(Bytes& out, std::uint64_t v) {
  put_u32be(out, static_cast<std::uint32_t>(v >> 32));
  put_u32be(out, static_cast<std::uint32_t>(v));
}

/// Cursor over a byte buffer; all read_* return false on underrun instead of
/// throwing so that verifiers can stay total on arbitrary input.
struct ByteReader {
  const std::uint8_t* p;
  std::size_t n;

  explicit ByteReader(const Bytes& b) : p(b.data()), n(b.size()) {}
  ByteReader(const std::uint8_t* data, std::size_t len) : p(data), n(len) {}

  bool read_u8(std::uint8_t& v) {
    if (n < 1) return false;
    v = p[0];
    p += 1;
    n -= 1;
    return true;
  }

  bool read_u32be(std::uint32_t& v) {
    if (n < 4) return false;
    v = (static_cast<std::uint32_t>(p[0]) << 24) | (static_cast<std::uint32_t>(p[1]) << 16) |
        (static_cast<std::uint32_t>(p[2]) << 8) | static_cast<std::uint32_t>(p[3]);
    p += 4;
    n -= 4;
    return true;
  }

  bool read_u64be(std::uint64_t& v) {
    std::uint32_t hi, lo;
    if (!read_u32be(hi) || !read_u32be(lo)) return false;
    v = (static_cast<std::uint64_t>(hi) << 32) | lo;
    return true;
  }

  bool read_bytes(Bytes& out, std::size_t k) {
    if (n < k) return false;
    out.assign(p, p + k);
    p += k;
    n -= k;
    return true;
  }

  bool done() const { return n == 0; }
};

}  // namespace pqk
