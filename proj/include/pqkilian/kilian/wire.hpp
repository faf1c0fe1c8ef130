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

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cstring>
#include <stdexcept>
#include <string>

#include "pqkilian/kilian/protocol.hpp"

namespace pqk::kilian {

/// One protocol run per connection; each message is a 1-byte type tag
/// followed by a u32be payload length and the payload.
class Socket {
 public:
  Socket() = default;
  explicit Socket(int fd) : fd_(fd) {}
  Socket(Socket&& o) noexcept : fd_(o.fd_) { o.fd_ = -1; }
  Socket& operator=(Socket&& o) noexcept {
    if (this != &o) {
      close_fd();
      fd_ = o.fd_;
      o.fd_ = -1;
    }
    return *this;
  }
  Socket(const Socket&) = delete;
  Socket& operator=(const Socket&) = delete;
  ~Socket() { close_fd(); }

  int fd() const { return fd_; }
  bool valid() const { return fd_ >= 0; }

  void send_frame(std::uint8_t tag, const Bytes& payload) {
    Bytes buf;
    frame(buf, tag, payload);
    write_all(buf.data(), buf.size());
  }

  /// Returns false on clean EOF before any byte of the frame.
  bool recv_frame(std::uint8_t& tag, Bytes& payload, std::size_t max_len = 64u << 20) {
    std::uint8_t header[5];
    std::size_t got = read_some(header, 5);
    if (got == 0) return false;
    if (got < 5) throw std::runtime_error("wire: truncated frame header");
    tag = header[0];
    std::uint32_t len = (static_cast<std::uint32_t>(header[1]) << 24) |
                        (static_cast<std::uint32_t>(header[2]) << 16) |
                        (static_cast<std::uint32_t>(header[3]) << 8) | header[4];
    if (len > max_len) throw std::runtime_error("wire: oversized frame");
    payload.resize(len);
    if (len > 0 && read_some(payload.data(), len) != len) throw std::runtime_error("wire: truncated frame payload");
    return true;
  }

  static Socket connect_to(const std::string& host, std::uint16_t port) {
    int fd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd < 0) throw std::runtime_error("wire: socket() failed");
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
      ::close(fd);
      throw std::runtime_error("wire: bad address " + host);
    }
    if (::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
      ::close(fd);
      throw std::runtime_error("wire: connect failed");
    }
    return Socket(fd);
  }

 private:
  void close_fd() {
    if (fd_ >= 0) ::close(fd_);
    fd_ = -1;
  }

  void write_all(const std::uint8_t* p, std::size_t n) {
    while (n > 0) {
      ssize_t w = ::write(fd_, p, n);
      if (w <= 0) throw std::runtime_error("wire: write failed");
      p += w;
      n -= static_cast<std::size_t>(w);
    }
  }

  std::size_t read_some(std::uint8_t* p, std::size_t n) {
    std::size_t total = 0;
    while (total < n) {
      ssize_t r = ::read(fd_, p + total, n - total);
      if (r < 0) throw std::runtime_error("wire: read failed");
      if (r == 0) break;
      total += static_cast<std::size_t>(r);
    }
    return total;
  }

  int fd_ = -1;
};

class Listener {
 public:
  explicit Listener(std::uint16_t port, const std::string& host = "127.0.0.1") {
    fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd_ < 0) throw std::runtime_error("wire: socket() failed");
    int one = 1;
    ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) throw std::runtime_error("wire: bad address");
    if (::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0)
      throw std::runtime_error("wire: bind failed");
    if (::listen(fd_, 8) != 0) throw std::runtime_error("wire: listen failed");
    socklen_t len = sizeof(addr);
    ::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len);
    port_ = ntohs(addr.sin_port);
  }
  ~Listener() {
    if (fd_ >= 0) ::close(fd_);
  }
  Listener(const Listener&) = delete;

  std::uint16_t port() const { return port_; }

  Socket accept_one() {
    int cfd = ::accept(fd_, nullptr, nullptr);
    if (cfd < 0) throw std::runtime_error("wire: accept failed");
    return Socket(cfd);
  }

 private:
  int fd_ = -1;
  std::uint16_t port_ = 0;
};

/// Verifier role over one connection. Returns the verdict.
inline bool serve_session(Socket& s, const Params& prm, Rng& rng, Transcript* out = nullptr) {
  VerifierSession v(prm);
  vc::CommitmentKey ck = v.keygen(rng);
  s.send_frame(kMsgCk, vc::serialize_key(ck));

  std::uint8_t tag = 0;
  Bytes payload;
  if (!s.recv_frame(tag, payload) || tag != kMsgCm) throw ProtocolError("wire: expected commitment");
  v.on_commitment(vc::Commitment{payload});

  Bytes r = v.challenge(rng);
  s.send_frame(kMsgChallenge, serialize_msg3(prm.pcp(), r));

  if (!s.recv_frame(tag, payload) || tag != kMsgResponse) throw ProtocolError("wire: expected response");
  Response z;
  if (!deserialize_msg4(ck, payload, z)) return false;
  bool ok = v.on_response(z);
  if (out) *out = v.transcript(z);
  return ok;
}

/// Prover role over one connection. Returns the locally recomputed verdict
/// (the protocol is publicly verifiable, so no verdict frame is needed).
inline bool prove_session(Socket& s, const Params& prm, const pcp::Assignment& w, Transcript* out = nullptr) {
  ProverSession p(prm, w);
  std::uint8_t tag = 0;
  Bytes payload;
  if (!s.recv_frame(tag, payload) || tag != kMsgCk) throw ProtocolError("wire: expected commitment key");
  vc::CommitmentKey ck;
  if (!vc::deserialize_key(payload, ck)) throw ProtocolError("wire: malformed commitment key");
  vc::Commitment cm = p.on_commitment_key(ck);
  s.send_frame(kMsgCm, cm.root);

  if (!s.recv_frame(tag, payload) || tag != kMsgChallenge) throw ProtocolError("wire: expected challenge");
  Bytes r;
  if (!deserialize_msg3(payload, prm.pcp().randomness_bits, r)) throw ProtocolError("wire: malformed challenge");
  Response z = p.on_challenge(r);
  s.send_frame(kMsgResponse, serialize_msg4(ck, z));

  Transcript t{ck, cm, r, z};
  if (out) *out = t;
  return verify_transcript(prm, t);
}

}  // namespace pqk::kilian
