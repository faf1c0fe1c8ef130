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

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>

#include "pqkilian/extractor/classical.hpp"
#include "pqkilian/kilian/wire.hpp"

using namespace pqk;

namespace {

struct CommonOpts {
  std::string instance_path;
  std::string witness_path;
  std::uint32_t k_sel = 4;
  std::uint32_t block_bits = 16;
  std::string hash = "sha256";
  std::uint32_t hash_bits = 256;
};

void add_common(CLI::App* app, CommonOpts& o, bool with_witness) {
  app->add_option("--instance", o.instance_path, "CSP instance JSON file")->required();
  if (with_witness)
    app->add_option("--witness", o.witness_path, "witness JSON file (defaults to the planted witness)");
  app->add_option("--k-sel", o.k_sel, "constraints checked per challenge");
  app->add_option("--block-bits", o.block_bits, "randomness bits per constraint pick");
  app->add_option("--hash", o.hash, "hash family: sha256 | toy");
  app->add_option("--hash-bits", o.hash_bits, "hash input width in bits");
}

kilian::Params load_params(const CommonOpts& o) {
  kilian::Params prm;
  prm.instance = pcp::load_csp(o.instance_path);
  prm.pcp_cfg = {o.k_sel, o.block_bits};
  prm.family_id = o.hash == "toy" ? HashFamilyId::kToy : HashFamilyId::kSha256;
  prm.hash_input_bits = o.hash_bits;
  return prm;
}

pcp::Assignment load_witness(const kilian::Params& prm, const std::string& path) {
  if (path.empty()) {
    if (!prm.instance.planted) throw std::runtime_error("no witness file and the instance has no planted witness");
    return *prm.instance.planted;
  }
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open witness file: " + path);
  nlohmann::json j;
  f >> j;
  return j.get<pcp::Assignment>();
}

std::pair<std::string, std::uint16_t> parse_addr(const std::string& addr) {
  auto pos = addr.rfind(':');
  if (pos == std::string::npos) throw std::runtime_error("address must be host:port");
  return {addr.substr(0, pos), static_cast<std::uint16_t>(std::stoul(addr.substr(pos + 1)))};
}

std::pair<std::uint64_t, std::uint64_t> parse_seed_range(const std::string& s) {
  auto pos = s.find("..");
  if (pos == std::string::npos) {
    std::uint64_t v = std::stoull(s);
    return {v, v + 1};
  }
  return {std::stoull(s.substr(0, pos)), std::stoull(s.substr(pos + 2))};
}

Bytes read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open file: " + path);
  return Bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const Bytes& data) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write file: " + path);
  f.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kilian: succinct interactive argument over CSP instances"};
  app.require_subcommand(1);

  CommonOpts prove_o, verify_o, serve_o, connect_o, extract_o;

  auto* prove = app.add_subcommand("prove", "run both roles in process, write the transcript");
  add_common(prove, prove_o, true);
  std::uint64_t prove_seed = 0;
  std::string transcript_out, debug_json_out;
  prove->add_option("--seed", prove_seed, "verifier randomness seed");
  prove->add_option("--transcript", transcript_out, "output transcript file (binary)");
  prove->add_option("--json", debug_json_out, "output transcript debug JSON");

  auto* verify = app.add_subcommand("verify", "verify a transcript file");
  add_common(verify, verify_o, false);
  std::string transcript_in;
  verify->add_option("--transcript", transcript_in, "transcript file")->required();

  auto* serve = app.add_subcommand("serve", "run the verifier over TCP (one session per connection)");
  add_common(serve, serve_o, false);
  std::string listen_addr = "127.0.0.1:0";
  std::uint64_t serve_seed = 0;
  std::size_t serve_sessions = 1;
  serve->add_option("--listen", listen_addr, "host:port to listen on");
  serve->add_option("--seed", serve_seed, "verifier randomness seed");
  serve->add_option("--sessions", serve_sessions, "sessions to serve before exiting");

  auto* connect = app.add_subcommand("connect", "run the prover against a remote verifier");
  add_common(connect, connect_o, true);
  std::string peer_addr;
  connect->add_option("--peer", peer_addr, "verifier host:port")->required();

  auto* extract = app.add_subcommand("extract", "run the classical rewinding extractor");
  add_common(extract, extract_o, false);
  std::string adversary = "honest";
  double epsilon = 0.3;
  std::string seeds = "0..100";
  std::uint64_t adversary_seed = 777;
  extract->add_option("--adversary", adversary, "honest | throttled | firstbit | garbage | fixed-worst");
  extract->add_option("--epsilon", epsilon, "claimed success lower bound");
  extract->add_option("--seeds", seeds, "seed range a..b");
  extract->add_option("--adversary-seed", adversary_seed, "oracle-internal seed base");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*prove) {
      kilian::Params prm = load_params(prove_o);
      pcp::Assignment w = load_witness(prm, prove_o.witness_path);
      Rng rng(prove_seed);
      kilian::Transcript t = kilian::run_honest(prm, w, rng);
      bool ok = kilian::verify_transcript(prm, t);
      Bytes ser = kilian::serialize_transcript(prm, t);
      if (!transcript_out.empty()) write_file(transcript_out, ser);
      if (!debug_json_out.empty()) {
        std::ofstream f(debug_json_out);
        f << kilian::transcript_debug_json(prm, t).dump(2) << "\n";
      }
      std::cout << "accept=" << ok << " transcript_bytes=" << ser.size()
                << " full_proof_bytes=" << kilian::full_proof_size(prm) << "\n";
      return ok ? 0 : 1;
    }
    if (*verify) {
      kilian::Params prm = load_params(verify_o);
      kilian::Transcript t;
      bool ok = kilian::deserialize_transcript(prm, read_file(transcript_in), t) &&
                kilian::verify_transcript(prm, t);
      std::cout << "accept=" << ok << "\n";
      return ok ? 0 : 1;
    }
    if (*serve) {
      kilian::Params prm = load_params(serve_o);
      auto [host, port] = parse_addr(listen_addr);
      kilian::Listener listener(port, host);
      std::cout << "listening on " << host << ":" << listener.port() << std::endl;
      bool all_ok = true;
      for (std::size_t i = 0; i < serve_sessions; i++) {
        kilian::Socket s = listener.accept_one();
        Rng rng(serve_seed + i);
        bool ok = kilian::serve_session(s, prm, rng);
        std::cout << "session " << i << " accept=" << ok << std::endl;
        all_ok = all_ok && ok;
      }
      return all_ok ? 0 : 1;
    }
    if (*connect) {
      kilian::Params prm = load_params(connect_o);
      pcp::Assignment w = load_witness(prm, connect_o.witness_path);
      auto [host, port] = parse_addr(peer_addr);
      kilian::Socket s = kilian::Socket::connect_to(host, port);
      bool ok = kilian::prove_session(s, prm, w);
      std::cout << "accept=" << ok << "\n";
      return ok ? 0 : 1;
    }
    if (*extract) {
      kilian::Params prm = load_params(extract_o);
      auto [begin, end] = parse_seed_range(seeds);
      std::size_t success = 0;
      double k_sum = 0;
      std::map<std::string, std::size_t> aborts;
      for (std::uint64_t seed = begin; seed < end; seed++) {
        std::unique_ptr<extractor::ClassicalProverOracle> oracle;
        if (adversary == "honest") {
          oracle = std::make_unique<extractor::HonestOracle>(prm, *prm.instance.planted);
        } else if (adversary == "throttled") {
          oracle = std::make_unique<extractor::ThrottledOracle>(prm, *prm.instance.planted, epsilon,
                                                                adversary_seed + seed);
        } else if (adversary == "firstbit") {
          oracle = std::make_unique<extractor::FirstBitOracle>(prm, *prm.instance.planted);
        } else if (adversary == "garbage") {
          oracle = std::make_unique<extractor::GarbageOracle>(prm.family()->output_bytes());
        } else if (adversary == "fixed-worst") {
          Rng hill(adversary_seed);
          oracle = std::make_unique<extractor::FixedStringOracle>(prm, pcp::worst_case_proof(prm.instance, hill));
        } else {
          throw std::runtime_error("unknown adversary: " + adversary);
        }
        Rng rng(seed);
        extractor::ExtractionResult res = extractor::extract_witness(*oracle, prm, epsilon, rng);
        success += res.witness ? 1 : 0;
        k_sum += static_cast<double>(res.k);
        aborts[extractor::abort_reason_name(res.reason)]++;
      }
      nlohmann::json report;
      std::uint64_t total = end - begin;
      report["success_rate"] = static_cast<double>(success) / static_cast<double>(total);
      report["mean_k"] = k_sum / static_cast<double>(total);
      report["abort_histogram"] = nlohmann::json::object();
      for (auto& [k, v] : aborts) report["abort_histogram"][k] = v;
      report["seeds"] = {{"begin", begin}, {"end", end}};
      std::cout << report.dump(2) << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
