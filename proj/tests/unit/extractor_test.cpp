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

#include "pqkilian/extractor/classical.hpp"

using namespace pqk;
using namespace pqk::extractor;

namespace {

kilian::Params small_params(std::uint64_t seed) {
  Rng rng(seed);
  kilian::Params prm;
  prm.instance = pcp::gen_planted_coloring(8, 3, 16, rng);
  prm.pcp_cfg = {4, 5};  // rc = 20, still enumerable by the win-rate oracle
  prm.family_id = HashFamilyId::kToy;
  prm.hash_input_bits = 32;
  return prm;
}

}  // namespace

TEST_CASE("budget formulas") {
  auto p = pcp::pcp_params(pcp::CSPInstance{10, 3, {}, std::nullopt, 0.0}, {4, 5});
  auto b = extraction_budget(p, 0.3);
  REQUIRE(b.k_target == static_cast<std::uint64_t>(std::ceil(6.0 * 10 * std::log(6.0))));
  REQUIRE(b.n == static_cast<std::uint64_t>(std::ceil(60.0 * 10 * std::log(6.0) / 0.3)));
  REQUIRE_THROWS_AS(extraction_budget(p, 0.0), std::invalid_argument);
}

TEST_CASE("honest oracle: extraction recovers the planted witness, never aborts") {
  kilian::Params prm = small_params(1);
  HonestOracle oracle(prm, *prm.instance.planted);
  for (std::uint64_t seed = 100; seed < 200; seed++) {
    Rng rng(seed);
    ExtractionResult res = extract_witness(oracle, prm, 1.0, rng);
    REQUIRE(res.reason == AbortReason::kNone);
    REQUIRE(res.witness == *prm.instance.planted);
    // Every distinct challenge is accepted; the tiny shortfall from n is
    // the birthday count of duplicate draws in the 2^20 challenge space.
    REQUIRE(res.k <= res.n);
    REQUIRE(res.k >= res.n - 10);
  }
}

TEST_CASE("first-bit oracle accepts a binomial half of the challenges") {
  kilian::Params prm = small_params(2);
  FirstBitOracle oracle(prm, *prm.instance.planted);
  Rng rng(7);
  pcp::PCPParams p = prm.pcp();
  vc::CommitmentKey ck = vc::vc_gen(p.proof_length, prm.family(), rng);
  vc::Commitment cm = oracle.commit(ck);
  std::vector<Bytes> rs(400);
  for (auto& r : rs) r = kilian::sample_randomness(p, rng);
  auto pairs = record_transcripts(oracle, prm, ck, cm, rs);
  double frac = static_cast<double>(pairs.size()) / 400.0;
  REQUIRE(frac > 0.5 - 4 * 0.025);
  REQUIRE(frac < 0.5 + 4 * 0.025);
  for (const auto& pr : pairs) REQUIRE((pr.r[0] & 0x80u) == 0);
}

TEST_CASE("garbage oracle: no accepting transcripts, budget abort") {
  kilian::Params prm = small_params(3);
  GarbageOracle oracle(prm.family()->output_bytes());
  Rng rng(8);
  ExtractionResult res = extract_witness(oracle, prm, 0.5, rng);
  REQUIRE(res.reason == AbortReason::kTooFewTranscripts);
  REQUIRE_FALSE(res.witness.has_value());
  REQUIRE(res.k == 0);
}

TEST_CASE("throttled oracle still extracts at epsilon = 0.5") {
  kilian::Params prm = small_params(4);
  int successes = 0;
  for (std::uint64_t seed = 0; seed < 5; seed++) {
    ThrottledOracle oracle(prm, *prm.instance.planted, 0.5, 999 + seed);
    Rng rng(seed);
    ExtractionResult res = extract_witness(oracle, prm, 0.5, rng);
    if (res.witness) {
      REQUIRE(*res.witness == *prm.instance.planted);
      successes++;
      // The spec's win-rate guarantee: assembled strings win at least
      // k/(2n) of the enumerated challenges.
      double wr = pcp::pcp_win_rate(prm.instance, prm.pcp(), *res.assembled).value();
      REQUIRE(wr >= static_cast<double>(res.k) / (2.0 * static_cast<double>(res.n)));
    }
  }
  REQUIRE(successes >= 4);
}

TEST_CASE("assembly detects conflicting openings") {
  std::vector<AcceptedPair> pairs(2);
  pairs[0].z.positions = {1, 2};
  pairs[0].z.answers = {1, 2};
  pairs[1].z.positions = {2, 3};
  pairs[1].z.answers = {2, 0};
  REQUIRE(assemble_pcp(4, pairs).has_value());
  pairs[1].z.answers = {1, 0};  // position 2 answered twice, differently
  REQUIRE_FALSE(assemble_pcp(4, pairs).has_value());
  // Unfilled positions default to symbol zero.
  auto pi = assemble_pcp(4, {pairs[0]});
  REQUIRE(*pi == pcp::PCPString{1, 2, 0, 0});
}

TEST_CASE("unsatisfiable instances never yield witnesses") {
  Rng gen(11);
  kilian::Params prm;
  prm.instance = pcp::gen_unsat_nae(6, 16, 0.05, gen);
  prm.pcp_cfg = {4, 5};
  prm.family_id = HashFamilyId::kToy;
  prm.hash_input_bits = 32;

  pcp::PCPString best = pcp::worst_case_proof(prm.instance, gen);
  FixedStringOracle oracle(prm, best);
  for (std::uint64_t seed = 0; seed < 3; seed++) {
    Rng rng(40 + seed);
    ExtractionResult res = extract_witness(oracle, prm, 0.3, rng);
    REQUIRE_FALSE(res.witness.has_value());
    REQUIRE((res.reason == AbortReason::kTooFewTranscripts || res.reason == AbortReason::kPcpExtractFailed));
  }
}
