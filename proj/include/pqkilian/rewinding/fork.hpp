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

#include <map>
#include <stdexcept>
#include <vector>

#include "pqkilian/rewinding/repeated.hpp"

namespace pqk::rw {

struct ForkRecord {
  std::size_t challenge = 0;
  std::size_t answer = 0;
};

struct ForkResult {
  std::vector<ForkRecord> records;  // W, in recording order
  PlayResult play;
};

/// Records accepting final-round transcripts by interleaving play with the
/// recording referee: on every win the response register is measured in
/// the computational basis and (r, z) enters W unless r was already
/// recorded. Structural guarantees checked on every run: every record
/// wins, challenges are distinct, and every challenge comes from the
/// supplied vector.
inline ForkResult fork(const GameFrame& frame, const PlaySchedule& sched,
                       const std::vector<std::size_t>& challenges, const Vec& initial, Rng& rng) {
  ForkResult out;
  std::map<std::size_t, std::size_t> seen;  // challenge -> answer

  RefereeCallback referee = [&](std::size_t, std::size_t r, Vec& sent, Rng& rr) {
    int b = referee_win_measurement(frame.game(), frame.strategy(), r, sent, rr);
    if (b == 1) {
      std::size_t z = measure_answer_register(frame.strategy(), sent, rr);
      if (!seen.count(r)) {
        seen.emplace(r, z);
        out.records.push_back(ForkRecord{r, z});
      }
    }
    return b;
  };

  out.play = repeated_play(frame, sched, challenges, referee, initial, rng);

  // Probability-1 structural assertions from the recording procedure.
  std::map<std::size_t, int> counts;
  for (const ForkRecord& rec : out.records) {
    if (!frame.game().win(rec.challenge, rec.answer))
      throw std::logic_error("fork: recorded a non-winning transcript");
    if (++counts[rec.challenge] > 1) throw std::logic_error("fork: duplicate challenge recorded");
    bool from_input = false;
    for (std::size_t r : challenges) from_input = from_input || r == rec.challenge;
    if (!from_input) throw std::logic_error("fork: challenge outside the supplied vector");
  }
  return out;
}

}  // namespace pqk::rw
