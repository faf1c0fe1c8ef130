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

// Regenerates the CSP corpus under data/csp. Deterministic: fixed seeds,
// gaps measured by exhaustive search before writing.

#include <filesystem>
#include <iostream>

#include "pqkilian/pcp/csp.hpp"

using namespace pqk;
using namespace pqk::pcp;

namespace {

CSPInstance complete_triple_nae(std::uint32_t num_vars) {
  CSPInstance x;
  x.num_vars = num_vars;
  x.alphabet_size = 2;
  std::vector<std::vector<std::uint32_t>> nae;
  for (std::uint32_t t = 1; t < 7; t++) nae.push_back({t & 1u, (t >> 1) & 1u, (t >> 2) & 1u});
  for (std::uint32_t a = 1; a <= num_vars; a++)
    for (std::uint32_t b = a + 1; b <= num_vars; b++)
      for (std::uint32_t c = b + 1; c <= num_vars; c++) x.constraints.push_back(Constraint{{a, b, c}, nae});
  bool sat = false;
  x.gap = measure_gap_exhaustive(x, &sat);
  if (sat) throw std::runtime_error("complete triple instance unexpectedly satisfiable");
  x.validate();
  return x;
}

}  // namespace

int main(int argc, char** argv) {
  std::string out = argc > 1 ? argv[1] : "data/csp";
  std::filesystem::create_directories(out);

  {
    Rng rng(101);
    CSPInstance x = gen_planted_coloring(10, 3, 16, rng);
    save_csp(x, out + "/planted_coloring_10v16e.json");
  }
  {
    Rng rng(202);
    CSPInstance x = gen_planted_coloring(16, 3, 32, rng);
    save_csp(x, out + "/planted_coloring_16v32e.json");
  }
  {
    CSPInstance x = complete_triple_nae(8);
    save_csp(x, out + "/unsat_nae_complete8.json");
    std::cout << "complete-triple gap: " << x.gap << "\n";
  }
  {
    Rng rng(303);
    CSPInstance x = gen_unsat_nae(8, 24, 0.05, rng);
    save_csp(x, out + "/unsat_nae_8v24c.json");
    std::cout << "random unsat gap: " << x.gap << "\n";
  }
  std::cout << "corpus written to " << out << "\n";
  return 0;
}
