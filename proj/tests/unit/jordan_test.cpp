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

#include <set>

#include "pqkilian/common/rng.hpp"
#include "pqkilian/quantum/jordan.hpp"

using namespace pqk;
using namespace pqk::qs;

namespace {

Mat random_projector(std::size_t dim, std::size_t rank, Rng& rng) {
  Mat g(dim, dim);
  for (Eigen::Index i = 0; i < g.rows(); i++)
    for (Eigen::Index j = 0; j < g.cols(); j++)
      g(i, j) = Complex(rng.next_double() - 0.5, rng.next_double() - 0.5);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  Mat basis = q.leftCols(static_cast<Eigen::Index>(rank));
  return basis * basis.adjoint();
}

void check_block_invariants(const JordanDecomposition& jd, const Mat& pa, const Mat& pb, double tol) {
  std::size_t n = static_cast<std::size_t>(pa.rows());
  Mat total = Mat::Zero(pa.rows(), pa.cols());
  for (const JordanBlock& b : jd.blocks) {
    Mat pj = b.projector(n);
    total += pj;
    REQUIRE((pj * pa - pa * pj).norm() <= tol);
    REQUIRE((pj * pb - pb * pj).norm() <= tol);
    if (b.dim == 2) {
      REQUIRE((pa * (*b.v1) - (*b.v1)).norm() <= tol);
      REQUIRE((pa * (*b.v0)).norm() <= tol);
      REQUIRE((pb * (*b.w1) - (*b.w1)).norm() <= tol);
      REQUIRE((pb * (*b.w0)).norm() <= tol);
      REQUIRE(std::abs(std::norm(b.v1->dot(*b.w1)) - b.p) <= tol);
      // Phase convention, both directions.
      Vec lhs = *b.v1 - (std::sqrt(b.p) * (*b.w1) + std::sqrt(1 - b.p) * (*b.w0));
      REQUIRE(lhs.norm() <= tol);
      Vec rhs = *b.w1 - (std::sqrt(b.p) * (*b.v1) + std::sqrt(1 - b.p) * (*b.v0));
      REQUIRE(rhs.norm() <= tol);
    }
  }
  REQUIRE((total - Mat::Identity(pa.rows(), pa.cols())).norm() <= tol);
}

}  // namespace

TEST_CASE("equal projectors decompose into one-dimensional blocks") {
  Rng rng(1);
  Mat p = random_projector(8, 3, rng);
  JordanDecomposition jd = jordan_decompose(p, p);
  for (const JordanBlock& b : jd.blocks) {
    REQUIRE(b.dim == 1);
    REQUIRE((b.p == 1.0 || b.p == 0.0));
  }
  // Pa acting as identity on its image while Pb acts as identity: p = 1
  // on rank many blocks; the rest of the space has both acting as zero,
  // which the labeling convention also calls p = 1.
  for (const JordanBlock& b : jd.blocks) REQUIRE(b.p == 1.0);
  check_block_invariants(jd, p, p, 1e-8);
}

TEST_CASE("the 2d textbook pair has a single block at p = 1/2") {
  Mat pa = Mat::Zero(2, 2), pb = Mat::Zero(2, 2);
  pa(0, 0) = 1.0;
  Vec plus(2);
  plus << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
  pb = plus * plus.adjoint();
  JordanDecomposition jd = jordan_decompose(pa, pb);
  REQUIRE(jd.blocks.size() == 1);
  REQUIRE(jd.blocks[0].dim == 2);
  REQUIRE(jd.blocks[0].p == Catch::Approx(0.5).margin(1e-12));
  check_block_invariants(jd, pa, pb, 1e-8);
}

TEST_CASE("random projector pairs reconstruct the identity") {
  Rng rng(2);
  for (int trial = 0; trial < 10; trial++) {
    std::size_t dim = 16;
    std::size_t ra = 1 + rng.below(dim - 1), rb = 1 + rng.below(dim - 1);
    Mat pa = random_projector(dim, ra, rng);
    Mat pb = random_projector(dim, rb, rng);
    JordanDecomposition jd = jordan_decompose(pa, pb);
    check_block_invariants(jd, pa, pb, 1e-8);
    std::size_t covered = 0;
    for (const JordanBlock& b : jd.blocks) covered += static_cast<std::size_t>(b.dim);
    REQUIRE(covered == dim);
    for (const JordanBlock& b : jd.blocks) {
      REQUIRE(b.p >= 0.0);
      REQUIRE(b.p <= 1.0);
    }
  }
}

TEST_CASE("orthogonal projectors: every block is one-dimensional with p = 0 or both-zero p = 1") {
  Mat pa = Mat::Zero(4, 4), pb = Mat::Zero(4, 4);
  pa(0, 0) = 1.0;
  pb(1, 1) = 1.0;
  JordanDecomposition jd = jordan_decompose(pa, pb);
  std::size_t p0 = 0, p1 = 0;
  for (const JordanBlock& b : jd.blocks) {
    REQUIRE(b.dim == 1);
    if (b.p == 0.0) p0++;
    if (b.p == 1.0) p1++;
  }
  REQUIRE(p0 == 2);  // (A-id, B-zero) and (A-zero, B-id)
  REQUIRE(p1 == 2);  // both act as zero on the remaining directions
  check_block_invariants(jd, pa, pb, 1e-8);
}

TEST_CASE("broken inputs are rejected") {
  Mat notproj = Mat::Identity(3, 3) * 0.5;
  Mat ok = Mat::Identity(3, 3);
  REQUIRE_THROWS_AS(jordan_decompose(notproj, ok), JordanError);
  Mat small = Mat::Identity(2, 2), big = Mat::Identity(3, 3);
  REQUIRE_THROWS_AS(jordan_decompose(small, big), std::invalid_argument);
}
