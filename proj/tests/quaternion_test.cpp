// Copyright 2026 The qbr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qbr/quaternion.hpp"

#include <cmath>

#include "doctest.h"
#include "qbr/error.hpp"
#include "qbr/rng.hpp"
#include "support/oracle.hpp"

using namespace qbr;
using qbr::testing::ref_hamilton;

namespace {

QuaternionBatch random_batch(std::size_t k, Rng& rng, double lo = -1.0, double hi = 1.0) {
  QuaternionBatch q(k);
  for (auto* plane : {&q.re, &q.im_i, &q.im_j, &q.im_k}) {
    for (double& x : *plane) x = uniform_range(rng, lo, hi);
  }
  return q;
}

double max_abs_diff(QuatView a, QuatView b) {
  double out = 0.0;
  for (std::size_t m = 0; m < a.size(); ++m) {
    out = std::max(out, std::fabs(a.re[m] - b.re[m]));
    out = std::max(out, std::fabs(a.im_i[m] - b.im_i[m]));
    out = std::max(out, std::fabs(a.im_j[m] - b.im_j[m]));
    out = std::max(out, std::fabs(a.im_k[m] - b.im_k[m]));
  }
  return out;
}

double rel_dev(double a, double b) {
  return std::fabs(a - b) / std::max({1.0, std::fabs(a), std::fabs(b)});
}

}  // namespace

TEST_CASE("hamilton product: identity, units, fixed expansion") {
  const auto one = QuaternionBatch::single(1, 0, 0, 0);
  const auto q = QuaternionBatch::single(0.3, -1.2, 4.5, 0.7);
  CHECK(hamilton_product(one, q) == q);
  CHECK(hamilton_product(q, one) == q);

  // ij = k
  const auto i = QuaternionBatch::single(0, 1, 0, 0);
  const auto j = QuaternionBatch::single(0, 0, 1, 0);
  CHECK(hamilton_product(i, j) == QuaternionBatch::single(0, 0, 0, 1));
  // and ji = -k: the witness that the product does not commute.
  CHECK(hamilton_product(j, i) == QuaternionBatch::single(0, 0, 0, -1));

  // (1,2,3,4) ⊗ (5,6,7,8); expansion cross-checked against the basis-table
  // oracle before freezing.
  const auto p = QuaternionBatch::single(1, 2, 3, 4);
  const auto r = QuaternionBatch::single(5, 6, 7, 8);
  const auto expected = QuaternionBatch::single(-60, 12, 30, 24);
  CHECK(hamilton_product(p, r) == expected);
  CHECK(ref_hamilton(p, r) == expected);
}

TEST_CASE("hamilton product rejects mismatched component counts") {
  QuaternionBatch a(2), b(3);
  CHECK_THROWS_AS(hamilton_product(a, b), DimensionError);
  CHECK_THROWS_AS(add(a, b), DimensionError);
  CHECK_THROWS_AS(inner(a, b), DimensionError);
}

TEST_CASE("norm: fixed values") {
  CHECK(norm(QuaternionBatch::single(1, 1, 1, 1))[0] == 2.0);
  CHECK(norm(QuaternionBatch::single(0, 0, 0, 0))[0] == 0.0);
  CHECK(norm(QuaternionBatch::single(0, 3, 0, 4))[0] == 5.0);
}

TEST_CASE("normalize: unit scaling and guarded zero") {
  const auto n345 = normalize(QuaternionBatch::single(0, 3, 0, 4));
  CHECK(n345.re[0] == doctest::Approx(0.0));
  CHECK(n345.im_i[0] == doctest::Approx(0.6));
  CHECK(n345.im_j[0] == doctest::Approx(0.0));
  CHECK(n345.im_k[0] == doctest::Approx(0.8));

  CHECK(normalize(QuaternionBatch::single(2, 0, 0, 0)) ==
        QuaternionBatch::single(1, 0, 0, 0));
  // eps floor: the zero quaternion maps to itself.
  CHECK(normalize(QuaternionBatch::single(0, 0, 0, 0), 1e-12) ==
        QuaternionBatch::single(0, 0, 0, 0));
}

TEST_CASE("conjugate: sign flip and involution") {
  const auto p = QuaternionBatch::single(1, 2, 3, 4);
  CHECK(conjugate(p) == QuaternionBatch::single(1, -2, -3, -4));
  CHECK(conjugate(QuaternionBatch::single(1, 0, 0, 0)) ==
        QuaternionBatch::single(1, 0, 0, 0));
  CHECK(conjugate(conjugate(p)) == p);
}

TEST_CASE("inverse: fixed values and defining property") {
  CHECK(inverse(QuaternionBatch::single(1, 1, 1, 1)) ==
        QuaternionBatch::single(0.25, -0.25, -0.25, -0.25));

  Rng rng = make_rng(7, 0);
  const auto p = random_batch(4, rng);
  const auto unit = normalize(p);
  // For a unit quaternion the inverse is the conjugate.
  CHECK(max_abs_diff(inverse(unit), conjugate(unit)) < 1e-12);
  // p ⊗ p⁻¹ = 1
  CHECK(max_abs_diff(hamilton_product(p, inverse(p)), QuaternionBatch::identity(4)) < 1e-12);

  CHECK_THROWS_AS(inverse(QuaternionBatch::single(0, 0, 0, 0)), SingularityError);
}

TEST_CASE("add: identity and commutativity") {
  Rng rng = make_rng(8, 0);
  const auto p = random_batch(3, rng);
  const auto q = random_batch(3, rng);
  CHECK(add(p, QuaternionBatch::zeros(3)) == p);
  CHECK(add(p, q) == add(q, p));
  CHECK(add(QuaternionBatch::single(1, 1, 1, 1), QuaternionBatch::single(1, 1, 1, 1)) ==
        QuaternionBatch::single(2, 2, 2, 2));
}

TEST_CASE("inner: fixed values") {
  const auto p = QuaternionBatch::single(1, 2, 3, 4);
  CHECK(inner(p, QuaternionBatch::zeros(1)) == 0.0);
  CHECK(inner(QuaternionBatch::single(1, 0, 0, 0), QuaternionBatch::single(1, 0, 0, 0)) == 1.0);
  CHECK(inner(p, QuaternionBatch::single(5, 6, 7, 8)) == 70.0);
}

TEST_CASE("l1: fixed values and nonnegativity") {
  CHECK(l1(QuaternionBatch::zeros(1)) == 0.0);
  CHECK(l1(QuaternionBatch::single(1, -2, 3, -4)) == 10.0);
  Rng rng = make_rng(9, 0);
  for (int i = 0; i < 50; ++i) {
    CHECK(l1(random_batch(5, rng)) >= 0.0);
  }
}

TEST_CASE("algebra properties on random batches") {
  Rng rng = make_rng(2026, 0);
  const std::size_t k = 16;
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = random_batch(k, rng);
    const auto q = random_batch(k, rng);
    const auto s = random_batch(k, rng);

    // Identity with tolerance 0.
    CHECK(hamilton_product(QuaternionBatch::identity(k), q) == q);
    CHECK(hamilton_product(p, QuaternionBatch::identity(k)) == p);

    // Associativity.
    const auto left = hamilton_product(hamilton_product(p, q), s);
    const auto right = hamilton_product(p, hamilton_product(q, s));
    CHECK(max_abs_diff(left, right) < 1e-9);

    // Norm multiplicativity.
    const auto npq = norm(hamilton_product(p, q));
    const auto np = norm(p);
    const auto nq = norm(q);
    for (std::size_t m = 0; m < k; ++m) {
      CHECK(rel_dev(npq[m], np[m] * nq[m]) < 1e-9);
    }

    // Unit inverse: normalized p times its conjugate is the identity.
    const auto unit = normalize(p);
    CHECK(max_abs_diff(hamilton_product(unit, conjugate(unit)), QuaternionBatch::identity(k)) <
          1e-9);

    // Conjugation reverses the product order.
    CHECK(max_abs_diff(conjugate(hamilton_product(p, q)),
                       hamilton_product(conjugate(q), conjugate(p))) < 1e-9);

    // Against the 16-term oracle.
    CHECK(max_abs_diff(hamilton_product(p, q), ref_hamilton(p, q)) < 1e-12);
  }
}
