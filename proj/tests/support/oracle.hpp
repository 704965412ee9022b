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

#pragma once

// Test-only reference implementations, deliberately independent of the
// library kernels: quaternion products come from the 16-term basis table
// (Hamilton's rules), scores from scalar per-slot loops, and ranks from an
// exhaustive sort. Everything here trades speed for obviousness.

#include <array>
#include <cstdint>
#include <vector>

#include "qbr/dataset.hpp"
#include "qbr/evaluator.hpp"
#include "qbr/model.hpp"
#include "qbr/quaternion.hpp"

namespace qbr::testing {

struct RefQuat {
  std::array<double, 4> c{0.0, 0.0, 0.0, 0.0};  // coefficients of 1, i, j, k

  static RefQuat from_batch(QuatView q, std::size_t slot) {
    return {{q.re[slot], q.im_i[slot], q.im_j[slot], q.im_k[slot]}};
  }
};

// 16-term expansion over the basis product table e_a · e_b = sign · e_idx.
RefQuat ref_mul(const RefQuat& p, const RefQuat& q);
RefQuat ref_conj(const RefQuat& p);
RefQuat ref_add(const RefQuat& p, const RefQuat& q);
RefQuat ref_sub(const RefQuat& p, const RefQuat& q);
double ref_norm(const RefQuat& p);
RefQuat ref_scale(const RefQuat& p, double s);
RefQuat ref_normalize(const RefQuat& p, double eps = kNormEps);
double ref_dot(const RefQuat& p, const RefQuat& q);
double ref_l1(const RefQuat& p);

// Slot-wise batch product via the table; same shape contract as the
// library kernel.
QuaternionBatch ref_hamilton(QuatView p, QuatView q);

// Scalar-loop model scores over raw quaternion banks.
double ref_semantic(QuatView h, QuatView r, QuatView t, ModelVariant variant);
double ref_distance(QuatView h, QuatView rd, QuatView t);
double ref_score(const ModelParams& params, EntityId h, RelationId r, EntityId t,
                 ModelVariant variant);

// Exhaustive sort-based filtered rank: sort every unfiltered candidate by
// descending score, locate the answer's tie block [lo, hi), and return
// lo + 1 + (hi - lo - 1) / 2.
std::int64_t ref_filtered_rank(const std::vector<double>& candidate_scores, EntityId answer,
                               const std::vector<EntityId>& known_true);

struct RefMetrics {
  double mr = 0.0, mrr = 0.0, hits1 = 0.0, hits3 = 0.0, hits10 = 0.0;
  std::size_t num_queries = 0;
};

// MR / MRR / Hits@n from a flat rank list.
RefMetrics ref_metrics(const std::vector<std::int64_t>& ranks);

// Flat addressing of every learned scalar, for finite differencing:
// [entity table | rotation table | distance table | λ].
struct ParamCoord {
  enum Block { entities = 0, rotations = 1, distances = 2, lambda = 3 };
  Block block = entities;
  std::size_t row = 0;    // table row (meaningless for λ)
  std::size_t plane = 0;  // 0 re, 1 i, 2 j, 3 k
  std::size_t slot = 0;
};

std::size_t coord_count(const ModelParams& params);
double get_coord(const ModelParams& params, std::size_t index);
void set_coord(ModelParams& params, std::size_t index, double value);
ParamCoord describe_coord(const ModelParams& params, std::size_t index);

// Central finite difference of `f` in the given coordinate.
template <typename F>
double central_difference(ModelParams& params, std::size_t index, double step, F&& f) {
  const double saved = get_coord(params, index);
  set_coord(params, index, saved + step);
  const double up = f(params);
  set_coord(params, index, saved - step);
  const double down = f(params);
  set_coord(params, index, saved);
  return (up - down) / (2.0 * step);
}

}  // namespace qbr::testing
