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

#include "support/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace qbr::testing {

namespace {

// Basis products under i² = j² = k² = ijk = −1, with e0=1, e1=i, e2=j, e3=k:
// e_a · e_b = kSign[a][b] · e_{kIndex[a][b]}.
constexpr int kIndex[4][4] = {
    {0, 1, 2, 3},
    {1, 0, 3, 2},
    {2, 3, 0, 1},
    {3, 2, 1, 0},
};
constexpr double kSign[4][4] = {
    {1, 1, 1, 1},
    {1, -1, 1, -1},
    {1, -1, -1, 1},
    {1, 1, -1, -1},
};

}  // namespace

RefQuat ref_mul(const RefQuat& p, const RefQuat& q) {
  RefQuat out;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      out.c[kIndex[a][b]] += kSign[a][b] * p.c[a] * q.c[b];
    }
  }
  return out;
}

RefQuat ref_conj(const RefQuat& p) { return {{p.c[0], -p.c[1], -p.c[2], -p.c[3]}}; }

RefQuat ref_add(const RefQuat& p, const RefQuat& q) {
  return {{p.c[0] + q.c[0], p.c[1] + q.c[1], p.c[2] + q.c[2], p.c[3] + q.c[3]}};
}

RefQuat ref_sub(const RefQuat& p, const RefQuat& q) {
  return {{p.c[0] - q.c[0], p.c[1] - q.c[1], p.c[2] - q.c[2], p.c[3] - q.c[3]}};
}

double ref_norm(const RefQuat& p) {
  return std::sqrt(p.c[0] * p.c[0] + p.c[1] * p.c[1] + p.c[2] * p.c[2] + p.c[3] * p.c[3]);
}

RefQuat ref_scale(const RefQuat& p, double s) {
  return {{p.c[0] * s, p.c[1] * s, p.c[2] * s, p.c[3] * s}};
}

RefQuat ref_normalize(const RefQuat& p, double eps) {
  return ref_scale(p, 1.0 / std::max(ref_norm(p), eps));
}

double ref_dot(const RefQuat& p, const RefQuat& q) {
  return p.c[0] * q.c[0] + p.c[1] * q.c[1] + p.c[2] * q.c[2] + p.c[3] * q.c[3];
}

double ref_l1(const RefQuat& p) {
  return std::fabs(p.c[0]) + std::fabs(p.c[1]) + std::fabs(p.c[2]) + std::fabs(p.c[3]);
}

QuaternionBatch ref_hamilton(QuatView p, QuatView q) {
  QuaternionBatch out(p.size());
  for (std::size_t m = 0; m < p.size(); ++m) {
    const RefQuat r = ref_mul(RefQuat::from_batch(p, m), RefQuat::from_batch(q, m));
    out.re[m] = r.c[0];
    out.im_i[m] = r.c[1];
    out.im_j[m] = r.c[2];
    out.im_k[m] = r.c[3];
  }
  return out;
}

double ref_semantic(QuatView h, QuatView r, QuatView t, ModelVariant variant) {
  double acc = 0.0;
  for (std::size_t m = 0; m < h.size(); ++m) {
    const RefQuat rn = ref_normalize(RefQuat::from_batch(r, m));
    const RefQuat lhs = ref_mul(RefQuat::from_batch(h, m), rn);
    const RefQuat rhs = variant == ModelVariant::variant_i
                            ? RefQuat::from_batch(t, m)
                            : ref_mul(RefQuat::from_batch(t, m), ref_conj(rn));
    acc += ref_dot(lhs, rhs);
  }
  return acc;
}

double ref_distance(QuatView h, QuatView rd, QuatView t) {
  double acc = 0.0;
  for (std::size_t m = 0; m < h.size(); ++m) {
    acc += ref_l1(ref_sub(ref_add(RefQuat::from_batch(h, m), RefQuat::from_batch(rd, m)),
                          RefQuat::from_batch(t, m)));
  }
  return acc;
}

double ref_score(const ModelParams& params, EntityId h, RelationId r, EntityId t,
                 ModelVariant variant) {
  const QuatView h_row = params.entities.row(static_cast<std::size_t>(h));
  const QuatView r_row = params.rotations.row(static_cast<std::size_t>(r));
  const QuatView t_row = params.entities.row(static_cast<std::size_t>(t));
  const double sem = ref_semantic(h_row, r_row, t_row, variant);
  if (variant == ModelVariant::variant_ii) return sem;
  const QuatView rd_row = params.distances.row(static_cast<std::size_t>(r));
  return sem + params.lambda * ref_distance(h_row, rd_row, t_row);
}

std::int64_t ref_filtered_rank(const std::vector<double>& candidate_scores, EntityId answer,
                               const std::vector<EntityId>& known_true) {
  std::vector<std::pair<double, EntityId>> pool;
  pool.reserve(candidate_scores.size());
  for (std::size_t c = 0; c < candidate_scores.size(); ++c) {
    const auto cid = static_cast<EntityId>(c);
    if (cid != answer &&
        std::find(known_true.begin(), known_true.end(), cid) != known_true.end()) {
      continue;
    }
    pool.emplace_back(candidate_scores[c], cid);
  }
  std::sort(pool.begin(), pool.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  const double answer_score = candidate_scores[static_cast<std::size_t>(answer)];
  std::size_t lo = 0;
  while (pool[lo].first > answer_score) ++lo;
  std::size_t hi = lo;
  while (hi < pool.size() && pool[hi].first == answer_score) ++hi;
  return static_cast<std::int64_t>(lo) + 1 + static_cast<std::int64_t>(hi - lo - 1) / 2;
}

std::size_t coord_count(const ModelParams& params) {
  return params.entities.flat().size() + params.rotations.flat().size() +
         params.distances.flat().size() + 1;
}

namespace {

// Returns {block, offset within block}.
std::pair<ParamCoord::Block, std::size_t> locate(const ModelParams& params,
                                                 std::size_t index) {
  const std::size_t e = params.entities.flat().size();
  const std::size_t r = params.rotations.flat().size();
  const std::size_t d = params.distances.flat().size();
  if (index < e) return {ParamCoord::entities, index};
  index -= e;
  if (index < r) return {ParamCoord::rotations, index};
  index -= r;
  if (index < d) return {ParamCoord::distances, index};
  return {ParamCoord::lambda, 0};
}

}  // namespace

double get_coord(const ModelParams& params, std::size_t index) {
  const auto [block, offset] = locate(params, index);
  switch (block) {
    case ParamCoord::entities: return params.entities.flat()[offset];
    case ParamCoord::rotations: return params.rotations.flat()[offset];
    case ParamCoord::distances: return params.distances.flat()[offset];
    case ParamCoord::lambda: return params.lambda;
  }
  return 0.0;
}

void set_coord(ModelParams& params, std::size_t index, double value) {
  const auto [block, offset] = locate(params, index);
  switch (block) {
    case ParamCoord::entities: params.entities.flat()[offset] = value; return;
    case ParamCoord::rotations: params.rotations.flat()[offset] = value; return;
    case ParamCoord::distances: params.distances.flat()[offset] = value; return;
    case ParamCoord::lambda: params.lambda = value; return;
  }
}

ParamCoord describe_coord(const ModelParams& params, std::size_t index) {
  const auto [block, offset] = locate(params, index);
  ParamCoord coord;
  coord.block = block;
  if (block == ParamCoord::lambda) return coord;
  const std::size_t k = params.k();
  coord.row = offset / (4 * k);
  coord.plane = (offset % (4 * k)) / k;
  coord.slot = offset % k;
  return coord;
}

RefMetrics ref_metrics(const std::vector<std::int64_t>& ranks) {
  RefMetrics m;
  m.num_queries = ranks.size();
  if (ranks.empty()) return m;
  double rank_sum = 0.0, mrr_sum = 0.0;
  std::size_t at1 = 0, at3 = 0, at10 = 0;
  for (const auto rank : ranks) {
    rank_sum += static_cast<double>(rank);
    mrr_sum += 1.0 / static_cast<double>(rank);
    if (rank <= 1) ++at1;
    if (rank <= 3) ++at3;
    if (rank <= 10) ++at10;
  }
  const auto n = static_cast<double>(ranks.size());
  m.mr = rank_sum / n;
  m.mrr = mrr_sum / n;
  m.hits1 = static_cast<double>(at1) / n;
  m.hits3 = static_cast<double>(at3) / n;
  m.hits10 = static_cast<double>(at10) / n;
  return m;
}

}  // namespace qbr::testing
