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

#include <cstdint>
#include <span>
#include <vector>

#include "qbr/dataset.hpp"
#include "qbr/quaternion.hpp"
#include "qbr/rng.hpp"

namespace qbr {

// full:       inner(h ⊗ r⁰, t ⊗ conj(r⁰)) + λ·‖h + r_d − t‖₁
// variant_i:  tail rotation removed, distance term kept
// variant_ii: distance term removed (pure semantic matching)
enum class ModelVariant { full, variant_i, variant_ii };

const char* variant_name(ModelVariant v);

/// Dense bank of quaternion embeddings. Row layout is the checkpoint
/// layout: [re × k | i × k | j × k | k × k], row stride 4k.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  EmbeddingTable(std::size_t rows, std::size_t k)
      : rows_(rows), k_(k), data_(rows * 4 * k, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t k() const { return k_; }
  std::size_t row_stride() const { return 4 * k_; }

  QuatView row(std::size_t id) const {
    const double* p = data_.data() + id * row_stride();
    return {{p, k_}, {p + k_, k_}, {p + 2 * k_, k_}, {p + 3 * k_, k_}};
  }
  QuatSpan mutable_row(std::size_t id) {
    double* p = data_.data() + id * row_stride();
    return {{p, k_}, {p + k_, k_}, {p + 2 * k_, k_}, {p + 3 * k_, k_}};
  }

  std::span<const double> flat() const { return data_; }
  std::span<double> flat() { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t k_ = 0;
  std::vector<double> data_;
};

/// Every learned scalar of the model: one quaternion embedding per entity,
/// two per relation (rotation and translation), and the fusion weight λ.
struct ModelParams {
  EmbeddingTable entities;
  EmbeddingTable rotations;
  EmbeddingTable distances;
  double lambda = 0.0;

  std::size_t num_entities() const { return entities.rows(); }
  std::size_t num_relations() const { return rotations.rows(); }
  std::size_t k() const { return entities.k(); }
  std::size_t dim() const { return 4 * k(); }

  // |E|·n + 2·|R|·n + 1 with n = 4k.
  std::uint64_t parameter_count() const;
};

/// Coordinates drawn uniformly from [−1/√n, 1/√n] with n = 4k; λ starts
/// at 0 so the distance channel is gated open by the data. Draw order is
/// fixed (entities, rotations, distances; row-major, plane order), so a
/// seed pins the tables bit-for-bit.
ModelParams init_params(std::size_t num_entities, std::size_t num_relations,
                        std::size_t k, Rng& rng);

/// The bidirectional-rotation score on raw quaternions:
/// inner(h ⊗ r⁰, t ⊗ conj(r⁰)) with r⁰ = normalize(r, eps).
double bidirectional_score(QuatView h, QuatView r, QuatView t, double eps = kNormEps);

double score_semantic(const ModelParams& params, EntityId h, RelationId r, EntityId t,
                      ModelVariant variant);

/// ‖h + r_d − t‖₁ over all 4k coordinates.
double score_distance(const ModelParams& params, EntityId h, RelationId r, EntityId t);

/// Fused plausibility: semantic + λ·distance (variant_ii: semantic only).
double score(const ModelParams& params, EntityId h, RelationId r, EntityId t,
             ModelVariant variant);

/// d(score)/d(row) for the four touched rows plus d(score)/dλ. The ℓ₁
/// subgradient at a zero coordinate is 0, and the gradient through the
/// relation is taken through the normalization (quotient rule), not with
/// r⁰ held constant.
struct ScoreGradients {
  QuaternionBatch head;
  QuaternionBatch tail;
  QuaternionBatch rotation;
  QuaternionBatch distance;
  double lambda = 0.0;
};

ScoreGradients grad_score(const ModelParams& params, EntityId h, RelationId r, EntityId t,
                          ModelVariant variant);

namespace detail {

// Reusable buffers for the score/gradient kernels so the training loop
// does not allocate per triple.
struct ScoreWorkspace {
  QuaternionBatch r_unit;    // r⁰
  QuaternionBatch r_conj;    // conj(r⁰)
  QuaternionBatch head_rot;  // h ⊗ r⁰
  QuaternionBatch tail_rot;  // t ⊗ conj(r⁰) (full / variant_ii)
  QuaternionBatch scratch;
  QuaternionBatch scratch2;
  QuaternionBatch scratch3;
  std::vector<double> r_norm;     // pre-normalization slot norms
  std::vector<double> diff_sign;  // sign(h + r_d − t), plane-packed [re|i|j|k]
  double semantic = 0.0;
  double distance = 0.0;

  void resize(std::size_t k);
};

// Fused score with forward state retained for backward().
double forward(const ModelParams& params, EntityId h, RelationId r, EntityId t,
               ModelVariant variant, ScoreWorkspace& ws);

// Accumulates scale × d(score)/d(block) into the provided rows. Requires a
// preceding forward() on the same triple (the relation state lives in the
// workspace). Head and tail spans may alias (self-loop triples accumulate
// both contributions).
void backward(const ModelParams& params, EntityId h, EntityId t, ModelVariant variant,
              ScoreWorkspace& ws, double scale, QuatSpan head_grad, QuatSpan tail_grad,
              QuatSpan rot_grad, QuatSpan dist_grad, double& lambda_grad);

}  // namespace detail

}  // namespace qbr
