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

#include "qbr/model.hpp"

#include <cmath>

namespace qbr {

const char* variant_name(ModelVariant v) {
  switch (v) {
    case ModelVariant::full: return "full";
    case ModelVariant::variant_i: return "variant_i";
    case ModelVariant::variant_ii: return "variant_ii";
  }
  return "?";
}

std::uint64_t ModelParams::parameter_count() const {
  const std::uint64_t n = dim();
  return num_entities() * n + 2 * num_relations() * n + 1;
}

ModelParams init_params(std::size_t num_entities, std::size_t num_relations,
                        std::size_t k, Rng& rng) {
  ModelParams params;
  params.entities = EmbeddingTable(num_entities, k);
  params.rotations = EmbeddingTable(num_relations, k);
  params.distances = EmbeddingTable(num_relations, k);
  params.lambda = 0.0;
  const double bound = 1.0 / std::sqrt(static_cast<double>(4 * k));
  for (auto* table : {&params.entities, &params.rotations, &params.distances}) {
    for (double& x : table->flat()) x = uniform_range(rng, -bound, bound);
  }
  return params;
}

double bidirectional_score(QuatView h, QuatView r, QuatView t, double eps) {
  const QuaternionBatch r_unit = normalize(r, eps);
  const QuaternionBatch head_rot = hamilton_product(h, r_unit);
  const QuaternionBatch tail_rot = hamilton_product(t, conjugate(r_unit));
  return inner(head_rot, tail_rot);
}

double score_semantic(const ModelParams& params, EntityId h, RelationId r, EntityId t,
                      ModelVariant variant) {
  const QuatView h_row = params.entities.row(static_cast<std::size_t>(h));
  const QuatView r_row = params.rotations.row(static_cast<std::size_t>(r));
  const QuatView t_row = params.entities.row(static_cast<std::size_t>(t));
  if (variant == ModelVariant::variant_i) {
    return inner(hamilton_product(h_row, normalize(r_row)), t_row);
  }
  return bidirectional_score(h_row, r_row, t_row);
}

double score_distance(const ModelParams& params, EntityId h, RelationId r, EntityId t) {
  const QuatView h_row = params.entities.row(static_cast<std::size_t>(h));
  const QuatView rd_row = params.distances.row(static_cast<std::size_t>(r));
  const QuatView t_row = params.entities.row(static_cast<std::size_t>(t));
  const std::size_t k = params.k();
  double acc = 0.0;
  for (std::size_t m = 0; m < k; ++m) {
    acc += std::fabs(h_row.re[m] + rd_row.re[m] - t_row.re[m]) +
           std::fabs(h_row.im_i[m] + rd_row.im_i[m] - t_row.im_i[m]) +
           std::fabs(h_row.im_j[m] + rd_row.im_j[m] - t_row.im_j[m]) +
           std::fabs(h_row.im_k[m] + rd_row.im_k[m] - t_row.im_k[m]);
  }
  return acc;
}

double score(const ModelParams& params, EntityId h, RelationId r, EntityId t,
             ModelVariant variant) {
  const double s = score_semantic(params, h, r, t, variant);
  if (variant == ModelVariant::variant_ii) return s;
  return s + params.lambda * score_distance(params, h, r, t);
}

ScoreGradients grad_score(const ModelParams& params, EntityId h, RelationId r, EntityId t,
                          ModelVariant variant) {
  const std::size_t k = params.k();
  ScoreGradients grads{QuaternionBatch(k), QuaternionBatch(k), QuaternionBatch(k),
                       QuaternionBatch(k), 0.0};
  detail::ScoreWorkspace ws;
  ws.resize(k);
  detail::forward(params, h, r, t, variant, ws);
  detail::backward(params, h, t, variant, ws, 1.0, grads.head, grads.tail, grads.rotation,
                   grads.distance, grads.lambda);
  return grads;
}

namespace detail {

namespace {

constexpr double sign0(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

void accumulate(QuatSpan dst, QuatView src, double scale) {
  const std::size_t k = dst.size();
  for (std::size_t m = 0; m < k; ++m) {
    dst.re[m] += scale * src.re[m];
    dst.im_i[m] += scale * src.im_i[m];
    dst.im_j[m] += scale * src.im_j[m];
    dst.im_k[m] += scale * src.im_k[m];
  }
}

}  // namespace

void ScoreWorkspace::resize(std::size_t k) {
  for (auto* b : {&r_unit, &r_conj, &head_rot, &tail_rot, &scratch, &scratch2, &scratch3}) {
    if (b->size() != k) *b = QuaternionBatch(k);
  }
  r_norm.assign(k, 0.0);
  diff_sign.assign(4 * k, 0.0);
}

double forward(const ModelParams& params, EntityId h, RelationId r, EntityId t,
               ModelVariant variant, ScoreWorkspace& ws) {
  const std::size_t k = params.k();
  const QuatView h_row = params.entities.row(static_cast<std::size_t>(h));
  const QuatView r_row = params.rotations.row(static_cast<std::size_t>(r));
  const QuatView t_row = params.entities.row(static_cast<std::size_t>(t));

  norm_into(r_row, ws.r_norm);
  normalize_into(r_row, kNormEps, ws.r_unit);
  conjugate_into(ws.r_unit, ws.r_conj);
  hamilton_product_into(h_row, ws.r_unit, ws.head_rot);
  if (variant == ModelVariant::variant_i) {
    ws.semantic = inner(ws.head_rot, t_row);
  } else {
    hamilton_product_into(t_row, ws.r_conj, ws.tail_rot);
    ws.semantic = inner(ws.head_rot, ws.tail_rot);
  }

  if (variant == ModelVariant::variant_ii) {
    ws.distance = 0.0;
    return ws.semantic;
  }

  const QuatView rd_row = params.distances.row(static_cast<std::size_t>(r));
  double dist = 0.0;
  for (std::size_t m = 0; m < k; ++m) {
    const double d0 = h_row.re[m] + rd_row.re[m] - t_row.re[m];
    const double d1 = h_row.im_i[m] + rd_row.im_i[m] - t_row.im_i[m];
    const double d2 = h_row.im_j[m] + rd_row.im_j[m] - t_row.im_j[m];
    const double d3 = h_row.im_k[m] + rd_row.im_k[m] - t_row.im_k[m];
    dist += std::fabs(d0) + std::fabs(d1) + std::fabs(d2) + std::fabs(d3);
    ws.diff_sign[m] = sign0(d0);
    ws.diff_sign[k + m] = sign0(d1);
    ws.diff_sign[2 * k + m] = sign0(d2);
    ws.diff_sign[3 * k + m] = sign0(d3);
  }
  ws.distance = dist;
  return ws.semantic + params.lambda * dist;
}

// The semantic part uses the adjoint identities of the Hamilton product
// under the full-coordinate inner product:
//   <p ⊗ q, s> = <p, s ⊗ conj(q)> = <q, conj(p) ⊗ s>.
// With h' = h ⊗ r⁰ and t' = t ⊗ conj(r⁰) this gives
//   d/dh  = t' ⊗ conj(r⁰)          d/dt  = h' ⊗ r⁰
//   d/dr⁰ = conj(h) ⊗ t' + conj(h') ⊗ t
// and d/dr follows from the quotient rule of r⁰ = r / max(‖r‖, eps),
// which per slot is the projection (g − <g, r⁰> r⁰) / ‖r‖.
void backward(const ModelParams& params, EntityId h, EntityId t, ModelVariant variant,
              ScoreWorkspace& ws, double scale, QuatSpan head_grad, QuatSpan tail_grad,
              QuatSpan rot_grad, QuatSpan dist_grad, double& lambda_grad) {
  const std::size_t k = params.k();
  const QuatView h_row = params.entities.row(static_cast<std::size_t>(h));
  const QuatView t_row = params.entities.row(static_cast<std::size_t>(t));

  QuaternionBatch& s1 = ws.scratch;
  QuaternionBatch& s2 = ws.scratch2;
  QuaternionBatch& s3 = ws.scratch3;

  if (variant == ModelVariant::variant_i) {
    hamilton_product_into(t_row, ws.r_conj, s1);
    accumulate(head_grad, s1, scale);
    accumulate(tail_grad, ws.head_rot, scale);
    conjugate_into(h_row, s1);
    hamilton_product_into(s1, t_row, s2);
  } else {
    hamilton_product_into(ws.tail_rot, ws.r_conj, s1);
    accumulate(head_grad, s1, scale);
    hamilton_product_into(ws.head_rot, ws.r_unit, s1);
    accumulate(tail_grad, s1, scale);
    // d/dr⁰ = conj(h) ⊗ t' + conj(h') ⊗ t, assembled in s2.
    conjugate_into(h_row, s1);
    hamilton_product_into(s1, ws.tail_rot, s2);
    conjugate_into(ws.head_rot, s1);
    hamilton_product_into(s1, t_row, s3);
    for (std::size_t m = 0; m < k; ++m) {
      s2.re[m] += s3.re[m];
      s2.im_i[m] += s3.im_i[m];
      s2.im_j[m] += s3.im_j[m];
      s2.im_k[m] += s3.im_k[m];
    }
  }

  // Normalization Jacobian, slot by slot.
  for (std::size_t m = 0; m < k; ++m) {
    const double g0 = s2.re[m], g1 = s2.im_i[m], g2 = s2.im_j[m], g3 = s2.im_k[m];
    const double u0 = ws.r_unit.re[m], u1 = ws.r_unit.im_i[m], u2 = ws.r_unit.im_j[m],
                 u3 = ws.r_unit.im_k[m];
    const double n = ws.r_norm[m];
    if (n > kNormEps) {
      const double dot = g0 * u0 + g1 * u1 + g2 * u2 + g3 * u3;
      const double inv = scale / n;
      rot_grad.re[m] += (g0 - dot * u0) * inv;
      rot_grad.im_i[m] += (g1 - dot * u1) * inv;
      rot_grad.im_j[m] += (g2 - dot * u2) * inv;
      rot_grad.im_k[m] += (g3 - dot * u3) * inv;
    } else {
      // Below the floor, r⁰ = r / eps and the Jacobian is I / eps.
      const double inv = scale / kNormEps;
      rot_grad.re[m] += g0 * inv;
      rot_grad.im_i[m] += g1 * inv;
      rot_grad.im_j[m] += g2 * inv;
      rot_grad.im_k[m] += g3 * inv;
    }
  }

  if (variant == ModelVariant::variant_ii) return;

  const double lam = params.lambda;
  for (std::size_t m = 0; m < k; ++m) {
    const double s0 = ws.diff_sign[m];
    const double si = ws.diff_sign[k + m];
    const double sj = ws.diff_sign[2 * k + m];
    const double sk = ws.diff_sign[3 * k + m];
    head_grad.re[m] += scale * lam * s0;
    head_grad.im_i[m] += scale * lam * si;
    head_grad.im_j[m] += scale * lam * sj;
    head_grad.im_k[m] += scale * lam * sk;
    tail_grad.re[m] -= scale * lam * s0;
    tail_grad.im_i[m] -= scale * lam * si;
    tail_grad.im_j[m] -= scale * lam * sj;
    tail_grad.im_k[m] -= scale * lam * sk;
    dist_grad.re[m] += scale * lam * s0;
    dist_grad.im_i[m] += scale * lam * si;
    dist_grad.im_j[m] += scale * lam * sj;
    dist_grad.im_k[m] += scale * lam * sk;
  }
  lambda_grad += scale * ws.distance;
}

}  // namespace detail

}  // namespace qbr
