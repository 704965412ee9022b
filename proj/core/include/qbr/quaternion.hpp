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

#include <cstddef>
#include <span>
#include <vector>

namespace qbr {

// Norm floor used when normalizing: a quaternion whose norm falls at or
// below this is divided by the floor instead, so the zero quaternion maps
// to itself rather than NaN.
inline constexpr double kNormEps = 1e-12;

/// A bank of quaternions stored as four coordinate planes (structure of
/// arrays). Slot m across the planes is the quaternion
/// re[m] + im_i[m] i + im_j[m] j + im_k[m] k. All arithmetic below is
/// slot-wise, which is why the planes are kept separate: every kernel is a
/// straight loop over m.
struct QuaternionBatch {
  std::vector<double> re, im_i, im_j, im_k;

  QuaternionBatch() = default;
  explicit QuaternionBatch(std::size_t k) : re(k), im_i(k), im_j(k), im_k(k) {}
  QuaternionBatch(std::vector<double> re, std::vector<double> im_i,
                  std::vector<double> im_j, std::vector<double> im_k);

  // Single-slot convenience constructor: the quaternion a + bi + cj + dk.
  static QuaternionBatch single(double a, double b, double c, double d) {
    return QuaternionBatch({a}, {b}, {c}, {d});
  }
  static QuaternionBatch zeros(std::size_t k) { return QuaternionBatch(k); }
  // (1, 0, 0, 0) in every slot.
  static QuaternionBatch identity(std::size_t k);

  std::size_t size() const { return re.size(); }
  bool operator==(const QuaternionBatch&) const = default;
};

// Borrowed read-only view over quaternion planes. Embedding-table rows and
// QuaternionBatch both convert to this, so kernels run on either without
// copies.
struct QuatView {
  std::span<const double> re, im_i, im_j, im_k;

  QuatView() = default;
  QuatView(std::span<const double> re, std::span<const double> im_i,
           std::span<const double> im_j, std::span<const double> im_k)
      : re(re), im_i(im_i), im_j(im_j), im_k(im_k) {}
  QuatView(const QuaternionBatch& b)  // NOLINT: implicit by design
      : re(b.re), im_i(b.im_i), im_j(b.im_j), im_k(b.im_k) {}

  std::size_t size() const { return re.size(); }
};

// Mutable counterpart, used for in-place kernels and gradient rows.
struct QuatSpan {
  std::span<double> re, im_i, im_j, im_k;

  QuatSpan() = default;
  QuatSpan(std::span<double> re, std::span<double> im_i, std::span<double> im_j,
           std::span<double> im_k)
      : re(re), im_i(im_i), im_j(im_j), im_k(im_k) {}
  QuatSpan(QuaternionBatch& b)  // NOLINT: implicit by design
      : re(b.re), im_i(b.im_i), im_j(b.im_j), im_k(b.im_k) {}

  std::size_t size() const { return re.size(); }
  operator QuatView() const { return {re, im_i, im_j, im_k}; }
};

/// Slot-wise Hamilton product p ⊗ q. Non-commutative.
/// Throws DimensionError if the component counts differ.
QuaternionBatch hamilton_product(QuatView p, QuatView q);

/// Allocation-free form. `out` must not alias `p` or `q`.
void hamilton_product_into(QuatView p, QuatView q, QuatSpan out);

/// Slot-wise norm √(a² + b² + c² + d²). Always nonnegative.
std::vector<double> norm(QuatView p);
void norm_into(QuatView p, std::span<double> out);

/// Each slot divided by max(norm, eps); unit norm wherever norm > eps,
/// and the zero quaternion stays put.
QuaternionBatch normalize(QuatView p, double eps = kNormEps);
void normalize_into(QuatView p, double eps, QuatSpan out);

/// (a, −b, −c, −d) per slot.
QuaternionBatch conjugate(QuatView p);
void conjugate_into(QuatView p, QuatSpan out);

/// conjugate(p) / norm(p)² per slot. Throws SingularityError on a
/// zero-norm slot.
QuaternionBatch inverse(QuatView p);

/// Slot-wise sum. Throws DimensionError on length mismatch.
QuaternionBatch add(QuatView p, QuatView q);

/// Slot-wise difference.
QuaternionBatch sub(QuatView p, QuatView q);
void sub_into(QuatView p, QuatView q, QuatSpan out);

/// Full-coordinate inner product: Σ over all four planes of the
/// element-wise products, reduced to one scalar.
double inner(QuatView p, QuatView q);

/// ℓ₁ norm over all 4k coordinates.
double l1(QuatView p);

/// True when every coordinate of every plane is finite.
bool all_finite(QuatView p);

}  // namespace qbr
