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
#include <string>

#include "qbr/error.hpp"

namespace qbr {

namespace {

void require_same_size(QuatView p, QuatView q, const char* op) {
  if (p.size() != q.size()) {
    throw DimensionError(std::string(op) + ": component counts differ (" +
                         std::to_string(p.size()) + " vs " +
                         std::to_string(q.size()) + ")");
  }
}

}  // namespace

QuaternionBatch::QuaternionBatch(std::vector<double> re, std::vector<double> im_i,
                                 std::vector<double> im_j, std::vector<double> im_k)
    : re(std::move(re)), im_i(std::move(im_i)), im_j(std::move(im_j)), im_k(std::move(im_k)) {
  if (this->im_i.size() != this->re.size() || this->im_j.size() != this->re.size() ||
      this->im_k.size() != this->re.size()) {
    throw DimensionError("QuaternionBatch: the four planes must have equal length");
  }
}

QuaternionBatch QuaternionBatch::identity(std::size_t k) {
  QuaternionBatch q(k);
  for (std::size_t m = 0; m < k; ++m) q.re[m] = 1.0;
  return q;
}

void hamilton_product_into(QuatView p, QuatView q, QuatSpan out) {
  require_same_size(p, q, "hamilton_product");
  const std::size_t k = p.size();
  for (std::size_t m = 0; m < k; ++m) {
    const double a = p.re[m], b = p.im_i[m], c = p.im_j[m], d = p.im_k[m];
    const double e = q.re[m], f = q.im_i[m], g = q.im_j[m], h = q.im_k[m];
    out.re[m] = a * e - b * f - c * g - d * h;
    out.im_i[m] = b * e + a * f + c * h - d * g;
    out.im_j[m] = c * e + a * g + d * f - b * h;
    out.im_k[m] = d * e + a * h + b * g - c * f;
  }
}

QuaternionBatch hamilton_product(QuatView p, QuatView q) {
  QuaternionBatch out(p.size());
  hamilton_product_into(p, q, out);
  return out;
}

void norm_into(QuatView p, std::span<double> out) {
  const std::size_t k = p.size();
  for (std::size_t m = 0; m < k; ++m) {
    out[m] = std::sqrt(p.re[m] * p.re[m] + p.im_i[m] * p.im_i[m] +
                       p.im_j[m] * p.im_j[m] + p.im_k[m] * p.im_k[m]);
  }
}

std::vector<double> norm(QuatView p) {
  std::vector<double> out(p.size());
  norm_into(p, out);
  return out;
}

void normalize_into(QuatView p, double eps, QuatSpan out) {
  const std::size_t k = p.size();
  for (std::size_t m = 0; m < k; ++m) {
    const double n = std::sqrt(p.re[m] * p.re[m] + p.im_i[m] * p.im_i[m] +
                               p.im_j[m] * p.im_j[m] + p.im_k[m] * p.im_k[m]);
    const double inv = 1.0 / std::max(n, eps);
    out.re[m] = p.re[m] * inv;
    out.im_i[m] = p.im_i[m] * inv;
    out.im_j[m] = p.im_j[m] * inv;
    out.im_k[m] = p.im_k[m] * inv;
  }
}

QuaternionBatch normalize(QuatView p, double eps) {
  QuaternionBatch out(p.size());
  normalize_into(p, eps, out);
  return out;
}

void conjugate_into(QuatView p, QuatSpan out) {
  const std::size_t k = p.size();
  for (std::size_t m = 0; m < k; ++m) {
    out.re[m] = p.re[m];
    out.im_i[m] = -p.im_i[m];
    out.im_j[m] = -p.im_j[m];
    out.im_k[m] = -p.im_k[m];
  }
}

QuaternionBatch conjugate(QuatView p) {
  QuaternionBatch out(p.size());
  conjugate_into(p, out);
  return out;
}

QuaternionBatch inverse(QuatView p) {
  const std::size_t k = p.size();
  QuaternionBatch out(k);
  for (std::size_t m = 0; m < k; ++m) {
    const double n2 = p.re[m] * p.re[m] + p.im_i[m] * p.im_i[m] +
                      p.im_j[m] * p.im_j[m] + p.im_k[m] * p.im_k[m];
    if (n2 == 0.0) {
      throw SingularityError("inverse: zero-norm quaternion at slot " + std::to_string(m));
    }
    const double inv = 1.0 / n2;
    out.re[m] = p.re[m] * inv;
    out.im_i[m] = -p.im_i[m] * inv;
    out.im_j[m] = -p.im_j[m] * inv;
    out.im_k[m] = -p.im_k[m] * inv;
  }
  return out;
}

QuaternionBatch add(QuatView p, QuatView q) {
  require_same_size(p, q, "add");
  const std::size_t k = p.size();
  QuaternionBatch out(k);
  for (std::size_t m = 0; m < k; ++m) {
    out.re[m] = p.re[m] + q.re[m];
    out.im_i[m] = p.im_i[m] + q.im_i[m];
    out.im_j[m] = p.im_j[m] + q.im_j[m];
    out.im_k[m] = p.im_k[m] + q.im_k[m];
  }
  return out;
}

void sub_into(QuatView p, QuatView q, QuatSpan out) {
  require_same_size(p, q, "sub");
  const std::size_t k = p.size();
  for (std::size_t m = 0; m < k; ++m) {
    out.re[m] = p.re[m] - q.re[m];
    out.im_i[m] = p.im_i[m] - q.im_i[m];
    out.im_j[m] = p.im_j[m] - q.im_j[m];
    out.im_k[m] = p.im_k[m] - q.im_k[m];
  }
}

QuaternionBatch sub(QuatView p, QuatView q) {
  QuaternionBatch out(p.size());
  sub_into(p, q, out);
  return out;
}

double inner(QuatView p, QuatView q) {
  require_same_size(p, q, "inner");
  const std::size_t k = p.size();
  double acc = 0.0;
  for (std::size_t m = 0; m < k; ++m) {
    acc += p.re[m] * q.re[m] + p.im_i[m] * q.im_i[m] + p.im_j[m] * q.im_j[m] +
           p.im_k[m] * q.im_k[m];
  }
  return acc;
}

double l1(QuatView p) {
  const std::size_t k = p.size();
  double acc = 0.0;
  for (std::size_t m = 0; m < k; ++m) {
    acc += std::fabs(p.re[m]) + std::fabs(p.im_i[m]) + std::fabs(p.im_j[m]) +
           std::fabs(p.im_k[m]);
  }
  return acc;
}

bool all_finite(QuatView p) {
  const std::size_t k = p.size();
  for (std::size_t m = 0; m < k; ++m) {
    if (!std::isfinite(p.re[m]) || !std::isfinite(p.im_i[m]) ||
        !std::isfinite(p.im_j[m]) || !std::isfinite(p.im_k[m])) {
      return false;
    }
  }
  return true;
}

}  // namespace qbr
