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

#include "qbr/patterns.hpp"

#include <cmath>

#include "qbr/model.hpp"

namespace qbr {

const char* pattern_name(Pattern p) {
  switch (p) {
    case Pattern::symmetry: return "symmetry";
    case Pattern::antisymmetry: return "antisymmetry";
    case Pattern::inversion: return "inversion";
    case Pattern::composition: return "composition";
  }
  return "?";
}

const char* verdict_name(PatternVerdict v) {
  switch (v) {
    case PatternVerdict::holds: return "holds";
    case PatternVerdict::capacity_demonstrated: return "capacity-demonstrated";
    case PatternVerdict::failed: return "failed";
  }
  return "?";
}

namespace {

constexpr int kMaxWitnesses = 3;

QuaternionBatch random_batch(std::size_t k, Rng& rng) {
  QuaternionBatch q(k);
  for (auto* plane : {&q.re, &q.im_i, &q.im_j, &q.im_k}) {
    for (double& x : *plane) x = uniform_range(rng, -1.0, 1.0);
  }
  return q;
}

// Relation with zero imaginary parts; real parts kept away from zero so
// normalization is well defined.
QuaternionBatch random_real_relation(std::size_t k, Rng& rng) {
  QuaternionBatch q(k);
  for (double& x : q.re) {
    do {
      x = uniform_range(rng, -1.0, 1.0);
    } while (std::fabs(x) < 1e-3);
  }
  return q;
}

double l2_deviation(QuatView a, QuatView b) {
  double acc = 0.0;
  for (std::size_t m = 0; m < a.size(); ++m) {
    const double d0 = a.re[m] - b.re[m];
    const double d1 = a.im_i[m] - b.im_i[m];
    const double d2 = a.im_j[m] - b.im_j[m];
    const double d3 = a.im_k[m] - b.im_k[m];
    acc += d0 * d0 + d1 * d1 + d2 * d2 + d3 * d3;
  }
  return std::sqrt(acc);
}

}  // namespace

PatternReport verify_symmetry(int trials, std::size_t k, double tol, Rng& rng) {
  PatternReport report;
  report.pattern = Pattern::symmetry;
  report.trials = trials;
  report.k = k;
  report.tolerance = tol;
  for (int i = 0; i < trials; ++i) {
    const QuaternionBatch h = random_batch(k, rng);
    const QuaternionBatch t = random_batch(k, rng);
    const QuaternionBatch r = random_real_relation(k, rng);
    const double lhs = bidirectional_score(h, r, t);
    const double rhs = bidirectional_score(t, r, h);
    const double dev = std::fabs(lhs - rhs);
    report.max_abs_deviation = std::max(report.max_abs_deviation, dev);
    if (static_cast<int>(report.witnesses.size()) < kMaxWitnesses) {
      report.witnesses.push_back({{{"h", h}, {"r", r}, {"t", t}}, lhs, rhs});
    }
  }
  report.verdict =
      report.max_abs_deviation <= tol ? PatternVerdict::holds : PatternVerdict::failed;
  return report;
}

PatternReport verify_antisymmetry(int trials, std::size_t k, Rng& rng) {
  PatternReport report;
  report.pattern = Pattern::antisymmetry;
  report.trials = trials;
  report.k = k;
  report.tolerance = 1e-6;  // equality threshold the inequality must clear
  int generic = 0;
  int unequal = 0;
  for (int i = 0; i < trials; ++i) {
    const QuaternionBatch h = random_batch(k, rng);
    const QuaternionBatch t = random_batch(k, rng);
    const QuaternionBatch r = random_batch(k, rng);
    if (h == t) continue;  // degenerate: both sides coincide by construction
    ++generic;
    const double lhs = bidirectional_score(h, r, t);
    const double rhs = bidirectional_score(t, r, h);
    if (std::fabs(lhs - rhs) > 1e-6) {
      ++unequal;
    } else if (static_cast<int>(report.witnesses.size()) < kMaxWitnesses) {
      report.witnesses.push_back({{{"h", h}, {"r", r}, {"t", t}}, lhs, rhs});
    }
  }
  report.inequality_fraction =
      generic == 0 ? 0.0 : static_cast<double>(unequal) / static_cast<double>(generic);
  report.verdict = report.inequality_fraction > 0.99 ? PatternVerdict::capacity_demonstrated
                                                     : PatternVerdict::failed;
  return report;
}

PatternReport verify_inversion(int trials, std::size_t k, double tol, Rng& rng) {
  PatternReport report;
  report.pattern = Pattern::inversion;
  report.trials = trials;
  report.k = k;
  report.tolerance = tol;
  for (int i = 0; i < trials; ++i) {
    const QuaternionBatch h = random_batch(k, rng);
    const QuaternionBatch t = random_batch(k, rng);
    const QuaternionBatch r = normalize(random_batch(k, rng));
    const double lhs = bidirectional_score(h, r, t);
    const double rhs = bidirectional_score(t, conjugate(r), h);
    const double dev = std::fabs(lhs - rhs);
    report.max_abs_deviation = std::max(report.max_abs_deviation, dev);
    if (static_cast<int>(report.witnesses.size()) < kMaxWitnesses) {
      report.witnesses.push_back({{{"h", h}, {"r", r}, {"t", t}}, lhs, rhs});
    }
  }
  report.verdict =
      report.max_abs_deviation <= tol ? PatternVerdict::holds : PatternVerdict::failed;
  return report;
}

PatternReport verify_composition(int trials, std::size_t k, double tol, Rng& rng) {
  PatternReport report;
  report.pattern = Pattern::composition;
  report.trials = trials;
  report.k = k;
  report.tolerance = tol;
  double tail_assoc_max = 0.0;
  double alt_reading_max = 0.0;
  for (int i = 0; i < trials; ++i) {
    const QuaternionBatch h = random_batch(k, rng);
    const QuaternionBatch t = random_batch(k, rng);
    const QuaternionBatch r2 = normalize(random_batch(k, rng));
    const QuaternionBatch r3 = normalize(random_batch(k, rng));
    const QuaternionBatch r2c = conjugate(r2);
    const QuaternionBatch r3c = conjugate(r3);

    // Sequential path: head by r₂ then r₃, tail by conj(r₂) then conj(r₃).
    const QuaternionBatch head_seq = hamilton_product(hamilton_product(h, r2), r3);
    const QuaternionBatch tail_seq = hamilton_product(hamilton_product(t, r2c), r3c);
    const double lhs = inner(head_seq, tail_seq);

    // Collapsed path: r₁ = r₂ ⊗ r₃ on the head, conj(r₂) ⊗ conj(r₃) on the
    // tail. Unit quaternions are closed under the Hamilton product, so r₁
    // needs no renormalization.
    const QuaternionBatch r1 = hamilton_product(r2, r3);
    const QuaternionBatch tail_rel = hamilton_product(r2c, r3c);
    const QuaternionBatch head_col = hamilton_product(h, r1);
    const QuaternionBatch tail_col = hamilton_product(t, tail_rel);
    const double rhs = inner(head_col, tail_col);

    const double dev = std::fabs(lhs - rhs);
    report.max_abs_deviation = std::max(report.max_abs_deviation, dev);
    tail_assoc_max = std::max(tail_assoc_max, l2_deviation(tail_seq, tail_col));
    // Alternative reading: one bidirectional rotation by r₁, i.e. the tail
    // rotated by conj(r₁) = conj(r₃) ⊗ conj(r₂). Differs from the written
    // form unless r₂ and r₃ commute.
    alt_reading_max =
        std::max(alt_reading_max, std::fabs(lhs - bidirectional_score(h, r1, t)));
    if (static_cast<int>(report.witnesses.size()) < kMaxWitnesses) {
      report.witnesses.push_back({{{"h", h}, {"r2", r2}, {"r3", r3}, {"t", t}}, lhs, rhs});
    }
  }
  report.extra["tail_associativity_max_dev"] = tail_assoc_max;
  report.extra["alt_reading_max_dev"] = alt_reading_max;
  report.verdict =
      report.max_abs_deviation <= tol ? PatternVerdict::holds : PatternVerdict::failed;
  return report;
}

}  // namespace qbr
