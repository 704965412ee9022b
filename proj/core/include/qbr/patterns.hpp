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

#include <map>
#include <string>
#include <vector>

#include "qbr/quaternion.hpp"
#include "qbr/rng.hpp"

namespace qbr {

// Numerical witnesses that the bidirectional-rotation score (with the
// distance channel gated off, λ = 0) carries the four classical relation
// patterns. Equality patterns are asserted to a tolerance over random
// trials; antisymmetry, being an inequality claim, is reported as the
// fraction of generic trials where equality fails.

enum class Pattern { symmetry, antisymmetry, inversion, composition };

const char* pattern_name(Pattern p);

enum class PatternVerdict { holds, capacity_demonstrated, failed };

const char* verdict_name(PatternVerdict v);

struct PatternWitness {
  std::map<std::string, QuaternionBatch> inputs;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct PatternReport {
  Pattern pattern = Pattern::symmetry;
  int trials = 0;
  std::size_t k = 0;
  double tolerance = 0.0;
  double max_abs_deviation = 0.0;   // equality patterns
  double inequality_fraction = 0.0; // antisymmetry
  PatternVerdict verdict = PatternVerdict::failed;
  std::vector<PatternWitness> witnesses;     // small sample of inputs
  std::map<std::string, double> extra;       // auxiliary diagnostics
};

/// Relations with zero imaginary parts score (h,r,t) and (t,r,h) equally.
PatternReport verify_symmetry(int trials, std::size_t k, double tol, Rng& rng);

/// Relations with nonzero imaginary parts generically break that equality.
/// Verdict `capacity_demonstrated` when the broken fraction exceeds 0.99;
/// exact h = t draws are degenerate and excluded from the fraction.
PatternReport verify_antisymmetry(int trials, std::size_t k, Rng& rng);

/// s(h, r, t) equals the same score form evaluated at (t, conj(r), h):
/// for a unit relation the conjugate is the inverse.
PatternReport verify_inversion(int trials, std::size_t k, double tol, Rng& rng);

/// Sequential bidirectional rotation by unit r₂ then r₃ (tail side by
/// conj(r₂) then conj(r₃)) equals one rotation by r₁ = r₂ ⊗ r₃ with
/// conj(r₂) ⊗ conj(r₃) on the tail side. `extra` additionally reports
///   tail_associativity_max_dev — ‖(t⊗r̄₂)⊗r̄₃ − t⊗(r̄₂⊗r̄₃)‖ on the trials
///   alt_reading_max_dev — deviation from the single-relation score that
///     rotates the tail by conj(r₁) = r̄₃ ⊗ r̄₂ instead; the two readings
///     differ whenever r₂ and r₃ do not commute, so it is reported, not
///     asserted.
PatternReport verify_composition(int trials, std::size_t k, double tol, Rng& rng);

}  // namespace qbr
