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

#include <span>
#include <string>
#include <string_view>

#include "qbr/dataset.hpp"

namespace qbr {

// Per-benchmark defaults: tuned, published hyperparameters plus the exact
// counts of the canonical releases (used by `check-stats`).
struct DatasetPreset {
  std::string_view name;       // CLI spelling, e.g. "wn18rr"
  std::string_view directory;  // subdirectory under the data root, e.g. "WN18RR"
  double lr;
  int neg;
  int dim;  // full embedding dimension n = 4k
  double eta1;
  double eta2;
  DatasetStats stats;
};

std::span<const DatasetPreset> all_presets();

// nullptr when the name is unknown. Matching is case-insensitive and
// ignores '-' / '_' (so "FB15k-237" and "fb15k237" both resolve).
const DatasetPreset* find_preset(std::string_view name);

}  // namespace qbr
