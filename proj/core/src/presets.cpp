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

#include "qbr/presets.hpp"

#include <array>
#include <cctype>

namespace qbr {

namespace {

// Split sizes and vocabulary counts of the canonical benchmark releases.
const std::array<DatasetPreset, 4> kPresets = {{
    {"wn18rr", "WN18RR", 0.1, 5, 500, 0.5, 0.01,
     {40943, 11, 86835, 3034, 3134}},
    {"fb15k237", "FB15k-237", 0.05, 10, 500, 0.5, 0.01,
     {14541, 237, 272115, 17535, 20466}},
    {"wn18", "WN18", 0.05, 5, 300, 0.05, 0.01,
     {40943, 18, 141442, 5000, 5000}},
    {"fb15k", "FB15k", 0.02, 10, 400, 0.05, 0.01,
     {14951, 1345, 483142, 50000, 59071}},
}};

std::string fold(std::string_view name) {
  std::string out;
  out.reserve(name.size());
  for (char c : name) {
    if (c == '-' || c == '_') continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

}  // namespace

std::span<const DatasetPreset> all_presets() { return kPresets; }

const DatasetPreset* find_preset(std::string_view name) {
  const std::string folded = fold(name);
  for (const auto& preset : kPresets) {
    if (folded == preset.name) return &preset;
  }
  return nullptr;
}

}  // namespace qbr
