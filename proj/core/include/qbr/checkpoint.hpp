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
#include <filesystem>

#include "qbr/dataset.hpp"
#include "qbr/model.hpp"

namespace qbr {

// Binary checkpoint, little-endian, versioned. Layout:
//   char[8]  magic "QBRCKPT\0"
//   u32      format version (currently 1)
//   u32      model variant (0 full, 1 variant_i, 2 variant_ii)
//   u64      num_entities, u64 num_relations, u64 k
//   f64      lambda
//   f64[...] entity table, rotation table, distance table; each table
//            row-major with per-row plane order [re | i | j | k]
// Vocabularies are written next to the checkpoint as <path>.entities.txt
// and <path>.relations.txt, one name per line, line number = id.

struct CheckpointInfo {
  std::uint64_t num_entities = 0;
  std::uint64_t num_relations = 0;
  std::uint64_t k = 0;
  double lambda = 0.0;
  ModelVariant variant = ModelVariant::full;

  std::uint64_t dim() const { return 4 * k; }
  // Learned-scalar count the checkpoint self-reports:
  // |E|·n + 2·|R|·n + 1 with n = 4k.
  std::uint64_t parameter_count() const {
    return num_entities * dim() + 2 * num_relations * dim() + 1;
  }
};

void save_checkpoint(const std::filesystem::path& path, const ModelParams& params,
                     ModelVariant variant, const TripleStore* vocab = nullptr);

struct LoadedCheckpoint {
  ModelParams params;
  ModelVariant variant = ModelVariant::full;
};

LoadedCheckpoint load_checkpoint(const std::filesystem::path& path);

// Header only; cheap.
CheckpointInfo read_checkpoint_info(const std::filesystem::path& path);

}  // namespace qbr
