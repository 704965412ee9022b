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

#include <filesystem>
#include <string>
#include <vector>

#include "qbr/dataset.hpp"
#include "qbr/rng.hpp"

namespace qbr::testing {

// Self-deleting scratch directory under the system temp root.
class TempDir {
 public:
  explicit TempDir(const std::string& tag);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path file(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

struct NamedTriple {
  std::string head, rel, tail;
};

// Writes train.txt / valid.txt / test.txt under dir.
void write_dataset_files(const std::filesystem::path& dir,
                         const std::vector<NamedTriple>& train,
                         const std::vector<NamedTriple>& valid,
                         const std::vector<NamedTriple>& test);

// In-memory store from id triples; entity/relation names are e<i> / r<i>.
TripleStore make_store(std::size_t num_entities, std::size_t num_relations,
                       const std::vector<Triple>& train,
                       const std::vector<Triple>& valid = {},
                       const std::vector<Triple>& test = {});

struct SyntheticKg {
  std::vector<NamedTriple> train, valid, test;
};

// Small learnable graph: a "next" ring (antisymmetric, 1-to-1) plus fully
// connected "same_block" cliques (symmetric, N-to-N). A few triples of
// each relation are held out for valid/test.
SyntheticKg make_synthetic_kg(std::size_t num_entities, std::size_t block,
                              std::uint64_t seed);

}  // namespace qbr::testing
