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

#include "support/fixtures.hpp"

#include <unistd.h>

#include <atomic>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qbr::testing {

namespace {

std::atomic<std::uint64_t> g_tempdir_counter{0};

}  // namespace

TempDir::TempDir(const std::string& tag) {
  const auto n = g_tempdir_counter.fetch_add(1);
  path_ = std::filesystem::temp_directory_path() /
          ("qbr-test-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(n));
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

std::string render(const std::vector<NamedTriple>& triples) {
  std::string out;
  for (const auto& t : triples) {
    out += t.head;
    out += '\t';
    out += t.rel;
    out += '\t';
    out += t.tail;
    out += '\n';
  }
  return out;
}

}  // namespace

void write_dataset_files(const std::filesystem::path& dir,
                         const std::vector<NamedTriple>& train,
                         const std::vector<NamedTriple>& valid,
                         const std::vector<NamedTriple>& test) {
  std::filesystem::create_directories(dir);
  write_text_file(dir / "train.txt", render(train));
  write_text_file(dir / "valid.txt", render(valid));
  write_text_file(dir / "test.txt", render(test));
}

TripleStore make_store(std::size_t num_entities, std::size_t num_relations,
                       const std::vector<Triple>& train, const std::vector<Triple>& valid,
                       const std::vector<Triple>& test) {
  TripleStore store;
  for (std::size_t e = 0; e < num_entities; ++e) store.entities.add_or_get("e" + std::to_string(e));
  for (std::size_t r = 0; r < num_relations; ++r) store.relations.add_or_get("r" + std::to_string(r));
  store.train = train;
  store.valid = valid;
  store.test = test;
  for (const auto* split : {&store.train, &store.valid, &store.test}) {
    for (const Triple& t : *split) store.filter.insert(t);
  }
  store.filter.finalize();
  return store;
}

SyntheticKg make_synthetic_kg(std::size_t num_entities, std::size_t block,
                              std::uint64_t seed) {
  std::vector<NamedTriple> all;
  auto ent = [](std::size_t i) { return "e" + std::to_string(i); };
  for (std::size_t i = 0; i < num_entities; ++i) {
    all.push_back({ent(i), "next", ent((i + 1) % num_entities)});
  }
  for (std::size_t i = 0; i < num_entities; ++i) {
    for (std::size_t j = 0; j < num_entities; ++j) {
      if (i != j && i / block == j / block) {
        all.push_back({ent(i), "same_block", ent(j)});
      }
    }
  }

  Rng rng = make_rng(seed, 0xf17);
  for (std::size_t i = all.size(); i > 1; --i) {
    std::swap(all[i - 1], all[uniform_index(rng, i)]);
  }
  SyntheticKg kg;
  const std::size_t holdout = std::max<std::size_t>(2, all.size() / 10);
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (i < holdout) {
      kg.test.push_back(all[i]);
    } else if (i < 2 * holdout) {
      kg.valid.push_back(all[i]);
    } else {
      kg.train.push_back(all[i]);
    }
  }
  return kg;
}

}  // namespace qbr::testing
