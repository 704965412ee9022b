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

#include "qbr/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_set>

#include "qbr/error.hpp"

namespace qbr {

std::int32_t Vocab::add_or_get(std::string_view name) {
  auto it = ids_.find(std::string(name));
  if (it != ids_.end()) return it->second;
  const auto id = static_cast<std::int32_t>(names_.size());
  names_.emplace_back(name);
  ids_.emplace(names_.back(), id);
  return id;
}

std::optional<std::int32_t> Vocab::find(std::string_view name) const {
  auto it = ids_.find(std::string(name));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

std::int32_t Vocab::id_of(std::string_view name) const {
  auto id = find(name);
  if (!id) throw LookupError("unknown name: '" + std::string(name) + "'");
  return *id;
}

const std::string& Vocab::name_of(std::int32_t id) const {
  return names_.at(static_cast<std::size_t>(id));
}

void FilterIndex::insert(const Triple& t) {
  tails_[key(t.head, t.rel)].push_back(t.tail);
  heads_[key(t.rel, t.tail)].push_back(t.head);
}

void FilterIndex::finalize() {
  for (auto* map : {&tails_, &heads_}) {
    for (auto& [_, v] : *map) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    }
  }
}

bool FilterIndex::contains(const Triple& t) const {
  auto it = tails_.find(key(t.head, t.rel));
  if (it == tails_.end()) return false;
  return std::binary_search(it->second.begin(), it->second.end(), t.tail);
}

std::span<const EntityId> FilterIndex::tails(EntityId head, RelationId rel) const {
  auto it = tails_.find(key(head, rel));
  if (it == tails_.end()) return {};
  return it->second;
}

std::span<const EntityId> FilterIndex::heads(RelationId rel, EntityId tail) const {
  auto it = heads_.find(key(rel, tail));
  if (it == heads_.end()) return {};
  return it->second;
}

const std::vector<Triple>& TripleStore::split(Split s) const {
  switch (s) {
    case Split::train: return train;
    case Split::valid: return valid;
    case Split::test: return test;
  }
  return train;
}

namespace {

struct TripleHash {
  std::size_t operator()(const Triple& t) const {
    std::uint64_t x = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(t.head)) << 32) ^
                      (static_cast<std::uint64_t>(static_cast<std::uint32_t>(t.rel)) << 16) ^
                      static_cast<std::uint32_t>(t.tail);
    return static_cast<std::size_t>(splitmix64(x));
  }
};

void load_split(const std::filesystem::path& path, TripleStore& store,
                std::vector<Triple>& out) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open dataset file: " + path.string());

  std::unordered_set<Triple, TripleHash> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab1 = line.find('\t');
    const auto tab2 = tab1 == std::string::npos ? std::string::npos : line.find('\t', tab1 + 1);
    if (tab1 == std::string::npos || tab2 == std::string::npos) {
      throw ParseError(path.string(), line_no, "expected head<TAB>relation<TAB>tail");
    }
    const std::string_view head(line.data(), tab1);
    const std::string_view rel(line.data() + tab1 + 1, tab2 - tab1 - 1);
    const std::string_view tail(line.data() + tab2 + 1, line.size() - tab2 - 1);
    if (head.empty() || rel.empty() || tail.empty() || tail.find('\t') != std::string_view::npos) {
      throw ParseError(path.string(), line_no, "expected head<TAB>relation<TAB>tail");
    }
    Triple t;
    t.head = store.entities.add_or_get(head);
    t.rel = store.relations.add_or_get(rel);
    t.tail = store.entities.add_or_get(tail);
    if (seen.insert(t).second) out.push_back(t);
  }
}

}  // namespace

TripleStore load_dataset(const std::filesystem::path& train_path,
                         const std::filesystem::path& valid_path,
                         const std::filesystem::path& test_path) {
  TripleStore store;
  load_split(train_path, store, store.train);
  load_split(valid_path, store, store.valid);
  load_split(test_path, store, store.test);
  if (store.train.empty()) {
    throw ConfigError("empty train split: " + train_path.string());
  }
  for (const auto* split : {&store.train, &store.valid, &store.test}) {
    for (const Triple& t : *split) store.filter.insert(t);
  }
  store.filter.finalize();
  return store;
}

StatsReport check_stats(const TripleStore& store, const DatasetStats& expected) {
  StatsReport report;
  auto check = [&](const char* field, std::optional<std::int64_t> want, std::int64_t got) {
    if (want && *want != got) {
      report.pass = false;
      report.mismatches.push_back({field, *want, got});
    }
  };
  check("num_entities", expected.num_entities, static_cast<std::int64_t>(store.num_entities()));
  check("num_relations", expected.num_relations, static_cast<std::int64_t>(store.num_relations()));
  check("num_train", expected.num_train, static_cast<std::int64_t>(store.train.size()));
  check("num_valid", expected.num_valid, static_cast<std::int64_t>(store.valid.size()));
  check("num_test", expected.num_test, static_cast<std::int64_t>(store.test.size()));
  return report;
}

std::vector<Triple> sample_negatives(const TripleStore& store, const Triple& positive,
                                     int neg, Rng& rng) {
  const std::size_t n = store.num_entities();
  std::vector<Triple> out;
  out.reserve(static_cast<std::size_t>(neg));
  for (int i = 0; i < neg; ++i) {
    const bool corrupt_head = uniform_bool(rng);
    Triple cand = positive;
    for (int attempt = 0; attempt < 100; ++attempt) {
      const auto e = static_cast<EntityId>(uniform_index(rng, n));
      if (corrupt_head) {
        cand.head = e;
      } else {
        cand.tail = e;
      }
      if (!store.filter.contains(cand)) break;
    }
    out.push_back(cand);
  }
  return out;
}

}  // namespace qbr
