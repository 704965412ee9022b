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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "qbr/rng.hpp"

namespace qbr {

using EntityId = std::int32_t;
using RelationId = std::int32_t;

struct Triple {
  EntityId head = 0;
  RelationId rel = 0;
  EntityId tail = 0;

  bool operator==(const Triple&) const = default;
};

// name <-> id, ids assigned in first-seen order.
class Vocab {
 public:
  std::int32_t add_or_get(std::string_view name);
  std::optional<std::int32_t> find(std::string_view name) const;
  // Throws LookupError naming the offender.
  std::int32_t id_of(std::string_view name) const;
  const std::string& name_of(std::int32_t id) const;
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::int32_t> ids_;
};

// Known-true lookup across all splits, used both to filter ranking
// candidates and to reject false negatives during sampling.
class FilterIndex {
 public:
  void insert(const Triple& t);
  // Sort-and-dedup the candidate lists; call once after the last insert.
  void finalize();

  bool contains(const Triple& t) const;
  // All known true tails for (h, r); empty span when the pair is unseen.
  std::span<const EntityId> tails(EntityId head, RelationId rel) const;
  // All known true heads for (r, t).
  std::span<const EntityId> heads(RelationId rel, EntityId tail) const;

  const std::unordered_map<std::uint64_t, std::vector<EntityId>>& tail_map() const {
    return tails_;
  }
  const std::unordered_map<std::uint64_t, std::vector<EntityId>>& head_map() const {
    return heads_;
  }

  static std::uint64_t key(std::int32_t a, std::int32_t b) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
  }

 private:
  std::unordered_map<std::uint64_t, std::vector<EntityId>> tails_;  // key(h, r)
  std::unordered_map<std::uint64_t, std::vector<EntityId>> heads_;  // key(r, t)
};

enum class Split { train, valid, test };

// Immutable after load; shared read access from any number of threads.
struct TripleStore {
  Vocab entities;
  Vocab relations;
  std::vector<Triple> train;
  std::vector<Triple> valid;
  std::vector<Triple> test;
  FilterIndex filter;

  const std::vector<Triple>& split(Split s) const;
  std::size_t num_entities() const { return entities.size(); }
  std::size_t num_relations() const { return relations.size(); }
};

// Expected counts; unset fields are not compared.
struct DatasetStats {
  std::optional<std::int64_t> num_entities;
  std::optional<std::int64_t> num_relations;
  std::optional<std::int64_t> num_train;
  std::optional<std::int64_t> num_valid;
  std::optional<std::int64_t> num_test;
};

struct StatsReport {
  struct Mismatch {
    std::string field;
    std::int64_t expected = 0;
    std::int64_t actual = 0;
  };
  bool pass = true;
  std::vector<Mismatch> mismatches;
};

/// Loads three tab-separated triple files (`head\trelation\ttail`, one per
/// line, no header). Vocabularies cover the union of all splits so that
/// evaluation-only entities still receive embeddings; duplicate lines
/// within a split are dropped. Throws ParseError with the offending line
/// number on malformed input and ConfigError when the train split ends up
/// empty.
TripleStore load_dataset(const std::filesystem::path& train_path,
                         const std::filesystem::path& valid_path,
                         const std::filesystem::path& test_path);

/// Compares loaded counts against the expectation, exactly, field by field.
StatsReport check_stats(const TripleStore& store, const DatasetStats& expected);

/// Draws `neg` corruptions of `positive`: head or tail replaced (coin flip)
/// by a uniform entity. A corruption that is a known true triple is
/// redrawn up to 100 times, then accepted as-is.
std::vector<Triple> sample_negatives(const TripleStore& store, const Triple& positive,
                                     int neg, Rng& rng);

}  // namespace qbr
