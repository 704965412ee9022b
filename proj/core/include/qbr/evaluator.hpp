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

#include <array>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "qbr/dataset.hpp"
#include "qbr/model.hpp"

namespace qbr {

enum class QueryDirection { head, tail };

// Relation cardinality buckets, threshold 1.5 on the average head/tail
// degree.
enum class RelationCategory { one_to_one = 0, one_to_many = 1, many_to_one = 2, many_to_many = 3 };

const char* category_name(RelationCategory c);

struct Metrics {
  double mr = 0.0;
  double mrr = 0.0;
  double hits1 = 0.0;
  double hits3 = 0.0;
  double hits10 = 0.0;
  std::size_t num_queries = 0;
};

struct EvalReport {
  Metrics overall;
  Metrics head;  // (?, r, t) queries
  Metrics tail;  // (h, r, ?) queries
  std::array<Metrics, 4> per_category;  // indexed by RelationCategory
};

struct RelationTypology {
  std::vector<RelationCategory> category;  // per relation id
  std::vector<double> eta_head;            // avg heads per (r, t) pair
  std::vector<double> eta_tail;            // avg tails per (h, r) pair
  std::array<std::size_t, 4> test_triple_counts = {0, 0, 0, 0};
};

/// Degree statistics over the de-duplicated union of all splits, as in the
/// classical cardinality rules: η_h(r) = |triples(r)| / |distinct (r,t)|,
/// η_t(r) = |triples(r)| / |distinct (h,r)|. A relation with η exactly at
/// the 1.5 threshold lands on the "1" side.
RelationTypology classify_relations(const TripleStore& store);

/// Fused scores of every entity substituted into one side of (h, r, t).
/// Algebraically identical to calling score() per candidate; the semantic
/// part folds the candidate rotation into the query side via the Hamilton
/// adjoint, so each candidate costs one dot product plus the ℓ₁ term.
std::vector<double> score_candidates(const ModelParams& params, QueryDirection dir,
                                     const Triple& query, ModelVariant variant);

/// Filtered rank of the true answer among all entities: candidates forming
/// other known true triples are removed, ties resolved mid-rank:
/// 1 + #{strictly greater} + ⌊#{exactly equal}/2⌋.
std::int64_t filtered_rank(const ModelParams& params, QueryDirection dir,
                           const Triple& query, const TripleStore& store,
                           ModelVariant variant);

struct SplitRanks {
  std::vector<std::int64_t> head;  // rank of the true head per triple
  std::vector<std::int64_t> tail;  // rank of the true tail per triple
};

/// Both filtered ranks for every triple of the split. Queries are
/// independent; `threads` ≤ 0 picks the hardware count. Results do not
/// depend on the thread count.
SplitRanks rank_split(const ModelParams& params, const TripleStore& store, Split split,
                      ModelVariant variant, int threads = 0);

/// Filtered MR / MRR / Hits@{1,3,10}, aggregated over both prediction
/// directions, split by direction and by relation category.
EvalReport evaluate(const ModelParams& params, const TripleStore& store, Split split,
                    ModelVariant variant, int threads = 0);

struct ExportSummary {
  std::size_t groups = 0;
  std::size_t rows = 0;
  std::vector<std::string> warnings;  // queries with no known answers
};

/// Writes every known answer tail of each (head, relation) query with its
/// raw 4k coordinates: `query_id<TAB>entity<TAB>c_0<TAB>…<TAB>c_{4k−1}`.
/// Coordinates use round-trip precision. Throws LookupError (naming the
/// offender) for unresolvable names.
ExportSummary export_embeddings(const ModelParams& params, const TripleStore& store,
                                const std::vector<std::pair<std::string, std::string>>& queries,
                                std::ostream& out);

}  // namespace qbr
