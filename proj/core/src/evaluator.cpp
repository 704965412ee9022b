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

#include "qbr/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <thread>
#include <unordered_map>

#include "qbr/error.hpp"

namespace qbr {

const char* category_name(RelationCategory c) {
  switch (c) {
    case RelationCategory::one_to_one: return "1-to-1";
    case RelationCategory::one_to_many: return "1-to-N";
    case RelationCategory::many_to_one: return "N-to-1";
    case RelationCategory::many_to_many: return "N-to-N";
  }
  return "?";
}

RelationTypology classify_relations(const TripleStore& store) {
  const std::size_t num_rel = store.num_relations();
  std::vector<std::int64_t> triples_of(num_rel, 0);  // distinct triples per relation
  std::vector<std::int64_t> hr_pairs(num_rel, 0);    // distinct (h, r) pairs
  std::vector<std::int64_t> rt_pairs(num_rel, 0);    // distinct (r, t) pairs

  // The filter index is exactly the de-duplicated union of the splits:
  // each (h, r) key lists the distinct true tails, each (r, t) key the
  // distinct true heads.
  for (const auto& [key, tails] : store.filter.tail_map()) {
    const auto rel = static_cast<RelationId>(key & 0xffffffffu);
    triples_of[static_cast<std::size_t>(rel)] += static_cast<std::int64_t>(tails.size());
    hr_pairs[static_cast<std::size_t>(rel)] += 1;
  }
  for (const auto& [key, heads] : store.filter.head_map()) {
    (void)heads;
    const auto rel = static_cast<RelationId>(key >> 32);
    rt_pairs[static_cast<std::size_t>(rel)] += 1;
  }

  RelationTypology out;
  out.category.resize(num_rel, RelationCategory::one_to_one);
  out.eta_head.resize(num_rel, 0.0);
  out.eta_tail.resize(num_rel, 0.0);
  for (std::size_t r = 0; r < num_rel; ++r) {
    if (triples_of[r] == 0) continue;  // relation never observed
    const double eta_h = static_cast<double>(triples_of[r]) / static_cast<double>(rt_pairs[r]);
    const double eta_t = static_cast<double>(triples_of[r]) / static_cast<double>(hr_pairs[r]);
    out.eta_head[r] = eta_h;
    out.eta_tail[r] = eta_t;
    const bool many_heads = eta_h > 1.5;
    const bool many_tails = eta_t > 1.5;
    if (many_heads && many_tails) {
      out.category[r] = RelationCategory::many_to_many;
    } else if (many_heads) {
      out.category[r] = RelationCategory::many_to_one;
    } else if (many_tails) {
      out.category[r] = RelationCategory::one_to_many;
    } else {
      out.category[r] = RelationCategory::one_to_one;
    }
  }
  for (const Triple& t : store.test) {
    out.test_triple_counts[static_cast<std::size_t>(out.category[static_cast<std::size_t>(t.rel)])]++;
  }
  return out;
}

namespace {

// Query-side vector w such that the semantic score of candidate c is
// inner(entity_row(c), w). From <c ⊗ q, a> = <c, a ⊗ conj(q)>:
//   tail query, full/ii: <h⊗r⁰, c⊗conj(r⁰)> = <c, (h⊗r⁰)⊗r⁰>
//   head query, full/ii: <c⊗r⁰, t⊗conj(r⁰)> = <c, (t⊗conj(r⁰))⊗conj(r⁰)>
//   tail query, i:       <h⊗r⁰, c>          = <c, h⊗r⁰>
//   head query, i:       <c⊗r⁰, t>          = <c, t⊗conj(r⁰)>
QuaternionBatch query_weights(const ModelParams& params, QueryDirection dir,
                              const Triple& query, ModelVariant variant) {
  const QuatView r_row = params.rotations.row(static_cast<std::size_t>(query.rel));
  const QuaternionBatch r_unit = normalize(r_row);
  if (dir == QueryDirection::tail) {
    const QuatView h_row = params.entities.row(static_cast<std::size_t>(query.head));
    QuaternionBatch head_rot = hamilton_product(h_row, r_unit);
    if (variant == ModelVariant::variant_i) return head_rot;
    return hamilton_product(head_rot, r_unit);
  }
  const QuatView t_row = params.entities.row(static_cast<std::size_t>(query.tail));
  const QuaternionBatch r_conj = conjugate(r_unit);
  QuaternionBatch tail_rot = hamilton_product(t_row, r_conj);
  if (variant == ModelVariant::variant_i) return tail_rot;
  return hamilton_product(tail_rot, r_conj);
}

}  // namespace

std::vector<double> score_candidates(const ModelParams& params, QueryDirection dir,
                                     const Triple& query, ModelVariant variant) {
  const std::size_t num_entities = params.num_entities();
  const std::size_t k = params.k();
  const QuaternionBatch w = query_weights(params, dir, query, variant);
  std::vector<double> scores(num_entities);

  const bool with_distance = variant != ModelVariant::variant_ii;
  // Fixed side of h + r_d − t: (h + r_d) for tail queries, (r_d − t) for
  // head queries, plane-packed to match the candidate row layout.
  std::vector<double> base;
  if (with_distance) {
    base.resize(4 * k);
    const QuatView rd = params.distances.row(static_cast<std::size_t>(query.rel));
    const QuatView anchor = params.entities.row(
        static_cast<std::size_t>(dir == QueryDirection::tail ? query.head : query.tail));
    const double sign = dir == QueryDirection::tail ? 1.0 : -1.0;
    for (std::size_t m = 0; m < k; ++m) {
      base[m] = rd.re[m] + sign * anchor.re[m];
      base[k + m] = rd.im_i[m] + sign * anchor.im_i[m];
      base[2 * k + m] = rd.im_j[m] + sign * anchor.im_j[m];
      base[3 * k + m] = rd.im_k[m] + sign * anchor.im_k[m];
    }
  }

  const double lambda = params.lambda;
  const double cand_sign = dir == QueryDirection::tail ? -1.0 : 1.0;
  for (std::size_t c = 0; c < num_entities; ++c) {
    const QuatView row = params.entities.row(c);
    double sem = 0.0;
    for (std::size_t m = 0; m < k; ++m) {
      sem += row.re[m] * w.re[m] + row.im_i[m] * w.im_i[m] + row.im_j[m] * w.im_j[m] +
             row.im_k[m] * w.im_k[m];
    }
    if (!with_distance) {
      scores[c] = sem;
      continue;
    }
    double dist = 0.0;
    for (std::size_t m = 0; m < k; ++m) {
      dist += std::fabs(base[m] + cand_sign * row.re[m]) +
              std::fabs(base[k + m] + cand_sign * row.im_i[m]) +
              std::fabs(base[2 * k + m] + cand_sign * row.im_j[m]) +
              std::fabs(base[3 * k + m] + cand_sign * row.im_k[m]);
    }
    scores[c] = sem + lambda * dist;
  }
  return scores;
}

namespace {

std::int64_t rank_from_scores(const std::vector<double>& scores, EntityId answer,
                              std::span<const EntityId> known_true) {
  const double answer_score = scores[static_cast<std::size_t>(answer)];
  std::int64_t greater = 0;
  std::int64_t equal = 0;
  for (std::size_t c = 0; c < scores.size(); ++c) {
    const auto cid = static_cast<EntityId>(c);
    if (cid == answer) continue;
    if (std::binary_search(known_true.begin(), known_true.end(), cid)) continue;
    if (scores[c] > answer_score) {
      ++greater;
    } else if (scores[c] == answer_score) {
      ++equal;
    }
  }
  return 1 + greater + equal / 2;
}

}  // namespace

std::int64_t filtered_rank(const ModelParams& params, QueryDirection dir,
                           const Triple& query, const TripleStore& store,
                           ModelVariant variant) {
  const std::vector<double> scores = score_candidates(params, dir, query, variant);
  if (dir == QueryDirection::tail) {
    return rank_from_scores(scores, query.tail, store.filter.tails(query.head, query.rel));
  }
  return rank_from_scores(scores, query.head, store.filter.heads(query.rel, query.tail));
}

SplitRanks rank_split(const ModelParams& params, const TripleStore& store, Split split,
                      ModelVariant variant, int threads) {
  const auto& triples = store.split(split);
  SplitRanks ranks;
  ranks.head.resize(triples.size());
  ranks.tail.resize(triples.size());

  unsigned n_threads = threads > 0 ? static_cast<unsigned>(threads)
                                   : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned>(n_threads, std::max<std::size_t>(triples.size(), 1));

  auto worker = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      ranks.head[i] = filtered_rank(params, QueryDirection::head, triples[i], store, variant);
      ranks.tail[i] = filtered_rank(params, QueryDirection::tail, triples[i], store, variant);
    }
  };

  if (n_threads <= 1) {
    worker(0, triples.size());
    return ranks;
  }
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  const std::size_t chunk = (triples.size() + n_threads - 1) / n_threads;
  for (unsigned w = 0; w < n_threads; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(begin + chunk, triples.size());
    if (begin >= end) break;
    pool.emplace_back(worker, begin, end);
  }
  for (auto& th : pool) th.join();
  return ranks;
}

namespace {

struct MetricAccumulator {
  double rank_sum = 0.0;
  double reciprocal_sum = 0.0;
  std::size_t at1 = 0, at3 = 0, at10 = 0;
  std::size_t count = 0;

  void add(std::int64_t rank) {
    rank_sum += static_cast<double>(rank);
    reciprocal_sum += 1.0 / static_cast<double>(rank);
    if (rank <= 1) ++at1;
    if (rank <= 3) ++at3;
    if (rank <= 10) ++at10;
    ++count;
  }

  Metrics finish() const {
    Metrics m;
    m.num_queries = count;
    if (count == 0) return m;
    const auto n = static_cast<double>(count);
    m.mr = rank_sum / n;
    m.mrr = reciprocal_sum / n;
    m.hits1 = static_cast<double>(at1) / n;
    m.hits3 = static_cast<double>(at3) / n;
    m.hits10 = static_cast<double>(at10) / n;
    return m;
  }
};

}  // namespace

EvalReport evaluate(const ModelParams& params, const TripleStore& store, Split split,
                    ModelVariant variant, int threads) {
  const SplitRanks ranks = rank_split(params, store, split, variant, threads);
  const RelationTypology typology = classify_relations(store);
  const auto& triples = store.split(split);

  MetricAccumulator overall, head_acc, tail_acc;
  std::array<MetricAccumulator, 4> category_acc;
  // Fixed aggregation order: per triple, head query then tail query.
  for (std::size_t i = 0; i < triples.size(); ++i) {
    const auto cat =
        static_cast<std::size_t>(typology.category[static_cast<std::size_t>(triples[i].rel)]);
    overall.add(ranks.head[i]);
    overall.add(ranks.tail[i]);
    head_acc.add(ranks.head[i]);
    tail_acc.add(ranks.tail[i]);
    category_acc[cat].add(ranks.head[i]);
    category_acc[cat].add(ranks.tail[i]);
  }

  EvalReport report;
  report.overall = overall.finish();
  report.head = head_acc.finish();
  report.tail = tail_acc.finish();
  for (std::size_t c = 0; c < 4; ++c) report.per_category[c] = category_acc[c].finish();
  return report;
}

ExportSummary export_embeddings(const ModelParams& params, const TripleStore& store,
                                const std::vector<std::pair<std::string, std::string>>& queries,
                                std::ostream& out) {
  ExportSummary summary;
  const std::size_t k = params.k();
  char buf[32];
  for (std::size_t q = 0; q < queries.size(); ++q) {
    const EntityId head = store.entities.id_of(queries[q].first);
    const RelationId rel = store.relations.id_of(queries[q].second);
    const auto answers = store.filter.tails(head, rel);
    ++summary.groups;
    if (answers.empty()) {
      summary.warnings.push_back("query " + std::to_string(q) + " (" + queries[q].first +
                                 ", " + queries[q].second + ") has no known answers");
      continue;
    }
    for (const EntityId tail : answers) {
      out << q << '\t' << store.entities.name_of(tail);
      const QuatView row = params.entities.row(static_cast<std::size_t>(tail));
      for (const auto& plane : {row.re, row.im_i, row.im_j, row.im_k}) {
        for (std::size_t m = 0; m < k; ++m) {
          std::snprintf(buf, sizeof(buf), "%.17g", plane[m]);
          out << '\t' << buf;
        }
      }
      out << '\n';
      ++summary.rows;
    }
  }
  return summary;
}

}  // namespace qbr
