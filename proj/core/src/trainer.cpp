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

#include "qbr/trainer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "qbr/error.hpp"
#include "qbr/evaluator.hpp"

namespace qbr {

namespace {

// log(1 + exp(x)) without overflow.
double softplus(double x) {
  if (x > 0.0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

// 1 / (1 + exp(−x)) without overflow.
double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double squared_sum(std::span<const double> xs) {
  double acc = 0.0;
  for (double x : xs) acc += x * x;
  return acc;
}

}  // namespace

void TrainConfig::validate() const {
  if (!(lr > 0.0)) throw ConfigError("lr must be positive");
  if (k < 1) throw ConfigError("k must be at least 1");
  if (neg < 1) throw ConfigError("neg must be at least 1");
  if (eta1 < 0.0 || eta2 < 0.0) throw ConfigError("regularization rates must be nonnegative");
  if (num_batches < 1) throw ConfigError("num_batches must be at least 1");
  if (epochs < 0) throw ConfigError("epochs must be nonnegative");
  if (eval_every < 1) throw ConfigError("eval_every must be at least 1");
}

double loss(const ModelParams& params, std::span<const LabeledTriple> batch,
            const TrainConfig& config) {
  double acc = 0.0;
  for (const LabeledTriple& lt : batch) {
    const double phi =
        score(params, lt.triple.head, lt.triple.rel, lt.triple.tail, config.variant);
    acc += softplus(-lt.label * phi);
  }
  acc += config.eta1 * squared_sum(params.entities.flat());
  acc += config.eta2 *
         (squared_sum(params.rotations.flat()) + squared_sum(params.distances.flat()));
  return acc;
}

BatchGradients::BatchGradients(std::size_t num_entities, std::size_t num_relations,
                               std::size_t k)
    : entities_(num_entities, k),
      rotations_(num_relations, k),
      distances_(num_relations, k),
      entity_seen_(num_entities, 0),
      rotation_seen_(num_relations, 0),
      distance_seen_(num_relations, 0) {}

QuatSpan BatchGradients::touch(EmbeddingTable& table, std::vector<char>& seen,
                               std::vector<std::int32_t>& touched, std::int32_t id) {
  if (!seen[static_cast<std::size_t>(id)]) {
    seen[static_cast<std::size_t>(id)] = 1;
    touched.push_back(id);
  }
  return table.mutable_row(static_cast<std::size_t>(id));
}

QuatSpan BatchGradients::entity_grad(EntityId id) {
  return touch(entities_, entity_seen_, touched_entities_, id);
}
QuatSpan BatchGradients::rotation_grad(RelationId id) {
  return touch(rotations_, rotation_seen_, touched_rotations_, id);
}
QuatSpan BatchGradients::distance_grad(RelationId id) {
  return touch(distances_, distance_seen_, touched_distances_, id);
}

void BatchGradients::clear() {
  auto wipe = [](EmbeddingTable& table, std::vector<char>& seen,
                 std::vector<std::int32_t>& touched) {
    for (const std::int32_t id : touched) {
      seen[static_cast<std::size_t>(id)] = 0;
      auto row = table.mutable_row(static_cast<std::size_t>(id));
      std::fill(row.re.begin(), row.re.end(), 0.0);
      std::fill(row.im_i.begin(), row.im_i.end(), 0.0);
      std::fill(row.im_j.begin(), row.im_j.end(), 0.0);
      std::fill(row.im_k.begin(), row.im_k.end(), 0.0);
    }
    touched.clear();
  };
  wipe(entities_, entity_seen_, touched_entities_);
  wipe(rotations_, rotation_seen_, touched_rotations_);
  wipe(distances_, distance_seen_, touched_distances_);
  lambda_ = 0.0;
}

namespace {

void add_regularization(const ModelParams& params, const TrainConfig& config,
                        BatchGradients& grads, bool dense) {
  auto add_rows = [](QuatSpan grad, QuatView row, double rate) {
    const std::size_t k = grad.size();
    for (std::size_t m = 0; m < k; ++m) {
      grad.re[m] += rate * row.re[m];
      grad.im_i[m] += rate * row.im_i[m];
      grad.im_j[m] += rate * row.im_j[m];
      grad.im_k[m] += rate * row.im_k[m];
    }
  };
  // d/dx of η‖X‖₂² is 2ηx. λ is a gate, not an embedding: unregularized.
  const double e_rate = 2.0 * config.eta1;
  const double r_rate = 2.0 * config.eta2;
  if (dense) {
    for (std::size_t id = 0; id < params.num_entities(); ++id) {
      add_rows(grads.entity_grad(static_cast<EntityId>(id)), params.entities.row(id), e_rate);
    }
    for (std::size_t id = 0; id < params.num_relations(); ++id) {
      add_rows(grads.rotation_grad(static_cast<RelationId>(id)), params.rotations.row(id),
               r_rate);
      add_rows(grads.distance_grad(static_cast<RelationId>(id)), params.distances.row(id),
               r_rate);
    }
    return;
  }
  // Sparse mode regularizes exactly the rows the data terms touched; the
  // touched lists are snapshotted because entity_grad() may extend them.
  const std::vector<std::int32_t> entity_ids = grads.touched_entities();
  const std::vector<std::int32_t> rotation_ids = grads.touched_rotations();
  const std::vector<std::int32_t> distance_ids = grads.touched_distances();
  for (const auto id : entity_ids) {
    add_rows(grads.entity_grad(id), params.entities.row(static_cast<std::size_t>(id)), e_rate);
  }
  for (const auto id : rotation_ids) {
    add_rows(grads.rotation_grad(id), params.rotations.row(static_cast<std::size_t>(id)),
             r_rate);
  }
  for (const auto id : distance_ids) {
    add_rows(grads.distance_grad(id), params.distances.row(static_cast<std::size_t>(id)),
             r_rate);
  }
}

// Accumulates the data-term gradients of one labeled triple and returns
// its data loss.
double accumulate_triple(const ModelParams& params, const LabeledTriple& lt,
                         const TrainConfig& config, detail::ScoreWorkspace& ws,
                         BatchGradients& grads) {
  const Triple& t = lt.triple;
  const double phi = detail::forward(params, t.head, t.rel, t.tail, config.variant, ws);
  // d softplus(−Yφ)/dφ = −Y·σ(−Yφ)
  const double scale = -lt.label * sigmoid(-lt.label * phi);
  // variant_ii has no distance channel; do not mark its row as touched.
  const QuatSpan dist_grad = config.variant == ModelVariant::variant_ii
                                 ? QuatSpan{}
                                 : grads.distance_grad(t.rel);
  detail::backward(params, t.head, t.tail, config.variant, ws, scale,
                   grads.entity_grad(t.head), grads.entity_grad(t.tail),
                   grads.rotation_grad(t.rel), dist_grad, grads.lambda_grad());
  return softplus(-lt.label * phi);
}

}  // namespace

void loss_gradients(const ModelParams& params, std::span<const LabeledTriple> batch,
                    const TrainConfig& config, BatchGradients& grads,
                    bool dense_regularization) {
  grads.clear();
  detail::ScoreWorkspace ws;
  ws.resize(params.k());
  for (const LabeledTriple& lt : batch) {
    accumulate_triple(params, lt, config, ws, grads);
  }
  add_regularization(params, config, grads, dense_regularization);
}

namespace {

void adagrad_rows(EmbeddingTable& params, EmbeddingTable& acc, QuatView grad,
                  std::int32_t id, double lr, double eps) {
  auto p = params.mutable_row(static_cast<std::size_t>(id));
  auto a = acc.mutable_row(static_cast<std::size_t>(id));
  const std::size_t k = p.size();
  auto update = [&](std::span<double> pv, std::span<double> av, std::span<const double> gv) {
    for (std::size_t m = 0; m < k; ++m) {
      const double g = gv[m];
      av[m] += g * g;
      pv[m] -= lr * g / (std::sqrt(av[m]) + eps);
    }
  };
  update(p.re, a.re, grad.re);
  update(p.im_i, a.im_i, grad.im_i);
  update(p.im_j, a.im_j, grad.im_j);
  update(p.im_k, a.im_k, grad.im_k);
}

}  // namespace

void adagrad_step(ModelParams& params, const BatchGradients& grads, AdagradState& state,
                  double lr) {
  for (const auto id : grads.touched_entities()) {
    adagrad_rows(params.entities, state.entities, grads.entity_row(id), id, lr, state.epsilon);
  }
  for (const auto id : grads.touched_rotations()) {
    adagrad_rows(params.rotations, state.rotations, grads.rotation_row(id), id, lr,
                 state.epsilon);
  }
  for (const auto id : grads.touched_distances()) {
    adagrad_rows(params.distances, state.distances, grads.distance_row(id), id, lr,
                 state.epsilon);
  }
  const double g = grads.lambda_grad();
  if (g != 0.0) {
    state.lambda += g * g;
    params.lambda -= lr * g / (std::sqrt(state.lambda) + state.epsilon);
  }
}

TrainResult train(const TripleStore& store, const TrainConfig& config,
                  const TrainObserver& observer) {
  config.validate();
  if (store.train.empty()) throw ConfigError("train split is empty");

  Rng init_rng = make_rng(config.seed, 0x1a17);
  Rng shuffle_rng = make_rng(config.seed, 0x5487);
  Rng negative_rng = make_rng(config.seed, 0x9e61);

  TrainResult result;
  result.params = init_params(store.num_entities(), store.num_relations(), config.k, init_rng);
  if (config.epochs == 0) return result;

  ModelParams& params = result.params;
  AdagradState state(store.num_entities(), store.num_relations(), config.k,
                     config.adagrad_eps);
  BatchGradients grads(store.num_entities(), store.num_relations(), config.k);
  detail::ScoreWorkspace ws;
  ws.resize(config.k);

  const std::size_t num_train = store.train.size();
  const std::size_t batch_size =
      (num_train + static_cast<std::size_t>(config.num_batches) - 1) /
      static_cast<std::size_t>(config.num_batches);
  std::vector<std::size_t> order(num_train);
  for (std::size_t i = 0; i < num_train; ++i) order[i] = i;

  ModelParams best_params;
  bool have_best = false;

  auto run_validation = [&](int epoch) {
    const EvalReport report =
        evaluate(params, store, Split::valid, config.variant, config.eval_threads);
    ValidationRecord record{epoch, report.overall.mr, report.overall.mrr,
                            report.overall.hits1, report.overall.hits3,
                            report.overall.hits10};
    result.log.validations.push_back(record);
    if (!have_best || record.hits10 > result.log.best_hits10) {
      have_best = true;
      best_params = params;
      result.log.best_hits10 = record.hits10;
      result.log.best_epoch = epoch;
    }
    if (observer) {
      TrainEvent event;
      event.validation = &record;
      observer(event);
    }
  };

  const bool can_validate = !store.valid.empty();

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    const auto epoch_start = std::chrono::steady_clock::now();
    // Fisher-Yates with the pinned generator.
    for (std::size_t i = num_train; i > 1; --i) {
      const std::size_t j = uniform_index(shuffle_rng, i);
      std::swap(order[i - 1], order[j]);
    }

    double data_loss = 0.0;
    std::size_t cursor = 0;
    for (int batch = 0; batch < config.num_batches && cursor < num_train; ++batch) {
      const std::size_t end = std::min(cursor + batch_size, num_train);
      grads.clear();
      double batch_loss = 0.0;
      for (std::size_t i = cursor; i < end; ++i) {
        const Triple& positive = store.train[order[i]];
        batch_loss += accumulate_triple(params, {positive, 1.0}, config, ws, grads);
        for (const Triple& negative :
             sample_negatives(store, positive, config.neg, negative_rng)) {
          batch_loss += accumulate_triple(params, {negative, -1.0}, config, ws, grads);
        }
      }
      if (!std::isfinite(batch_loss)) {
        double max_abs = std::fabs(params.lambda);
        for (const auto* table : {&params.entities, &params.rotations, &params.distances}) {
          for (const double x : table->flat()) max_abs = std::max(max_abs, std::fabs(x));
        }
        throw TrainingDivergedError(epoch, batch + 1, params.lambda, max_abs);
      }
      add_regularization(params, config, grads, /*dense=*/false);
      adagrad_step(params, grads, state, config.lr);
      data_loss += batch_loss;
      cursor = end;
    }

    // Epoch loss = data terms summed over the epoch + the η terms at the
    // epoch boundary.
    const double reg =
        config.eta1 * squared_sum(params.entities.flat()) +
        config.eta2 *
            (squared_sum(params.rotations.flat()) + squared_sum(params.distances.flat()));
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - epoch_start).count();
    result.log.epochs.push_back({epoch, data_loss + reg, seconds});
    if (observer) {
      TrainEvent event;
      event.epoch = &result.log.epochs.back();
      observer(event);
    }

    if (can_validate && (epoch % config.eval_every == 0 || epoch == config.epochs)) {
      run_validation(epoch);
    }
  }

  if (have_best) result.params = std::move(best_params);
  return result;
}

}  // namespace qbr
