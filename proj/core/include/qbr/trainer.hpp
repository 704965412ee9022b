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
#include <functional>
#include <vector>

#include "qbr/dataset.hpp"
#include "qbr/model.hpp"

namespace qbr {

struct TrainConfig {
  double lr = 0.1;
  std::size_t k = 125;  // component count; embedding dimension n = 4k
  int neg = 5;          // negatives per positive
  double eta1 = 0.5;    // entity-table regularization rate
  double eta2 = 0.01;   // relation-table regularization rate (both tables)
  int num_batches = 100;
  int epochs = 5000;
  std::uint64_t seed = 1;
  ModelVariant variant = ModelVariant::full;
  int eval_every = 100;   // validation cadence in epochs
  int eval_threads = 0;   // ≤ 0: hardware count
  double adagrad_eps = 1e-8;

  void validate() const;  // throws ConfigError
};

struct LabeledTriple {
  Triple triple;
  double label = 1.0;  // +1 observed, −1 corrupted
};

/// Regularized logistic loss of a labeled batch:
///   Σ log(1 + exp(−Y·φ)) + η₁‖E‖₂² + η₂‖R‖₂²
/// where ‖E‖₂² sums squared entries of the entity table and ‖R‖₂² of both
/// relation tables. Data terms use the overflow-safe softplus form.
double loss(const ModelParams& params, std::span<const LabeledTriple> batch,
            const TrainConfig& config);

/// Per-row gradient accumulator backed by full-size scratch tables; only
/// touched rows are ever written or cleared, so reuse across batches is
/// cheap regardless of table size.
class BatchGradients {
 public:
  BatchGradients(std::size_t num_entities, std::size_t num_relations, std::size_t k);

  void clear();
  QuatSpan entity_grad(EntityId id);
  QuatSpan rotation_grad(RelationId id);
  QuatSpan distance_grad(RelationId id);
  double& lambda_grad() { return lambda_; }
  double lambda_grad() const { return lambda_; }

  const std::vector<std::int32_t>& touched_entities() const { return touched_entities_; }
  const std::vector<std::int32_t>& touched_rotations() const { return touched_rotations_; }
  const std::vector<std::int32_t>& touched_distances() const { return touched_distances_; }

  QuatView entity_row(EntityId id) const { return entities_.row(static_cast<std::size_t>(id)); }
  QuatView rotation_row(RelationId id) const {
    return rotations_.row(static_cast<std::size_t>(id));
  }
  QuatView distance_row(RelationId id) const {
    return distances_.row(static_cast<std::size_t>(id));
  }

 private:
  QuatSpan touch(EmbeddingTable& table, std::vector<char>& seen,
                 std::vector<std::int32_t>& touched, std::int32_t id);

  EmbeddingTable entities_, rotations_, distances_;
  std::vector<char> entity_seen_, rotation_seen_, distance_seen_;
  std::vector<std::int32_t> touched_entities_, touched_rotations_, touched_distances_;
  double lambda_ = 0.0;
};

/// Gradient of `loss` accumulated into `grads` (cleared first).
/// With `dense_regularization` the η terms cover every row of every table
/// (the exact batch-loss gradient, as finite differences see it); without
/// it they cover only rows the data terms touch, which is what the sparse
/// training step applies.
void loss_gradients(const ModelParams& params, std::span<const LabeledTriple> batch,
                    const TrainConfig& config, BatchGradients& grads,
                    bool dense_regularization = false);

/// Per-coordinate squared-gradient accumulators mirroring the parameters.
struct AdagradState {
  AdagradState() = default;
  AdagradState(std::size_t num_entities, std::size_t num_relations, std::size_t k,
               double epsilon = 1e-8)
      : entities(num_entities, k),
        rotations(num_relations, k),
        distances(num_relations, k),
        epsilon(epsilon) {}

  EmbeddingTable entities, rotations, distances;
  double lambda = 0.0;
  double epsilon = 1e-8;
};

/// One sparse Adagrad update: for every touched coordinate,
/// acc += g²; param −= lr · g / (√acc + ε). Rows the batch never touched
/// keep both their parameters and accumulators.
void adagrad_step(ModelParams& params, const BatchGradients& grads, AdagradState& state,
                  double lr);

struct EpochRecord {
  int epoch = 0;
  double loss = 0.0;
  double seconds = 0.0;
};

struct ValidationRecord {
  int epoch = 0;
  double mr = 0.0;
  double mrr = 0.0;
  double hits1 = 0.0;
  double hits3 = 0.0;
  double hits10 = 0.0;
};

struct TrainLog {
  std::vector<EpochRecord> epochs;
  std::vector<ValidationRecord> validations;
  int best_epoch = -1;       // epoch of the returned checkpoint
  double best_hits10 = 0.0;  // its validation Hits@10
};

struct TrainResult {
  ModelParams params;  // best validation Hits@10 checkpoint
  TrainLog log;
};

struct TrainEvent {
  const EpochRecord* epoch = nullptr;            // set for epoch events
  const ValidationRecord* validation = nullptr;  // set for validation events
};
using TrainObserver = std::function<void(const TrainEvent&)>;

/// Full training loop: shuffle, split into `num_batches` batches, draw
/// `neg` uniform corruptions per positive, accumulate, one Adagrad step
/// per batch; every `eval_every` epochs (and at the last epoch) run
/// filtered validation and keep the checkpoint with the best Hits@10.
/// Single-threaded updates with a seeded generator: a fixed seed gives a
/// bit-identical result. Throws TrainingDivergedError on non-finite loss.
TrainResult train(const TripleStore& store, const TrainConfig& config,
                  const TrainObserver& observer = {});

}  // namespace qbr
