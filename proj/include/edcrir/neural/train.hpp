// Copyright 2026 The edcrir Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "edcrir/io.hpp"
#include "edcrir/neural/adam.hpp"
#include "edcrir/neural/loss.hpp"
#include "edcrir/neural/model.hpp"
#include "edcrir/room.hpp"

namespace edcrir::neural {

struct TrainConfig {
  ModelDims dims;
  AdamConfig adam;
  double dropout = 0.3;
  LossWeights loss;
  int max_epochs = 200;
  int patience = 10;
  int batch_size = 32;
  std::uint64_t seed = 0;

  bool operator==(const TrainConfig& o) const;
};

void validate(const TrainConfig& config);

// Keys: learning_rate, adam_beta1, adam_beta2, adam_epsilon, dropout, alpha,
// beta, max_epochs, patience, batch_size, seed, hidden, dense, output.
// Unknown keys are rejected.
TrainConfig train_config_from_key_values(const KeyValues& kv, TrainConfig base = {});
void write_train_config(std::ostream& out, const TrainConfig& config);

// Column-per-room training matrices.
struct TrainingData {
  Eigen::MatrixXd features;  // I x N, normalized
  Eigen::MatrixXd targets;   // O x N
};

struct EpochRecord {
  int epoch = 0;  // 1-based
  double train_loss = 0.0;
  double val_loss = 0.0;
};

struct TrainReport {
  std::vector<EpochRecord> epochs;
  int best_epoch = 0;
  double best_val_loss = 0.0;
  std::string stop_reason;  // "early_stopping" | "max_epochs"
  double wall_seconds = 0.0;
};

void write_training_log(std::ostream& out, const TrainReport& report);

// Tracks the best validation loss and signals a stop once `patience` epochs
// pass without strict improvement.
class EarlyStopping {
 public:
  explicit EarlyStopping(int patience);

  // Returns true when training should stop after this epoch.
  bool observe(int epoch, double val_loss);
  bool improved() const { return improved_; }
  int best_epoch() const { return best_epoch_; }
  double best_loss() const { return best_loss_; }

 private:
  int patience_;
  int best_epoch_ = 0;
  double best_loss_;
  int wait_ = 0;
  bool improved_ = false;
};

// Mean composite loss over the given columns in eval mode.
double evaluate_loss(const ModelParams& params, const TrainingData& data,
                     const std::vector<std::size_t>& columns, const LossWeights& weights);

struct TrainResult {
  ModelParams params;  // restored from the best validation epoch
  TrainReport report;
};

using EpochObserver = std::function<void(const EpochRecord&)>;

// Mini-batch Adam with per-epoch shuffling, early stopping on the validation
// split and restore-best. Deterministic for a given (data, split, config).
TrainResult train(const TrainingData& data, const DatasetSplit& split,
                  const TrainConfig& config, const EpochObserver& observer = {});

}  // namespace edcrir::neural
