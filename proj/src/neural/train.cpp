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

#include "edcrir/neural/train.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include "edcrir/error.hpp"
#include "edcrir/rng.hpp"

namespace edcrir::neural {

bool TrainConfig::operator==(const TrainConfig& o) const {
  return dims == o.dims && adam.learning_rate == o.adam.learning_rate &&
         adam.beta1 == o.adam.beta1 && adam.beta2 == o.adam.beta2 &&
         adam.epsilon == o.adam.epsilon && dropout == o.dropout && loss.alpha == o.loss.alpha &&
         loss.beta == o.loss.beta && max_epochs == o.max_epochs && patience == o.patience &&
         batch_size == o.batch_size && seed == o.seed;
}

void validate(const TrainConfig& c) {
  if (!(c.adam.learning_rate >= 0.0)) throw ValidationError("learning_rate must be >= 0");
  if (!(c.adam.beta1 >= 0.0 && c.adam.beta1 < 1.0) || !(c.adam.beta2 >= 0.0 && c.adam.beta2 < 1.0)) {
    throw ValidationError("Adam betas must lie in [0, 1)");
  }
  if (!(c.adam.epsilon > 0.0)) throw ValidationError("adam_epsilon must be > 0");
  if (!(c.dropout >= 0.0 && c.dropout < 1.0)) throw ValidationError("dropout must lie in [0, 1)");
  if (!(c.loss.alpha >= 0.0 && c.loss.beta >= 0.0)) {
    throw ValidationError("loss weights alpha, beta must be >= 0");
  }
  if (c.max_epochs < 1) throw ValidationError("max_epochs must be >= 1");
  if (c.patience < 1) throw ValidationError("patience must be >= 1");
  if (c.batch_size < 1) throw ValidationError("batch_size must be >= 1");
}

TrainConfig train_config_from_key_values(const KeyValues& kv, TrainConfig c) {
  auto as_int = [](const std::string& key, const std::string& v) {
    const double d = parse_double(v, key);
    if (d != std::floor(d)) throw ValidationError(key + " must be an integer");
    return static_cast<long long>(d);
  };
  for (const auto& [key, value] : kv) {
    if (key == "learning_rate") c.adam.learning_rate = parse_double(value, key);
    else if (key == "adam_beta1") c.adam.beta1 = parse_double(value, key);
    else if (key == "adam_beta2") c.adam.beta2 = parse_double(value, key);
    else if (key == "adam_epsilon") c.adam.epsilon = parse_double(value, key);
    else if (key == "dropout") c.dropout = parse_double(value, key);
    else if (key == "alpha") c.loss.alpha = parse_double(value, key);
    else if (key == "beta") c.loss.beta = parse_double(value, key);
    else if (key == "max_epochs") c.max_epochs = static_cast<int>(as_int(key, value));
    else if (key == "patience") c.patience = static_cast<int>(as_int(key, value));
    else if (key == "batch_size") c.batch_size = static_cast<int>(as_int(key, value));
    else if (key == "seed") c.seed = static_cast<std::uint64_t>(as_int(key, value));
    else if (key == "hidden") c.dims.hidden = static_cast<int>(as_int(key, value));
    else if (key == "dense") c.dims.dense = static_cast<int>(as_int(key, value));
    else if (key == "output") c.dims.output = static_cast<int>(as_int(key, value));
    else throw ValidationError("unknown training config key '" + key + "'");
  }
  validate(c);
  return c;
}

void write_train_config(std::ostream& out, const TrainConfig& c) {
  out << "learning_rate=" << format_double(c.adam.learning_rate) << '\n'
      << "adam_beta1=" << format_double(c.adam.beta1) << '\n'
      << "adam_beta2=" << format_double(c.adam.beta2) << '\n'
      << "adam_epsilon=" << format_double(c.adam.epsilon) << '\n'
      << "dropout=" << format_double(c.dropout) << '\n'
      << "alpha=" << format_double(c.loss.alpha) << '\n'
      << "beta=" << format_double(c.loss.beta) << '\n'
      << "max_epochs=" << c.max_epochs << '\n'
      << "patience=" << c.patience << '\n'
      << "batch_size=" << c.batch_size << '\n'
      << "seed=" << c.seed << '\n'
      << "hidden=" << c.dims.hidden << '\n'
      << "dense=" << c.dims.dense << '\n'
      << "output=" << c.dims.output << '\n';
}

void write_training_log(std::ostream& out, const TrainReport& report) {
  out << "epoch,train_loss,val_loss\n";
  for (const EpochRecord& e : report.epochs) {
    out << e.epoch << ',' << format_double(e.train_loss) << ',' << format_double(e.val_loss)
        << '\n';
  }
}

EarlyStopping::EarlyStopping(int patience)
    : patience_(patience), best_loss_(std::numeric_limits<double>::infinity()) {
  if (patience < 1) throw ValidationError("patience must be >= 1");
}

bool EarlyStopping::observe(int epoch, double val_loss) {
  improved_ = val_loss < best_loss_;
  if (improved_) {
    best_loss_ = val_loss;
    best_epoch_ = epoch;
    wait_ = 0;
    return false;
  }
  ++wait_;
  return wait_ >= patience_;
}

namespace {

Eigen::MatrixXd gather(const Eigen::MatrixXd& m, const std::vector<std::size_t>& cols,
                       std::size_t begin, std::size_t end) {
  Eigen::MatrixXd out(m.rows(), static_cast<Eigen::Index>(end - begin));
  for (std::size_t i = begin; i < end; ++i) {
    out.col(static_cast<Eigen::Index>(i - begin)) = m.col(static_cast<Eigen::Index>(cols[i]));
  }
  return out;
}

void check_columns(const TrainingData& data, const std::vector<std::size_t>& cols,
                   const char* which) {
  if (cols.empty()) throw ValidationError(std::string(which) + " split is empty");
  for (std::size_t c : cols) {
    if (c >= static_cast<std::size_t>(data.features.cols())) {
      throw ValidationError(std::string(which) + " split index out of range");
    }
  }
}

constexpr std::size_t kEvalChunk = 256;

}  // namespace

double evaluate_loss(const ModelParams& params, const TrainingData& data,
                     const std::vector<std::size_t>& columns, const LossWeights& weights) {
  check_columns(data, columns, "evaluation");
  double total = 0.0;
  for (std::size_t begin = 0; begin < columns.size(); begin += kEvalChunk) {
    const std::size_t end = std::min(columns.size(), begin + kEvalChunk);
    const Eigen::MatrixXd x = gather(data.features, columns, begin, end);
    const Eigen::MatrixXd y = gather(data.targets, columns, begin, end);
    const Eigen::MatrixXd pred = forward(params, x, {Mode::kEval, 0.0, 0});
    total += composite_loss_batch(pred, y, weights) * static_cast<double>(end - begin);
  }
  return total / static_cast<double>(columns.size());
}

TrainResult train(const TrainingData& data, const DatasetSplit& split, const TrainConfig& config,
                  const EpochObserver& observer) {
  validate(config);
  if (data.features.rows() != config.dims.input || data.targets.rows() != config.dims.output ||
      data.features.cols() != data.targets.cols()) {
    throw ValidationError("training data shape does not match the model dimensions");
  }
  check_columns(data, split.train, "train");
  check_columns(data, split.validation, "validation");

  const auto start = std::chrono::steady_clock::now();
  Rng rng(derive_seed(config.seed, 0));
  ModelParams params = ModelParams::initialize(config.dims, derive_seed(config.seed, 1));
  Adam adam(config.dims, config.adam);
  EarlyStopping stopper(config.patience);

  TrainResult result{params, {}};
  std::vector<std::size_t> order = split.train;
  const auto batch = static_cast<std::size_t>(config.batch_size);
  std::uint64_t step_counter = 0;
  ForwardCache cache;
  Eigen::MatrixXd grad_out;

  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    for (std::size_t i = order.size() - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);

    double epoch_loss = 0.0;
    for (std::size_t begin = 0; begin < order.size(); begin += batch) {
      const std::size_t end = std::min(order.size(), begin + batch);
      const Eigen::MatrixXd x = gather(data.features, order, begin, end);
      const Eigen::MatrixXd y = gather(data.targets, order, begin, end);
      const ForwardOptions opts{Mode::kTrain, config.dropout,
                                derive_seed(config.seed, 1000 + step_counter++)};
      const Eigen::MatrixXd pred = forward(params, x, opts, &cache);
      const double loss = composite_loss_batch(pred, y, config.loss, &grad_out);
      if (!std::isfinite(loss)) throw NumericError("training loss became non-finite");
      epoch_loss += loss * static_cast<double>(end - begin);
      adam.step(params, backward(params, cache, grad_out));
    }

    EpochRecord record{epoch, epoch_loss / static_cast<double>(order.size()),
                       evaluate_loss(params, data, split.validation, config.loss)};
    result.report.epochs.push_back(record);
    if (observer) observer(record);

    const bool stop = stopper.observe(epoch, record.val_loss);
    if (stopper.improved()) result.params = params;
    if (stop) {
      result.report.stop_reason = "early_stopping";
      break;
    }
  }
  if (result.report.stop_reason.empty()) result.report.stop_reason = "max_epochs";
  result.report.best_epoch = stopper.best_epoch();
  result.report.best_val_loss = stopper.best_loss();
  result.report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace edcrir::neural
