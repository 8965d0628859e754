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
#include <span>
#include <string>
#include <vector>

namespace edcrir::neural {

// Layer sizes. Defaults are the production network: one LSTM step of 128
// units, a 2048-unit ReLU layer and a linear 1440-point output.
struct ModelDims {
  int input = 16;
  int hidden = 128;
  int dense = 2048;
  int output = 1440;

  bool operator==(const ModelDims&) const = default;
};

struct ParamBlock {
  std::string name;
  int rows = 0;
  int cols = 0;
  std::span<double> values;
};

struct ConstParamBlock {
  std::string name;
  int rows = 0;
  int cols = 0;
  std::span<const double> values;
};

// Trainable weights. Gate rows are stacked in the order input, forget, cell,
// output. The same type doubles as a gradient container.
struct ModelParams {
  ModelDims dims;
  Eigen::MatrixXd gate_input_weights;      // 4H x I
  Eigen::MatrixXd gate_recurrent_weights;  // 4H x H
  Eigen::VectorXd gate_bias;               // 4H
  Eigen::MatrixXd dense_weights;           // D x H
  Eigen::VectorXd dense_bias;              // D
  Eigen::MatrixXd output_weights;          // O x D
  Eigen::VectorXd output_bias;             // O

  static ModelParams zeros(const ModelDims& dims);
  // Xavier-uniform weights, zero biases except the forget gate (1.0).
  static ModelParams initialize(const ModelDims& dims, std::uint64_t seed);

  std::vector<ParamBlock> blocks();
  std::vector<ConstParamBlock> blocks() const;
  std::size_t parameter_count() const;

  // Throws NumericError if any parameter is NaN or infinite.
  void check_finite() const;

  bool operator==(const ModelParams& other) const;
};

enum class Mode { kTrain, kEval };

// Intermediate activations kept for the backward pass. Columns are samples.
struct ForwardCache {
  Eigen::MatrixXd x;            // I x B
  Eigen::MatrixXd h0, c0;       // H x B initial state (zero)
  Eigen::MatrixXd in_gate, forget_gate, cell_gate, out_gate;  // H x B
  Eigen::MatrixXd cell;         // H x B
  Eigen::MatrixXd cell_tanh;    // H x B
  Eigen::MatrixXd lstm_mask;    // H x B, inverted dropout scale or 1
  Eigen::MatrixXd lstm_dropped; // H x B
  Eigen::MatrixXd dense_pre;    // D x B
  Eigen::MatrixXd dense_mask;   // D x B
  Eigen::MatrixXd dense_dropped;// D x B
};

struct ForwardOptions {
  Mode mode = Mode::kEval;
  double dropout = 0.3;
  std::uint64_t dropout_seed = 0;
};

// One LSTM step from zero state, dropout, ReLU dense layer, dropout, linear
// output. x is I x B; returns O x B. Dropout is active in kTrain only.
Eigen::MatrixXd forward(const ModelParams& params, const Eigen::MatrixXd& x,
                        const ForwardOptions& options, ForwardCache* cache = nullptr);

std::vector<double> forward(const ModelParams& params, std::span<const double> features,
                            const ForwardOptions& options = {});

// Gradients of sum_b <grad_output[:, b], y[:, b]> with respect to every
// parameter, given the cache of the matching forward call.
ModelParams backward(const ModelParams& params, const ForwardCache& cache,
                     const Eigen::MatrixXd& grad_output);

}  // namespace edcrir::neural
