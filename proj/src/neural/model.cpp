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

#include "edcrir/neural/model.hpp"

#include <cmath>

#include "edcrir/error.hpp"
#include "edcrir/rng.hpp"

namespace edcrir::neural {

namespace {

void check_dims(const ModelDims& d) {
  if (d.input < 1 || d.hidden < 1 || d.dense < 1 || d.output < 2) {
    throw ValidationError("model dimensions must be positive (output >= 2)");
  }
}

void xavier_uniform(Eigen::MatrixXd& m, int fan_in, int fan_out, Rng& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = rng.uniform(-limit, limit);
  }
}

Eigen::MatrixXd sigmoid(const Eigen::MatrixXd& z) {
  return (1.0 + (-z.array()).exp()).inverse().matrix();
}

Eigen::MatrixXd dropout_mask(Eigen::Index rows, Eigen::Index cols, double p, Rng& rng) {
  Eigen::MatrixXd mask(rows, cols);
  const double keep_scale = 1.0 / (1.0 - p);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) mask(i, j) = rng.uniform() < p ? 0.0 : keep_scale;
  }
  return mask;
}

template <typename Block, typename Self>
std::vector<Block> collect_blocks(Self& p) {
  auto mat = [](const char* name, auto& m) {
    return Block{name, static_cast<int>(m.rows()), static_cast<int>(m.cols()),
                 {m.data(), static_cast<std::size_t>(m.size())}};
  };
  return {mat("gate_input_weights", p.gate_input_weights),
          mat("gate_recurrent_weights", p.gate_recurrent_weights),
          mat("gate_bias", p.gate_bias),
          mat("dense_weights", p.dense_weights),
          mat("dense_bias", p.dense_bias),
          mat("output_weights", p.output_weights),
          mat("output_bias", p.output_bias)};
}

}  // namespace

ModelParams ModelParams::zeros(const ModelDims& d) {
  check_dims(d);
  ModelParams p;
  p.dims = d;
  p.gate_input_weights = Eigen::MatrixXd::Zero(4 * d.hidden, d.input);
  p.gate_recurrent_weights = Eigen::MatrixXd::Zero(4 * d.hidden, d.hidden);
  p.gate_bias = Eigen::VectorXd::Zero(4 * d.hidden);
  p.dense_weights = Eigen::MatrixXd::Zero(d.dense, d.hidden);
  p.dense_bias = Eigen::VectorXd::Zero(d.dense);
  p.output_weights = Eigen::MatrixXd::Zero(d.output, d.dense);
  p.output_bias = Eigen::VectorXd::Zero(d.output);
  return p;
}

ModelParams ModelParams::initialize(const ModelDims& d, std::uint64_t seed) {
  ModelParams p = zeros(d);
  Rng rng(seed);
  xavier_uniform(p.gate_input_weights, d.input, 4 * d.hidden, rng);
  xavier_uniform(p.gate_recurrent_weights, d.hidden, 4 * d.hidden, rng);
  xavier_uniform(p.dense_weights, d.hidden, d.dense, rng);
  xavier_uniform(p.output_weights, d.dense, d.output, rng);
  p.gate_bias.segment(d.hidden, d.hidden).setOnes();
  return p;
}

std::vector<ParamBlock> ModelParams::blocks() { return collect_blocks<ParamBlock>(*this); }

std::vector<ConstParamBlock> ModelParams::blocks() const {
  return collect_blocks<ConstParamBlock>(*this);
}

std::size_t ModelParams::parameter_count() const {
  std::size_t n = 0;
  for (const auto& b : blocks()) n += b.values.size();
  return n;
}

void ModelParams::check_finite() const {
  for (const auto& b : blocks()) {
    for (double v : b.values) {
      if (!std::isfinite(v)) throw NumericError("non-finite parameter in block " + b.name);
    }
  }
}

bool ModelParams::operator==(const ModelParams& other) const {
  if (!(dims == other.dims)) return false;
  const auto a = blocks();
  const auto b = other.blocks();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].values.size() != b[i].values.size()) return false;
    if (!std::equal(a[i].values.begin(), a[i].values.end(), b[i].values.begin())) return false;
  }
  return true;
}

Eigen::MatrixXd forward(const ModelParams& p, const Eigen::MatrixXd& x,
                        const ForwardOptions& options, ForwardCache* cache) {
  const ModelDims& d = p.dims;
  if (x.rows() != d.input) throw ValidationError("forward: input has the wrong feature count");
  p.check_finite();
  const bool train = options.mode == Mode::kTrain && options.dropout > 0.0;
  if (train && !(options.dropout < 1.0)) throw ValidationError("dropout must be < 1");
  const Eigen::Index batch = x.cols();
  const Eigen::Index h = d.hidden;

  ForwardCache local;
  ForwardCache& c = cache ? *cache : local;
  c.x = x;
  c.h0 = Eigen::MatrixXd::Zero(h, batch);
  c.c0 = Eigen::MatrixXd::Zero(h, batch);

  Eigen::MatrixXd z = p.gate_input_weights * x + p.gate_recurrent_weights * c.h0;
  z.colwise() += p.gate_bias;
  c.in_gate = sigmoid(z.middleRows(0, h));
  c.forget_gate = sigmoid(z.middleRows(h, h));
  c.cell_gate = z.middleRows(2 * h, h).array().tanh().matrix();
  c.out_gate = sigmoid(z.middleRows(3 * h, h));
  c.cell = (c.forget_gate.array() * c.c0.array() + c.in_gate.array() * c.cell_gate.array()).matrix();
  c.cell_tanh = c.cell.array().tanh().matrix();
  const Eigen::MatrixXd lstm_out = (c.out_gate.array() * c.cell_tanh.array()).matrix();

  Rng rng(options.dropout_seed);
  if (train) {
    c.lstm_mask = dropout_mask(h, batch, options.dropout, rng);
  } else {
    c.lstm_mask = Eigen::MatrixXd::Ones(h, batch);
  }
  c.lstm_dropped = (lstm_out.array() * c.lstm_mask.array()).matrix();

  c.dense_pre = p.dense_weights * c.lstm_dropped;
  c.dense_pre.colwise() += p.dense_bias;
  const Eigen::MatrixXd dense_out = c.dense_pre.cwiseMax(0.0);
  if (train) {
    c.dense_mask = dropout_mask(d.dense, batch, options.dropout, rng);
  } else {
    c.dense_mask = Eigen::MatrixXd::Ones(d.dense, batch);
  }
  c.dense_dropped = (dense_out.array() * c.dense_mask.array()).matrix();

  Eigen::MatrixXd y = p.output_weights * c.dense_dropped;
  y.colwise() += p.output_bias;
  return y;
}

std::vector<double> forward(const ModelParams& params, std::span<const double> features,
                            const ForwardOptions& options) {
  Eigen::MatrixXd x(static_cast<Eigen::Index>(features.size()), 1);
  for (std::size_t i = 0; i < features.size(); ++i) x(static_cast<Eigen::Index>(i), 0) = features[i];
  const Eigen::MatrixXd y = forward(params, x, options);
  return {y.data(), y.data() + y.size()};
}

ModelParams backward(const ModelParams& p, const ForwardCache& c,
                     const Eigen::MatrixXd& grad_output) {
  const ModelDims& d = p.dims;
  if (grad_output.rows() != d.output || grad_output.cols() != c.x.cols()) {
    throw ValidationError("backward: gradient shape does not match the forward batch");
  }
  const Eigen::Index h = d.hidden;
  ModelParams g = ModelParams::zeros(d);

  g.output_weights.noalias() = grad_output * c.dense_dropped.transpose();
  g.output_bias = grad_output.rowwise().sum();
  const Eigen::MatrixXd grad_dense_dropped = p.output_weights.transpose() * grad_output;
  const Eigen::MatrixXd grad_dense_pre =
      (grad_dense_dropped.array() * c.dense_mask.array() *
       (c.dense_pre.array() > 0.0).cast<double>())
          .matrix();

  g.dense_weights.noalias() = grad_dense_pre * c.lstm_dropped.transpose();
  g.dense_bias = grad_dense_pre.rowwise().sum();
  const Eigen::MatrixXd grad_lstm_out =
      ((p.dense_weights.transpose() * grad_dense_pre).array() * c.lstm_mask.array()).matrix();

  const Eigen::ArrayXXd grad_out_gate = grad_lstm_out.array() * c.cell_tanh.array();
  const Eigen::ArrayXXd grad_cell =
      grad_lstm_out.array() * c.out_gate.array() * (1.0 - c.cell_tanh.array().square());
  const Eigen::ArrayXXd grad_forget = grad_cell * c.c0.array();
  const Eigen::ArrayXXd grad_in = grad_cell * c.cell_gate.array();
  const Eigen::ArrayXXd grad_cand = grad_cell * c.in_gate.array();

  Eigen::MatrixXd grad_z(4 * h, c.x.cols());
  grad_z.middleRows(0, h) = (grad_in * c.in_gate.array() * (1.0 - c.in_gate.array())).matrix();
  grad_z.middleRows(h, h) =
      (grad_forget * c.forget_gate.array() * (1.0 - c.forget_gate.array())).matrix();
  grad_z.middleRows(2 * h, h) = (grad_cand * (1.0 - c.cell_gate.array().square())).matrix();
  grad_z.middleRows(3 * h, h) =
      (grad_out_gate * c.out_gate.array() * (1.0 - c.out_gate.array())).matrix();

  g.gate_input_weights.noalias() = grad_z * c.x.transpose();
  g.gate_recurrent_weights.noalias() = grad_z * c.h0.transpose();
  g.gate_bias = grad_z.rowwise().sum();
  return g;
}

}  // namespace edcrir::neural
