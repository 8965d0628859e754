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

#include <doctest.h>

#include <cmath>
#include <vector>

#include "edcrir/error.hpp"
#include "edcrir/neural/loss.hpp"
#include "edcrir/neural/model.hpp"
#include "edcrir/rng.hpp"
#include "oracles.hpp"

using namespace edcrir;
using namespace edcrir::neural;

namespace {

const ModelDims kTiny{16, 4, 8, 10};

Eigen::MatrixXd random_matrix(Eigen::Index r, Eigen::Index c, Rng& rng, double lo, double hi) {
  Eigen::MatrixXd m(r, c);
  for (Eigen::Index j = 0; j < c; ++j)
    for (Eigen::Index i = 0; i < r; ++i) m(i, j) = rng.uniform(lo, hi);
  return m;
}

Eigen::MatrixXd decaying_targets(Eigen::Index n, Eigen::Index batch, Rng& rng) {
  Eigen::MatrixXd y(n, batch);
  for (Eigen::Index b = 0; b < batch; ++b) {
    double v = 1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      y(i, b) = v;
      v *= rng.uniform(0.6, 0.95);
    }
  }
  return y;
}

ModelParams perturbed_init(const ModelDims& d, std::uint64_t seed) {
  // Non-zero biases everywhere so every block carries gradient.
  ModelParams p = ModelParams::initialize(d, seed);
  Rng rng(seed + 1);
  for (auto& b : p.blocks())
    for (double& v : b.values) v += rng.uniform(-0.3, 0.3);
  return p;
}

}  // namespace

TEST_CASE("shapes, initialization and parameter count") {
  const ModelDims full;
  const ModelParams p = ModelParams::initialize(full, 1);
  CHECK(p.gate_input_weights.rows() == 512);
  CHECK(p.gate_input_weights.cols() == 16);
  CHECK(p.gate_recurrent_weights.rows() == 512);
  CHECK(p.gate_recurrent_weights.cols() == 128);
  CHECK(p.dense_weights.rows() == 2048);
  CHECK(p.output_weights.rows() == 1440);
  CHECK(p.output_weights.cols() == 2048);
  CHECK(p.parameter_count() ==
        std::size_t(512 * 16 + 512 * 128 + 512 + 2048 * 128 + 2048 + 1440 * 2048 + 1440));
  for (int i = 0; i < 128; ++i) {
    CHECK(p.gate_bias(i) == 0.0);
    CHECK(p.gate_bias(128 + i) == 1.0);  // forget gate
  }
  const double limit = std::sqrt(6.0 / (2048 + 1440));
  CHECK(p.output_weights.cwiseAbs().maxCoeff() <= limit);
  CHECK(p.output_weights.cwiseAbs().maxCoeff() > 0.9 * limit);
  CHECK(p.output_bias.isZero());
  CHECK(ModelParams::initialize(full, 1) == p);
  CHECK_FALSE(ModelParams::initialize(full, 2) == p);
}

TEST_CASE("all-zero weights output the output bias") {
  ModelParams p = ModelParams::zeros(kTiny);
  for (int i = 0; i < kTiny.output; ++i) p.output_bias(i) = 0.1 * i;
  std::vector<double> x(16, 0.7);
  const auto y = forward(p, x);
  for (int i = 0; i < kTiny.output; ++i) CHECK(y[i] == doctest::Approx(0.1 * i));
}

TEST_CASE("forward matches a scalar re-implementation of the cell") {
  const ModelParams p = perturbed_init(kTiny, 5);
  Rng rng(6);
  std::vector<double> x(16);
  for (double& v : x) v = rng.uniform();
  const auto y = forward(p, x);
  const int h = kTiny.hidden;
  auto sig = [](double z) { return 1.0 / (1.0 + std::exp(-z)); };
  std::vector<double> hidden(h);
  for (int k = 0; k < h; ++k) {
    double z[4];
    for (int g = 0; g < 4; ++g) {
      z[g] = p.gate_bias(g * h + k);
      for (int j = 0; j < 16; ++j) z[g] += p.gate_input_weights(g * h + k, j) * x[j];
    }
    const double c = sig(z[0]) * std::tanh(z[2]);  // c0 = 0
    hidden[k] = sig(z[3]) * std::tanh(c);
  }
  std::vector<double> dense(kTiny.dense);
  for (int k = 0; k < kTiny.dense; ++k) {
    double s = p.dense_bias(k);
    for (int j = 0; j < h; ++j) s += p.dense_weights(k, j) * hidden[j];
    dense[k] = std::max(s, 0.0);
  }
  for (int k = 0; k < kTiny.output; ++k) {
    double s = p.output_bias(k);
    for (int j = 0; j < kTiny.dense; ++j) s += p.output_weights(k, j) * dense[j];
    CHECK(y[k] == doctest::Approx(s).epsilon(1e-12));
  }
}

TEST_CASE("eval is deterministic; train-mode dropout depends on the seed") {
  const ModelParams p = ModelParams::initialize(kTiny, 2);
  std::vector<double> x(16, 0.5);
  CHECK(forward(p, x) == forward(p, x));
  const auto a = forward(p, x, {Mode::kTrain, 0.3, 1});
  const auto b = forward(p, x, {Mode::kTrain, 0.3, 2});
  CHECK(a == forward(p, x, {Mode::kTrain, 0.3, 1}));
  CHECK(a != b);
  CHECK(forward(p, x, {Mode::kTrain, 0.0, 1}) == forward(p, x));
}

TEST_CASE("non-finite parameters are rejected") {
  ModelParams p = ModelParams::zeros(kTiny);
  p.dense_bias(3) = NAN;
  CHECK_THROWS_AS(forward(p, std::vector<double>(16, 0.0)), NumericError);
  CHECK_THROWS_AS(forward(ModelParams::zeros(kTiny), std::vector<double>(15, 0.0)), ValidationError);
}

TEST_CASE("backward matches finite differences for every block") {
  Rng rng(7);
  for (int draw = 0; draw < 5; ++draw) {
    for (Eigen::Index batch : {1, 3}) {
      ModelParams p = perturbed_init(kTiny, 50 + draw);
      const Eigen::MatrixXd x = random_matrix(16, batch, rng, 0.0, 1.0);
      const Eigen::MatrixXd y = decaying_targets(kTiny.output, batch, rng);
      const ForwardOptions opts{batch == 1 ? Mode::kEval : Mode::kTrain, 0.3, 99u + draw};
      const LossWeights w{1.0, 0.5};

      ForwardCache cache;
      Eigen::MatrixXd g_out;
      composite_loss_batch(forward(p, x, opts, &cache), y, w, &g_out);
      const ModelParams grads = backward(p, cache, g_out);

      auto params_blocks = p.blocks();
      const auto grad_blocks = grads.blocks();
      for (std::size_t b = 0; b < params_blocks.size(); ++b) {
        auto& values = params_blocks[b].values;
        double diff2 = 0.0, norm_a = 0.0, norm_f = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i) {
          const double saved = values[i];
          const double h = 1e-6;
          values[i] = saved + h;
          const double fp = composite_loss_batch(forward(p, x, opts), y, w);
          values[i] = saved - h;
          const double fm = composite_loss_batch(forward(p, x, opts), y, w);
          values[i] = saved;
          const double fd = (fp - fm) / (2 * h);
          const double an = grad_blocks[b].values[i];
          diff2 += (fd - an) * (fd - an);
          norm_a += an * an;
          norm_f += fd * fd;
        }
        const double scale = std::max({std::sqrt(norm_a), std::sqrt(norm_f), 1e-12});
        INFO("block " << params_blocks[b].name << " batch " << batch);
        CHECK(std::sqrt(diff2) / scale < 1e-4);
      }
    }
  }
}

TEST_CASE("recurrent weights get no gradient from a zero initial state") {
  ModelParams p = perturbed_init(kTiny, 3);
  Rng rng(8);
  ForwardCache cache;
  const Eigen::MatrixXd x = random_matrix(16, 2, rng, 0, 1);
  forward(p, x, {}, &cache);
  const ModelParams g = backward(p, cache, random_matrix(10, 2, rng, -1, 1));
  CHECK(g.gate_recurrent_weights.isZero(0.0));
}

TEST_CASE("stationary point: prediction equals target through the output bias") {
  ModelParams p = ModelParams::zeros(kTiny);
  Rng rng(9);
  const Eigen::MatrixXd y = decaying_targets(kTiny.output, 1, rng);
  p.output_bias = y.col(0);
  ForwardCache cache;
  Eigen::MatrixXd g_out;
  const double loss = composite_loss_batch(forward(p, random_matrix(16, 1, rng, 0, 1), {}, &cache), y, {}, &g_out);
  CHECK(loss == 0.0);
  const ModelParams g = backward(p, cache, g_out);
  for (const auto& b : g.blocks())
    for (double v : b.values) CHECK(v == 0.0);
}

TEST_CASE("batch gradient is the mean of per-sample gradients") {
  const ModelParams p = perturbed_init(kTiny, 11);
  Rng rng(12);
  const Eigen::MatrixXd x = random_matrix(16, 4, rng, 0, 1);
  const Eigen::MatrixXd y = decaying_targets(kTiny.output, 4, rng);
  ForwardCache cache;
  Eigen::MatrixXd g_out;
  composite_loss_batch(forward(p, x, {}, &cache), y, {}, &g_out);
  const ModelParams batch = backward(p, cache, g_out);

  ModelParams mean = ModelParams::zeros(kTiny);
  for (Eigen::Index b = 0; b < 4; ++b) {
    ForwardCache c1;
    Eigen::MatrixXd g1;
    composite_loss_batch(forward(p, x.col(b), {}, &c1), y.col(b), {}, &g1);
    const ModelParams gb = backward(p, c1, g1);
    auto mb = mean.blocks();
    const auto sb = gb.blocks();
    for (std::size_t k = 0; k < mb.size(); ++k)
      for (std::size_t i = 0; i < mb[k].values.size(); ++i) mb[k].values[i] += sb[k].values[i] / 4.0;
  }
  const auto a = batch.blocks();
  const auto m = mean.blocks();
  for (std::size_t k = 0; k < a.size(); ++k)
    for (std::size_t i = 0; i < a[k].values.size(); ++i)
      CHECK(std::abs(a[k].values[i] - m[k].values[i]) <= 1e-12);
}
