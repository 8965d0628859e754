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

#include "edcrir/neural/adam.hpp"

#include <cmath>

#include "edcrir/error.hpp"

namespace edcrir::neural {

void adam_update(std::span<double> params, std::span<const double> grads,
                 std::span<double> first_moment, std::span<double> second_moment,
                 std::int64_t step, const AdamConfig& c) {
  const std::size_t n = params.size();
  if (grads.size() != n || first_moment.size() != n || second_moment.size() != n) {
    throw ValidationError("adam_update: size mismatch");
  }
  if (step < 1) throw ValidationError("adam_update: step must be >= 1");
  const double t = static_cast<double>(step);
  const double correction1 = 1.0 - std::pow(c.beta1, t);
  const double correction2 = 1.0 - std::pow(c.beta2, t);
  for (std::size_t i = 0; i < n; ++i) {
    const double g = grads[i];
    first_moment[i] = c.beta1 * first_moment[i] + (1.0 - c.beta1) * g;
    second_moment[i] = c.beta2 * second_moment[i] + (1.0 - c.beta2) * g * g;
    const double m_hat = first_moment[i] / correction1;
    const double v_hat = second_moment[i] / correction2;
    params[i] -= c.learning_rate * m_hat / (std::sqrt(v_hat) + c.epsilon);
  }
}

Adam::Adam(const ModelDims& dims, const AdamConfig& config)
    : config_(config),
      first_moment_(ModelParams::zeros(dims)),
      second_moment_(ModelParams::zeros(dims)) {}

void Adam::step(ModelParams& params, const ModelParams& grads) {
  if (!(params.dims == first_moment_.dims) || !(grads.dims == first_moment_.dims)) {
    throw ValidationError("Adam: parameter shapes do not match the optimizer state");
  }
  ++step_;
  auto p = params.blocks();
  const auto g = grads.blocks();
  auto m = first_moment_.blocks();
  auto v = second_moment_.blocks();
  for (std::size_t i = 0; i < p.size(); ++i) {
    adam_update(p[i].values, g[i].values, m[i].values, v[i].values, step_, config_);
  }
}

}  // namespace edcrir::neural
