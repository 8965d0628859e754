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

#include <span>
#include <vector>

namespace edcrir::neural {

struct LossWeights {
  double alpha = 1.0;  // decay-curve term
  double beta = 0.5;   // impulse-envelope term
};

// Deterministic impulse envelope of a decay curve: r[0] = 0 and
// r[t] = sqrt(max(y[t-1] - y[t], 0)) for t >= 1.
std::vector<double> decay_envelope(std::span<const double> curve);

struct LossResult {
  double value = 0.0;
  std::vector<double> gradient;  // d value / d pred
};

// alpha * mean_t (pred - target)^2
//   + beta * mean_{t >= 1} (r(pred)[t] - r(target)[t])^2
// The square-root chain rule uses subgradient 0 where the max clamps.
LossResult composite_loss(std::span<const double> pred, std::span<const double> target,
                          const LossWeights& weights = {});

// Mean of composite_loss over the columns; the gradient is scaled by 1/B so
// it is the gradient of the mean.
double composite_loss_batch(const Eigen::MatrixXd& pred, const Eigen::MatrixXd& target,
                            const LossWeights& weights, Eigen::MatrixXd* gradient = nullptr);

}  // namespace edcrir::neural
