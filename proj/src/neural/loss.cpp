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

#include "edcrir/neural/loss.hpp"

#include <cmath>

#include "edcrir/error.hpp"

namespace edcrir::neural {

std::vector<double> decay_envelope(std::span<const double> curve) {
  std::vector<double> r(curve.size(), 0.0);
  for (std::size_t t = 1; t < curve.size(); ++t) {
    r[t] = std::sqrt(std::max(curve[t - 1] - curve[t], 0.0));
  }
  return r;
}

namespace {

double loss_into(const double* pred, const double* target, std::size_t n,
                 const LossWeights& w, double grad_scale, double* grad) {
  if (n < 2) throw ValidationError("composite loss needs at least two points");
  const double inv_n = 1.0 / static_cast<double>(n);
  const double inv_m = 1.0 / static_cast<double>(n - 1);
  double curve_term = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    const double e = pred[t] - target[t];
    curve_term += e * e;
    if (grad) grad[t] = grad_scale * 2.0 * w.alpha * e * inv_n;
  }
  double envelope_term = 0.0;
  for (std::size_t t = 1; t < n; ++t) {
    const double dp = pred[t - 1] - pred[t];
    const double dt = target[t - 1] - target[t];
    const double rp = dp > 0.0 ? std::sqrt(dp) : 0.0;
    const double rt = dt > 0.0 ? std::sqrt(dt) : 0.0;
    const double e = rp - rt;
    envelope_term += e * e;
    if (grad && dp > 0.0) {
      const double g = grad_scale * w.beta * inv_m * e / rp;  // 2 e * 1/(2 sqrt dp)
      grad[t - 1] += g;
      grad[t] -= g;
    }
  }
  return w.alpha * curve_term * inv_n + w.beta * envelope_term * inv_m;
}

}  // namespace

LossResult composite_loss(std::span<const double> pred, std::span<const double> target,
                          const LossWeights& weights) {
  if (pred.size() != target.size()) throw ValidationError("loss inputs differ in length");
  if (weights.alpha < 0.0 || weights.beta < 0.0) {
    throw ValidationError("loss weights must be non-negative");
  }
  LossResult out;
  out.gradient.resize(pred.size());
  out.value = loss_into(pred.data(), target.data(), pred.size(), weights, 1.0, out.gradient.data());
  return out;
}

double composite_loss_batch(const Eigen::MatrixXd& pred, const Eigen::MatrixXd& target,
                            const LossWeights& weights, Eigen::MatrixXd* gradient) {
  if (pred.rows() != target.rows() || pred.cols() != target.cols()) {
    throw ValidationError("loss inputs differ in shape");
  }
  if (pred.cols() == 0) throw ValidationError("empty batch");
  if (weights.alpha < 0.0 || weights.beta < 0.0) {
    throw ValidationError("loss weights must be non-negative");
  }
  const double inv_b = 1.0 / static_cast<double>(pred.cols());
  if (gradient) gradient->resize(pred.rows(), pred.cols());
  double total = 0.0;
  const auto n = static_cast<std::size_t>(pred.rows());
  for (Eigen::Index b = 0; b < pred.cols(); ++b) {
    total += loss_into(pred.col(b).data(), target.col(b).data(), n, weights, inv_b,
                       gradient ? gradient->col(b).data() : nullptr);
  }
  return total * inv_b;
}

}  // namespace edcrir::neural
