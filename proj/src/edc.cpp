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

#include "edcrir/edc.hpp"

#include <algorithm>
#include <cmath>

#include "edcrir/error.hpp"

namespace edcrir {

std::vector<double> schroeder_integral(std::span<const double> samples) {
  std::vector<double> out(samples.size());
  double acc = 0.0;
  for (std::size_t i = samples.size(); i-- > 0;) {
    acc += samples[i] * samples[i];
    out[i] = acc;
  }
  return out;
}

Edc compute_edc(const Rir& rir) {
  validate_rir(rir);
  Edc edc;
  edc.sample_rate = rir.sample_rate;
  edc.values = schroeder_integral(rir.samples);
  const double total = edc.values.front();
  if (!(total > 0.0)) throw ValidationError("RIR has zero energy; EDC is undefined");
  for (double& v : edc.values) v /= total;
  return edc;
}

void validate_edc(const Edc& edc, double tol) {
  if (edc.values.empty()) throw ValidationError("EDC is empty");
  if (std::abs(edc.values.front() - 1.0) > tol) throw ValidationError("EDC[0] != 1");
  for (std::size_t i = 0; i < edc.values.size(); ++i) {
    const double v = edc.values[i];
    if (!(v >= 0.0 && v <= 1.0 + tol)) throw ValidationError("EDC value outside [0, 1]");
    if (i > 0 && v > edc.values[i - 1] + 1e-15) throw ValidationError("EDC is increasing");
  }
}

std::vector<double> to_db(std::span<const double> values, double floor_db) {
  const double floor_lin = std::pow(10.0, floor_db / 10.0);
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    out[i] = values[i] > floor_lin ? 10.0 * std::log10(values[i]) : floor_db;
  }
  return out;
}

std::vector<double> to_db(const Edc& edc, double floor_db) { return to_db(edc.values, floor_db); }

namespace {

std::size_t grid_factor(double rate) {
  const double k = rate / kGridRate;
  if (!(k >= 1.0) || k != std::round(k)) {
    throw ValidationError("sample rate must be an integer multiple of 480 Hz");
  }
  return static_cast<std::size_t>(k);
}

}  // namespace

EdcGrid downsample_edc(const Edc& edc) {
  if (edc.values.empty()) throw ValidationError("EDC is empty");
  const std::size_t k = grid_factor(edc.sample_rate);
  EdcGrid grid;
  const std::size_t available = (edc.values.size() + k - 1) / k;
  const std::size_t copied = std::min(available, kGridLength);
  for (std::size_t n = 0; n < copied; ++n) grid.values[n] = edc.values[n * k];
  for (std::size_t n = copied; n < kGridLength; ++n) grid.values[n] = edc.values.back();
  return grid;
}

Edc upsample_edc(const EdcGrid& grid, double target_rate, double floor_db) {
  if (grid.values.empty()) throw ValidationError("EDC grid is empty");
  const std::size_t k = grid_factor(target_rate);
  const double floor_lin = std::pow(10.0, floor_db / 10.0);
  const std::size_t len = grid.values.size();
  Edc out;
  out.sample_rate = target_rate;
  out.values.resize(len * k);
  for (std::size_t n = 0; n < len; ++n) {
    const double a = grid.values[n];
    const double b = n + 1 < len ? grid.values[n + 1] : a;
    double* dst = out.values.data() + n * k;
    dst[0] = a;
    const bool log_domain = a > floor_lin && b > floor_lin;
    const double la = log_domain ? std::log(a) : 0.0;
    const double lb = log_domain ? std::log(b) : 0.0;
    for (std::size_t j = 1; j < k; ++j) {
      const double t = static_cast<double>(j) / static_cast<double>(k);
      const double v = log_domain ? std::exp(la + t * (lb - la)) : a + t * (b - a);
      dst[j] = std::clamp(v, std::min(a, b), std::max(a, b));
    }
    if (a == b) std::fill(dst, dst + k, a);
  }
  return out;
}

std::vector<double> sanitize_curve(std::span<const double> values) {
  if (values.empty()) throw ValidationError("empty curve");
  std::vector<double> out(values.size());
  double running = 1.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = std::isfinite(values[i]) ? std::clamp(values[i], 0.0, 1.0) : 0.0;
    running = std::min(running, v);
    out[i] = running;
  }
  const double first = out.front();
  if (!(first > 0.0)) {
    std::fill(out.begin(), out.end(), 0.0);
    out.front() = 1.0;
    return out;
  }
  for (double& v : out) v = std::min(v / first, 1.0);
  out.front() = 1.0;
  return out;
}

}  // namespace edcrir
