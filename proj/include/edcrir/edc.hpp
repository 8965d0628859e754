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

#include <cstddef>
#include <span>
#include <vector>

#include "edcrir/rir.hpp"

namespace edcrir {

inline constexpr std::size_t kGridLength = 1440;
inline constexpr double kGridRate = 480.0;
inline constexpr double kDefaultFloorDb = -120.0;

// Normalized Schroeder decay curve: values[0] == 1, non-increasing, in [0, 1].
struct Edc {
  std::vector<double> values;
  double sample_rate = kDefaultSampleRate;

  std::size_t size() const { return values.size(); }
};

// Fixed-length decay curve on the model grid (3 s at 480 Hz).
struct EdcGrid {
  std::vector<double> values = std::vector<double>(kGridLength, 0.0);
  double grid_rate = kGridRate;

  Edc as_edc() const { return {values, grid_rate}; }
};

// Backward-integrated energy sum_{k >= n} h[k]^2, without normalization.
std::vector<double> schroeder_integral(std::span<const double> samples);

// Normalized Schroeder curve. Throws ValidationError for an empty or
// all-zero RIR.
Edc compute_edc(const Rir& rir);

// Throws ValidationError when an Edc invariant is violated beyond tolerance.
void validate_edc(const Edc& edc, double tol = 1e-12);

std::vector<double> to_db(const Edc& edc, double floor_db = kDefaultFloorDb);
std::vector<double> to_db(std::span<const double> values, double floor_db = kDefaultFloorDb);

// Pointwise subsampling onto the 480 Hz grid; short curves hold their final
// value, long curves are truncated at 3 s. The source rate must be an
// integer multiple of 480 Hz.
EdcGrid downsample_edc(const Edc& edc);

// Log-linear interpolation between grid points (linear where an endpoint is
// below the floor). Exact at grid points; the final grid value is held.
Edc upsample_edc(const EdcGrid& grid, double target_rate = kDefaultSampleRate,
                 double floor_db = kDefaultFloorDb);

// Clamp to [0, 1], running minimum, then divide by the first value. A curve
// whose first value clamps to 0 becomes the impulse curve [1, 0, ...].
std::vector<double> sanitize_curve(std::span<const double> values);

}  // namespace edcrir
