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

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace edcrir {

inline constexpr std::size_t kNumBands = 7;
inline constexpr std::size_t kNumFeatures = 16;
inline constexpr std::array<double, kNumBands> kBandCentersHz = {
    125.0, 250.0, 500.0, 1000.0, 2000.0, 4000.0, 8000.0};

using Vec3 = std::array<double, 3>;
using BandAbsorption = std::array<double, kNumBands>;

double distance(const Vec3& a, const Vec3& b);

// Shoebox room with surface-averaged absorption per octave band.
struct RoomSpec {
  double length_m = 0.0;
  double width_m = 0.0;
  double height_m = 0.0;
  Vec3 source{};
  Vec3 receiver{};
  BandAbsorption absorption{};

  double volume() const { return length_m * width_m * height_m; }
  double surface_area() const {
    return 2.0 * (length_m * width_m + length_m * height_m + width_m * height_m);
  }
  Vec3 dimensions() const { return {length_m, width_m, height_m}; }

  bool operator==(const RoomSpec&) const = default;
};

// Throws ValidationError if the geometry is degenerate, a point lies outside
// the box or an absorption coefficient is outside [0, 1].
void validate_room(const RoomSpec& room);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x) const { return x >= lo && x <= hi; }
};

// Per-axis sampling box for a source or receiver, in room coordinates.
struct PositionBox {
  Interval x, y, z;
};

struct AbsorptionOverride {
  Interval range;
  // When true one coefficient is drawn per room and used for every band.
  bool same_for_all_bands = false;
};

// Sampling ranges for the simulated room population. Defaults follow the
// training population: 3-6 m x 3-6 m x 2.5-4 m boxes, 1-4 m source-receiver
// distance, absorption averaged from ten material presets.
struct RoomRanges {
  Interval length{3.0, 6.0};
  Interval width{3.0, 6.0};
  Interval height{2.5, 4.0};
  Interval distance{1.0, 4.0};
  double wall_margin_m = 0.3;
  std::optional<PositionBox> source_box;
  std::optional<PositionBox> receiver_box;
  std::optional<AbsorptionOverride> absorption;
  int max_tries = 10000;
};

struct MaterialPreset {
  const char* name;
  BandAbsorption absorption;
};

// Ten fixed 7-band absorption profiles. Every coefficient lies in
// [0.14, 0.65] and both extremes are attained.
std::span<const MaterialPreset> material_presets();

// Deterministic given (seed, ranges). Throws ValidationError when the ranges
// are malformed and when the distance constraint cannot be met within
// ranges.max_tries attempts.
RoomSpec sample_room(std::uint64_t seed, const RoomRanges& ranges = {});

// Fixed layout: [L, W, H, Sx, Sy, Sz, Rx, Ry, Rz, a125 ... a8k].
using FeatureVector = std::array<double, kNumFeatures>;

FeatureVector to_features(const RoomSpec& room);
RoomSpec from_features(const FeatureVector& features);

std::array<const char*, kNumFeatures> feature_names();

struct NormStats {
  std::array<double, kNumFeatures> min{};
  std::array<double, kNumFeatures> max{};

  bool operator==(const NormStats&) const = default;
};

NormStats fit_minmax(std::span<const FeatureVector> features);

// (x - min) / (max - min), clamped to [0, 1]. Degenerate features map to 0.
FeatureVector normalize(const FeatureVector& fv, const NormStats& stats);
FeatureVector denormalize(const FeatureVector& fv, const NormStats& stats);

struct DatasetSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> validation;
  std::vector<std::size_t> test;
};

// 60/20/20 shuffle split; validation and test take floor(n/5) each and the
// remainder goes to train.
DatasetSplit split_dataset(std::size_t n, std::uint64_t seed);

std::string describe(const RoomSpec& room);

}  // namespace edcrir
