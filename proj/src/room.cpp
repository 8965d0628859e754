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

#include "edcrir/room.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "edcrir/error.hpp"
#include "edcrir/rng.hpp"

namespace edcrir {

namespace {

constexpr std::array<MaterialPreset, 10> kPresets = {{
    {"painted_concrete", {0.14, 0.14, 0.15, 0.16, 0.18, 0.20, 0.22}},
    {"plaster_on_brick", {0.15, 0.15, 0.16, 0.18, 0.20, 0.22, 0.25}},
    {"glass_window", {0.35, 0.25, 0.18, 0.14, 0.14, 0.14, 0.14}},
    {"gypsum_board", {0.29, 0.21, 0.15, 0.14, 0.15, 0.16, 0.17}},
    {"wood_panel", {0.30, 0.26, 0.21, 0.17, 0.15, 0.15, 0.16}},
    {"carpet_on_concrete", {0.14, 0.16, 0.25, 0.40, 0.55, 0.60, 0.62}},
    {"heavy_curtain", {0.16, 0.31, 0.49, 0.62, 0.65, 0.65, 0.65}},
    {"acoustic_tile", {0.40, 0.45, 0.55, 0.60, 0.62, 0.65, 0.65}},
    {"upholstered_seating", {0.45, 0.55, 0.60, 0.62, 0.62, 0.60, 0.58}},
    {"mineral_wool", {0.50, 0.60, 0.65, 0.65, 0.65, 0.65, 0.65}},
}};

void check_interval(const Interval& iv, const char* what) {
  if (!(iv.lo <= iv.hi) || !std::isfinite(iv.lo) || !std::isfinite(iv.hi)) {
    throw ValidationError(std::string("invalid range for ") + what);
  }
}

Vec3 sample_point(Rng& rng, const PositionBox& box) {
  return {rng.uniform(box.x.lo, box.x.hi), rng.uniform(box.y.lo, box.y.hi),
          rng.uniform(box.z.lo, box.z.hi)};
}

PositionBox inner_box(const RoomSpec& room, double margin) {
  return {{margin, room.length_m - margin},
          {margin, room.width_m - margin},
          {margin, room.height_m - margin}};
}

}  // namespace

double distance(const Vec3& a, const Vec3& b) {
  const double dx = a[0] - b[0];
  const double dy = a[1] - b[1];
  const double dz = a[2] - b[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

void validate_room(const RoomSpec& room) {
  const Vec3 dims = room.dimensions();
  for (double d : dims) {
    if (!(d > 0.0) || !std::isfinite(d)) {
      throw ValidationError("room dimensions must be positive and finite");
    }
  }
  for (const Vec3* p : {&room.source, &room.receiver}) {
    for (int axis = 0; axis < 3; ++axis) {
      const double v = (*p)[axis];
      if (!(v >= 0.0 && v <= dims[axis])) {
        throw ValidationError("source/receiver position outside the room");
      }
    }
  }
  for (double a : room.absorption) {
    if (!(a >= 0.0 && a <= 1.0)) {
      throw ValidationError("absorption coefficients must lie in [0, 1]");
    }
  }
}

std::span<const MaterialPreset> material_presets() { return kPresets; }

RoomSpec sample_room(std::uint64_t seed, const RoomRanges& ranges) {
  check_interval(ranges.length, "length");
  check_interval(ranges.width, "width");
  check_interval(ranges.height, "height");
  check_interval(ranges.distance, "distance");
  if (ranges.length.lo <= 0.0 || ranges.width.lo <= 0.0 || ranges.height.lo <= 0.0) {
    throw ValidationError("room dimensions must be positive");
  }

  Rng rng(seed);
  RoomSpec room;
  room.length_m = rng.uniform(ranges.length.lo, ranges.length.hi);
  room.width_m = rng.uniform(ranges.width.lo, ranges.width.hi);
  room.height_m = rng.uniform(ranges.height.lo, ranges.height.hi);

  const PositionBox inner = inner_box(room, ranges.wall_margin_m);
  const PositionBox src_box = ranges.source_box.value_or(inner);
  const PositionBox rcv_box = ranges.receiver_box.value_or(inner);
  for (const PositionBox* box : {&src_box, &rcv_box}) {
    check_interval(box->x, "position x");
    check_interval(box->y, "position y");
    check_interval(box->z, "position z");
  }

  bool placed = false;
  for (int attempt = 0; attempt < ranges.max_tries; ++attempt) {
    room.source = sample_point(rng, src_box);
    room.receiver = sample_point(rng, rcv_box);
    if (ranges.distance.contains(distance(room.source, room.receiver))) {
      placed = true;
      break;
    }
  }
  if (!placed) {
    throw ValidationError("room sampler: rejection budget exhausted placing source/receiver");
  }

  if (ranges.absorption) {
    const AbsorptionOverride& ov = *ranges.absorption;
    check_interval(ov.range, "absorption");
    if (ov.same_for_all_bands) {
      room.absorption.fill(rng.uniform(ov.range.lo, ov.range.hi));
    } else {
      for (double& a : room.absorption) a = rng.uniform(ov.range.lo, ov.range.hi);
    }
  } else {
    // Floor, ceiling, two L x H walls, two W x H walls.
    const double lw = room.length_m * room.width_m;
    const double lh = room.length_m * room.height_m;
    const double wh = room.width_m * room.height_m;
    const std::array<double, 6> areas = {lw, lw, lh, lh, wh, wh};
    room.absorption.fill(0.0);
    double total = 0.0;
    for (double area : areas) {
      const MaterialPreset& preset = kPresets[rng.below(kPresets.size())];
      for (std::size_t b = 0; b < kNumBands; ++b) {
        room.absorption[b] += area * preset.absorption[b];
      }
      total += area;
    }
    // An area-weighted mean stays inside the presets' per-band envelope; the
    // clamp only removes rounding past the edges.
    for (std::size_t b = 0; b < kNumBands; ++b) {
      double lo = 1.0, hi = 0.0;
      for (const MaterialPreset& p : kPresets) {
        lo = std::min(lo, p.absorption[b]);
        hi = std::max(hi, p.absorption[b]);
      }
      room.absorption[b] = std::clamp(room.absorption[b] / total, lo, hi);
    }
  }
  return room;
}

FeatureVector to_features(const RoomSpec& room) {
  FeatureVector fv{};
  fv[0] = room.length_m;
  fv[1] = room.width_m;
  fv[2] = room.height_m;
  std::copy(room.source.begin(), room.source.end(), fv.begin() + 3);
  std::copy(room.receiver.begin(), room.receiver.end(), fv.begin() + 6);
  std::copy(room.absorption.begin(), room.absorption.end(), fv.begin() + 9);
  return fv;
}

RoomSpec from_features(const FeatureVector& fv) {
  RoomSpec room;
  room.length_m = fv[0];
  room.width_m = fv[1];
  room.height_m = fv[2];
  std::copy(fv.begin() + 3, fv.begin() + 6, room.source.begin());
  std::copy(fv.begin() + 6, fv.begin() + 9, room.receiver.begin());
  std::copy(fv.begin() + 9, fv.end(), room.absorption.begin());
  return room;
}

std::array<const char*, kNumFeatures> feature_names() {
  return {"length_m", "width_m", "height_m", "source_x", "source_y", "source_z",
          "receiver_x", "receiver_y", "receiver_z", "abs_125", "abs_250",
          "abs_500", "abs_1000", "abs_2000", "abs_4000", "abs_8000"};
}

NormStats fit_minmax(std::span<const FeatureVector> features) {
  if (features.empty()) throw ValidationError("fit_minmax: no feature vectors");
  NormStats stats;
  stats.min = features.front();
  stats.max = features.front();
  for (const FeatureVector& fv : features) {
    for (std::size_t i = 0; i < kNumFeatures; ++i) {
      stats.min[i] = std::min(stats.min[i], fv[i]);
      stats.max[i] = std::max(stats.max[i], fv[i]);
    }
  }
  return stats;
}

FeatureVector normalize(const FeatureVector& fv, const NormStats& stats) {
  FeatureVector out{};
  for (std::size_t i = 0; i < kNumFeatures; ++i) {
    const double span = stats.max[i] - stats.min[i];
    if (!(span > 0.0)) {
      out[i] = 0.0;
      continue;
    }
    out[i] = std::clamp((fv[i] - stats.min[i]) / span, 0.0, 1.0);
  }
  return out;
}

FeatureVector denormalize(const FeatureVector& fv, const NormStats& stats) {
  FeatureVector out{};
  for (std::size_t i = 0; i < kNumFeatures; ++i) {
    out[i] = stats.min[i] + fv[i] * (stats.max[i] - stats.min[i]);
  }
  return out;
}

DatasetSplit split_dataset(std::size_t n, std::uint64_t seed) {
  if (n < 5) throw ValidationError("split_dataset: need at least 5 items");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  for (std::size_t i = n - 1; i > 0; --i) {
    std::swap(order[i], order[rng.below(i + 1)]);
  }
  const std::size_t n_val = n / 5;
  const std::size_t n_test = n / 5;
  const std::size_t n_train = n - n_val - n_test;
  DatasetSplit split;
  split.train.assign(order.begin(), order.begin() + n_train);
  split.validation.assign(order.begin() + n_train, order.begin() + n_train + n_val);
  split.test.assign(order.begin() + n_train + n_val, order.end());
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.validation.begin(), split.validation.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

std::string describe(const RoomSpec& room) {
  std::ostringstream os;
  os << room.length_m << "x" << room.width_m << "x" << room.height_m << " m, S=("
     << room.source[0] << "," << room.source[1] << "," << room.source[2] << "), R=("
     << room.receiver[0] << "," << room.receiver[1] << "," << room.receiver[2]
     << "), alpha500=" << room.absorption[2];
  return os.str();
}

}  // namespace edcrir
