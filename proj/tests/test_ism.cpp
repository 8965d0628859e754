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

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "edcrir/bands.hpp"
#include "edcrir/edc.hpp"
#include "edcrir/error.hpp"
#include "edcrir/ism.hpp"
#include "edcrir/metrics.hpp"
#include "edcrir/rng.hpp"

using namespace edcrir;

namespace {

RoomSpec cube_room(double alpha) {
  RoomSpec r;
  r.length_m = r.width_m = r.height_m = 5.0;
  r.source = {1.5, 2.5, 2.5};
  r.receiver = {3.5, 2.5, 2.5};
  r.absorption.fill(alpha);
  return r;
}

struct MirrorImage {
  Vec3 pos;
  int order;
};

// Breadth-first mirroring of the source across the six walls. Each image
// position is recorded at the depth it is first reached.
std::vector<MirrorImage> mirror_images(const RoomSpec& room, int max_order) {
  auto key = [](const Vec3& p) {
    return std::array<long, 3>{std::lround(p[0] * 1e6), std::lround(p[1] * 1e6),
                               std::lround(p[2] * 1e6)};
  };
  const Vec3 dims = room.dimensions();
  std::map<std::array<long, 3>, int> seen;
  std::vector<MirrorImage> all{{room.source, 0}};
  std::vector<Vec3> frontier{room.source};
  seen[key(room.source)] = 0;
  for (int order = 1; order <= max_order; ++order) {
    std::vector<Vec3> next;
    for (const Vec3& p : frontier) {
      for (int axis = 0; axis < 3; ++axis) {
        for (double wall : {0.0, dims[axis]}) {
          Vec3 q = p;
          q[axis] = 2.0 * wall - p[axis];
          if (seen.emplace(key(q), order).second) {
            next.push_back(q);
            all.push_back({q, order});
          }
        }
      }
    }
    frontier = std::move(next);
  }
  return all;
}

std::vector<std::pair<double, int>> sorted_arrivals(std::vector<ImageArrival> a) {
  std::vector<std::pair<double, int>> out;
  for (const auto& x : a) out.emplace_back(x.delay_s, x.reflections);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("lattice enumeration agrees with explicit wall mirroring") {
  RoomSpec r = sample_room(77);
  const double duration = 0.03;  // 10.3 m of travel
  const auto lattice = sorted_arrivals(enumerate_images(r, duration));
  // Order 8 is beyond anything that fits in 10.3 m for walls >= 2.5 m apart.
  std::vector<std::pair<double, int>> mirrored;
  for (const MirrorImage& im : mirror_images(r, 8)) {
    const double d = distance(im.pos, r.receiver);
    if (d <= kSpeedOfSound * duration) mirrored.emplace_back(d / kSpeedOfSound, im.order);
  }
  std::sort(mirrored.begin(), mirrored.end());
  REQUIRE(lattice.size() == mirrored.size());
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    CHECK(lattice[i].first == doctest::Approx(mirrored[i].first).epsilon(1e-12));
    CHECK(lattice[i].second == mirrored[i].second);
  }
}

TEST_CASE("first-order arrivals sit at the mirror-path delays") {
  const RoomSpec r = cube_room(0.3);
  // Source (1.5,2.5,2.5), receiver (3.5,2.5,2.5) in a 5 m cube.
  const double direct = 2.0;
  const double x0 = 1.5 + 3.5;              // mirror in x = 0
  const double x5 = (5.0 - 1.5) + 1.5;      // mirror in x = 5: 10 - 1.5 - 3.5
  const double side = std::sqrt(4.0 + 25.0);  // y or z walls: lateral offset 2 * 2.5
  std::multiset<double> expected = {direct, x0, x5, side, side, side, side};

  std::multiset<double> got;
  for (const ImageArrival& a : enumerate_images(r, 0.05))
    if (a.reflections <= 1) got.insert(a.delay_s * kSpeedOfSound);
  REQUIRE(got.size() == expected.size());
  auto e = expected.begin();
  for (double g : got) CHECK(g == doctest::Approx(*e++).epsilon(1e-12));

  // Peaks in the echogram land within one sample of the analytic delays.
  const Rir band = simulate_band_rir(r, 3, 0.05);
  for (double d : {direct, x0}) {
    const double t = d / kSpeedOfSound * kDefaultSampleRate;
    const auto lo = static_cast<std::size_t>(t) - 3;
    const auto it = std::max_element(band.samples.begin() + lo, band.samples.begin() + lo + 7);
    CHECK(std::abs(static_cast<double>(it - band.samples.begin()) - t) <= 1.0);
  }
}

TEST_CASE("fully absorbing walls leave only the direct path") {
  RoomSpec r = cube_room(1.0);
  const Rir band = simulate_band_rir(r, 0, 0.05);
  const double d = 2.0;
  const double t = d / kSpeedOfSound * kDefaultSampleRate;  // 279.88 samples
  const auto centre = static_cast<std::size_t>(std::lround(t));
  double outside = 0.0;
  for (std::size_t i = 0; i < band.size(); ++i)
    if (i + 41 < centre || i > centre + 41) outside = std::max(outside, std::abs(band.samples[i]));
  CHECK(outside == 0.0);
  // The windowed-sinc kernel sums to ~1, so the arrival carries area 1/d.
  double area = 0.0;
  for (double v : band.samples) area += v;
  CHECK(area == doctest::Approx(1.0 / d).epsilon(1e-3));
  const double peak = *std::max_element(band.samples.begin(), band.samples.end());
  CHECK(peak <= 1.0 / d + 1e-6);
  CHECK(peak > 0.9 / d);
}

TEST_CASE("reciprocity: swapping source and receiver gives the same arrivals") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    RoomSpec r = sample_room(derive_seed(9, s));
    RoomSpec swapped = r;
    std::swap(swapped.source, swapped.receiver);
    const auto a = sorted_arrivals(enumerate_images(r, 0.08));
    const auto b = sorted_arrivals(enumerate_images(swapped, 0.08));
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(std::abs(a[i].first - b[i].first) < 1e-9);
      CHECK(a[i].second == b[i].second);
    }
  }
}

TEST_CASE("arrival count grows roughly cubically with duration") {
  const RoomSpec r = sample_room(5);
  const double n1 = static_cast<double>(enumerate_images(r, 0.1).size());
  const double n2 = static_cast<double>(enumerate_images(r, 0.2).size());
  CHECK(n2 / n1 == doctest::Approx(8.0).epsilon(0.1));
  // The lattice holds one image per room volume.
  const double volume_ratio = n1 / (4.0 / 3.0 * 3.14159265 * std::pow(34.3, 3) / r.volume());
  CHECK(volume_ratio == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("source on the receiver is rejected") {
  RoomSpec r = cube_room(0.3);
  r.receiver = r.source;
  CHECK_THROWS_AS(simulate_rir(r, 0.1), ValidationError);
  CHECK_THROWS_AS(simulate_rir(cube_room(0.3), 0.0), ValidationError);
}

TEST_CASE("Eyring formula") {
  CHECK(eyring_t60(100.0, 130.0, 0.3) == doctest::Approx(0.161 * 100.0 / (130.0 * 0.356675)).epsilon(1e-5));
  CHECK(eyring_t60(100.0, 130.0, 0.3) == doctest::Approx(0.347).epsilon(0.002));
  double prev = eyring_t60(100.0, 130.0, 0.01);
  for (double a = 0.02; a < 1.0; a += 0.01) {
    const double t = eyring_t60(100.0, 130.0, a);
    CHECK(t < prev);
    prev = t;
  }
  CHECK(eyring_t60(100.0, 130.0, 1.0) == 0.0);
  CHECK(eyring_t60(800.0, 520.0, 0.3) == doctest::Approx(2.0 * eyring_t60(100.0, 130.0, 0.3)));
}

TEST_CASE("simulated RIRs: length, normalization, determinism") {
  const RoomSpec r = sample_room(12);
  const Rir a = simulate_rir(r, 1.0);
  CHECK(a.size() == 48000u);
  double peak = 0.0;
  for (double v : a.samples) {
    REQUIRE(std::isfinite(v));
    peak = std::max(peak, std::abs(v));
  }
  CHECK(peak == doctest::Approx(1.0).epsilon(1e-12));
  const Rir b = simulate_rir(r, 1.0);
  CHECK(a.samples == b.samples);
}

TEST_CASE("decay rate tracks Eyring; broadband agrees with a single band") {
  // 20 rooms with alpha = 0.3 in every band. The band RIR is the 1 kHz
  // echogram passed through its octave filter, i.e. the band's share of the
  // broadband response.
  RoomRanges ranges;
  ranges.absorption = AbsorptionOverride{{0.3, 0.3}, true};
  const auto bank = octave_filter_bank(kDefaultSampleRate);
  double ratio_sum = 0.0, band_sum = 0.0, broad_sum = 0.0;
  const int rooms = 20;
  for (int i = 0; i < rooms; ++i) {
    const RoomSpec r = sample_room(derive_seed(11, i), ranges);
    const double eyring = predict_t60_eyring(r, 3);
    const double duration = std::min(3.0, 1.5 * eyring + 0.2);
    Rir band = simulate_band_rir(r, 3, duration);
    bank[3].filtfilt(band.samples);
    const double band_t20 = t20(compute_edc(band));
    const double broad_t20 = t20(compute_edc(simulate_rir(r, duration)));
    ratio_sum += band_t20 / eyring;
    band_sum += band_t20;
    broad_sum += broad_t20;
  }
  const double mean_ratio = ratio_sum / rooms;
  MESSAGE("band T20 / Eyring, mean over rooms: " << mean_ratio);
  CHECK(mean_ratio > 0.8);
  CHECK(mean_ratio < 1.2);
  MESSAGE("broadband / band T20: " << broad_sum / band_sum);
  CHECK(broad_sum / band_sum == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("simulation duration policy") {
  RoomSpec r = cube_room(0.3);
  const double t60 = predict_t60_eyring(r, 0);
  CHECK(simulation_duration(r) == doctest::Approx(std::clamp(1.5 * t60, 0.5, 3.0)));
  r.absorption.fill(0.9);
  CHECK(simulation_duration(r) == 0.5);
  r.absorption.fill(0.01);
  CHECK(simulation_duration(r) == 3.0);
}
