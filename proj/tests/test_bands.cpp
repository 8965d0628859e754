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
#include <numbers>
#include <vector>

#include "edcrir/bands.hpp"
#include "edcrir/room.hpp"
#include "oracles.hpp"

using namespace edcrir;

namespace {

constexpr double kFs = 48000.0;

// Squared magnitude of an analog Butterworth band-pass of prototype order n
// mapped through the bilinear transform with prewarped edges.
double analog_bandpass_power(double f, double lo, double hi, int n) {
  auto warp = [](double x) { return 2.0 * kFs * std::tan(std::numbers::pi * x / kFs); };
  const double w = warp(f), w1 = warp(lo), w2 = warp(hi);
  const double q = (w * w - w1 * w2) / (w * (w2 - w1));
  return 1.0 / (1.0 + std::pow(q * q, n));
}

}  // namespace

TEST_CASE("octave band edges are contiguous") {
  for (std::size_t b = 0; b < kNumBands; ++b) {
    const BandSpec band = octave_band(b);
    CHECK(band.center_hz == kBandCentersHz[b]);
    CHECK(band.upper_hz() / band.lower_hz() == doctest::Approx(2.0));
    if (b + 1 < kNumBands) CHECK(band.upper_hz() == doctest::Approx(octave_band(b + 1).lower_hz()));
  }
}

TEST_CASE("each band filter matches the closed-form Butterworth magnitude") {
  const auto bank = octave_filter_bank(kFs);
  REQUIRE(bank.size() == kNumBands);
  for (std::size_t b = 0; b < kNumBands; ++b) {
    const BandSpec band = octave_band(b);
    CHECK(bank[b].sections().size() == 2u);
    for (double f = 20.0; f < 23000.0; f *= 1.07) {
      const double expected = analog_bandpass_power(f, band.lower_hz(), band.upper_hz(), 2);
      CHECK(std::norm(bank[b].response(f)) == doctest::Approx(expected).epsilon(1e-9));
    }
    CHECK(bank[b].zero_phase_response(band.lower_hz()) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(bank[b].zero_phase_response(band.upper_hz()) == doctest::Approx(0.5).epsilon(1e-9));
  }
}

TEST_CASE("time-domain filter agrees with its frequency response") {
  const auto bank = octave_filter_bank(kFs);
  const std::size_t n = 1 << 16;
  std::vector<double> x(n, 0.0);
  x[0] = 1.0;
  bank[3].filter(x);
  for (double f : {500.0, 1000.0, 1414.0, 3000.0}) {
    const std::size_t k = static_cast<std::size_t>(std::lround(f * n / kFs));
    const double fk = k * kFs / n;
    std::complex<double> acc = 0.0;
    for (std::size_t t = 0; t < n; ++t)
      acc += x[t] * std::polar(1.0, -2.0 * std::numbers::pi * fk * t / kFs);
    CHECK(std::abs(acc - bank[3].response(fk)) < 1e-9);
  }
}

TEST_CASE("filtfilt has zero phase and squared magnitude") {
  const auto bank = octave_filter_bank(kFs);
  const std::size_t n = 1 << 14;
  std::vector<double> x(n, 0.0);
  x[n / 2] = 1.0;
  bank[4].filtfilt(x);
  // Symmetric impulse response about the impulse position.
  for (std::size_t k = 1; k < 2000; ++k) CHECK(std::abs(x[n / 2 + k] - x[n / 2 - k]) < 1e-12);
}

TEST_CASE("power sum of the bank is flat across the covered range") {
  const auto bank = octave_filter_bank(kFs);
  const double lo = 125.0 / std::numbers::sqrt2;
  const double hi = 8000.0 * std::numbers::sqrt2;
  for (double f = lo; f <= hi * (1 + 1e-12); f *= 1.01) {
    double sum = 0.0;
    for (const auto& filt : bank) sum += filt.zero_phase_response(f);
    CHECK(sum >= 0.5 - 1e-9);
    CHECK(sum <= 1.5);
  }
}
