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

#include "edcrir/bands.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "edcrir/error.hpp"
#include "edcrir/room.hpp"

namespace edcrir {

using cd = std::complex<double>;

double BandSpec::lower_hz() const { return center_hz / std::numbers::sqrt2; }
double BandSpec::upper_hz() const { return center_hz * std::numbers::sqrt2; }

BandSpec octave_band(std::size_t band_index) {
  if (band_index >= kNumBands) throw ValidationError("band index out of range");
  return {kBandCentersHz[band_index]};
}

cd Biquad::response(double freq_hz, double sample_rate) const {
  const cd z1 = std::polar(1.0, -2.0 * std::numbers::pi * freq_hz / sample_rate);
  const cd z2 = z1 * z1;
  return (b0 + b1 * z1 + b2 * z2) / (1.0 + a1 * z1 + a2 * z2);
}

ButterworthBandpass::ButterworthBandpass(double lower_hz, double upper_hz,
                                         double sample_rate, int prototype_order)
    : sample_rate_(sample_rate) {
  if (!(lower_hz > 0.0 && upper_hz > lower_hz && upper_hz < sample_rate / 2.0)) {
    throw ValidationError("band-pass edges must satisfy 0 < lo < hi < fs/2");
  }
  if (prototype_order < 1) throw ValidationError("filter order must be >= 1");

  const double fs2 = 2.0 * sample_rate;
  const double w1 = fs2 * std::tan(std::numbers::pi * lower_hz / sample_rate);
  const double w2 = fs2 * std::tan(std::numbers::pi * upper_hz / sample_rate);
  const double bw = w2 - w1;
  const double w0sq = w1 * w2;

  // Each prototype pole p maps to the roots of s^2 - p*bw*s + w0^2. Poles
  // come in conjugate pairs; keep the upper half plane member of each pair.
  std::vector<cd> digital_poles;
  const int n = prototype_order;
  for (int k = 0; k < n; ++k) {
    const double theta = std::numbers::pi * (2.0 * k + n + 1) / (2.0 * n);
    const cd p = std::polar(1.0, theta);
    const cd half = p * bw / 2.0;
    const cd disc = std::sqrt(half * half - w0sq);
    for (const cd s : {half + disc, half - disc}) {
      const cd z = (1.0 + s / fs2) / (1.0 - s / fs2);
      if (z.imag() > 1e-14) digital_poles.push_back(z);
    }
  }
  if (digital_poles.size() != static_cast<std::size_t>(n)) {
    throw NumericError("band-pass design produced an unexpected pole layout");
  }
  std::sort(digital_poles.begin(), digital_poles.end(),
            [](const cd& a, const cd& b) { return std::arg(a) < std::arg(b); });

  // n zeros at z = 1 and n at z = -1: every section gets (1 - z^-2).
  for (const cd& z : digital_poles) {
    Biquad q;
    q.b0 = 1.0;
    q.b1 = 0.0;
    q.b2 = -1.0;
    q.a1 = -2.0 * z.real();
    q.a2 = std::norm(z);
    sections_.push_back(q);
  }

  const double center = sample_rate / std::numbers::pi * std::atan(std::sqrt(w0sq) / fs2);
  const double gain = std::abs(response(center));
  const double per_section = std::pow(gain, -1.0 / static_cast<double>(n));
  for (Biquad& q : sections_) {
    q.b0 *= per_section;
    q.b1 *= per_section;
    q.b2 *= per_section;
  }
}

void ButterworthBandpass::filter(std::span<double> signal) const {
  for (const Biquad& q : sections_) {
    double s1 = 0.0, s2 = 0.0;
    for (double& x : signal) {
      const double y = q.b0 * x + s1;
      s1 = q.b1 * x - q.a1 * y + s2;
      s2 = q.b2 * x - q.a2 * y;
      x = y;
    }
  }
}

void ButterworthBandpass::filtfilt(std::span<double> signal) const {
  filter(signal);
  std::reverse(signal.begin(), signal.end());
  filter(signal);
  std::reverse(signal.begin(), signal.end());
}

cd ButterworthBandpass::response(double freq_hz) const {
  cd h = 1.0;
  for (const Biquad& q : sections_) h *= q.response(freq_hz, sample_rate_);
  return h;
}

double ButterworthBandpass::zero_phase_response(double freq_hz) const {
  return std::norm(response(freq_hz));
}

std::vector<ButterworthBandpass> octave_filter_bank(double sample_rate) {
  std::vector<ButterworthBandpass> bank;
  bank.reserve(kNumBands);
  for (std::size_t b = 0; b < kNumBands; ++b) {
    const BandSpec band = octave_band(b);
    bank.emplace_back(band.lower_hz(), band.upper_hz(), sample_rate, 2);
  }
  return bank;
}

}  // namespace edcrir
