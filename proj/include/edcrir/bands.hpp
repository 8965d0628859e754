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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace edcrir {

// Octave band with edges at center/sqrt(2) and center*sqrt(2).
struct BandSpec {
  double center_hz = 0.0;
  double lower_hz() const;
  double upper_hz() const;
};

BandSpec octave_band(std::size_t band_index);

// Direct form II transposed second-order section, a0 normalized to 1.
struct Biquad {
  double b0 = 1.0, b1 = 0.0, b2 = 0.0;
  double a1 = 0.0, a2 = 0.0;

  std::complex<double> response(double freq_hz, double sample_rate) const;
};

// Digital Butterworth band-pass designed by the band-pass transform of an
// analog low-pass prototype followed by a bilinear transform with prewarped
// edges. A prototype of order N yields an order-2N band-pass realized as N
// biquads. Gain is unity at the (warped) geometric center.
class ButterworthBandpass {
 public:
  ButterworthBandpass(double lower_hz, double upper_hz, double sample_rate,
                      int prototype_order = 2);

  // Causal filtering with zero initial state.
  void filter(std::span<double> signal) const;

  // Forward then time-reversed pass: zero phase, magnitude squared.
  void filtfilt(std::span<double> signal) const;

  std::complex<double> response(double freq_hz) const;

  // |H|^2, the effective (real, non-negative) response of filtfilt.
  double zero_phase_response(double freq_hz) const;

  const std::vector<Biquad>& sections() const { return sections_; }

 private:
  std::vector<Biquad> sections_;
  double sample_rate_;
};

// The seven octave filters used by the simulator (prototype order 2, i.e.
// 4th-order band-pass).
std::vector<ButterworthBandpass> octave_filter_bank(double sample_rate);

}  // namespace edcrir
