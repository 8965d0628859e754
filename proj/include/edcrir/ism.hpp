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
#include <vector>

#include "edcrir/rir.hpp"
#include "edcrir/room.hpp"

namespace edcrir {

inline constexpr double kSpeedOfSound = 343.0;
inline constexpr int kFractionalDelayTaps = 81;

// One image source on the shoebox mirror lattice.
struct ImageArrival {
  double delay_s = 0.0;
  int reflections = 0;
};

// Every image whose propagation delay is <= duration_s, in no particular
// order. Throws ValidationError when source and receiver coincide.
std::vector<ImageArrival> enumerate_images(const RoomSpec& room, double duration_s);

// Band-limited echogram: each image contributes (1 - alpha_b)^(k/2) / d with
// k wall reflections, placed with an 81-tap Hann-windowed sinc. No band-pass
// filtering is applied.
Rir simulate_band_rir(const RoomSpec& room, std::size_t band_index, double duration_s,
                      double sample_rate = kDefaultSampleRate);

// All seven unfiltered band echograms from one lattice enumeration.
std::array<std::vector<double>, kNumBands> simulate_band_echograms(
    const RoomSpec& room, double duration_s, double sample_rate = kDefaultSampleRate);

// Broadband RIR: band echograms through zero-phase octave filters, summed and
// peak-normalized to 1.
Rir simulate_rir(const RoomSpec& room, double duration_s,
                 double sample_rate = kDefaultSampleRate);

// Eyring: 0.161 V / (-S ln(1 - alpha)).
double predict_t60_eyring(const RoomSpec& room, std::size_t band_index);
double eyring_t60(double volume, double surface, double absorption);

// Simulated length: factor x the Eyring T60 of the most reverberant band,
// clamped to [floor_s, cap_s].
struct DurationPolicy {
  double t60_factor = 1.5;
  double floor_s = 0.5;
  double cap_s = 3.0;
};

double simulation_duration(const RoomSpec& room, const DurationPolicy& policy = {});

}  // namespace edcrir
