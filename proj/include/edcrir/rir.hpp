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
#include <optional>
#include <string>
#include <vector>

namespace edcrir {

inline constexpr double kDefaultSampleRate = 48000.0;

// Time-domain room impulse response.
struct Rir {
  std::vector<double> samples;
  double sample_rate = kDefaultSampleRate;
  std::optional<std::string> room_id;

  std::size_t size() const { return samples.size(); }
  double duration_s() const { return static_cast<double>(samples.size()) / sample_rate; }
};

// Throws ValidationError on empty or non-finite input.
void validate_rir(const Rir& rir);

// Scales so that max |sample| == 1. Throws NumericError for an all-zero RIR.
void peak_normalize(std::vector<double>& samples, double peak = 1.0);

}  // namespace edcrir
