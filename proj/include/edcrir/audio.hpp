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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "edcrir/rir.hpp"

namespace edcrir {

// Mono audio; multi-channel input is averaged down on read.
struct AudioBuffer {
  std::vector<double> samples;
  double sample_rate = kDefaultSampleRate;
  int source_channels = 1;
};

// RIFF/WAVE reader for 16/24/32-bit PCM and 32/64-bit IEEE float, including
// WAVE_FORMAT_EXTENSIBLE. Throws ValidationError on anything else.
AudioBuffer read_wav(std::istream& in);
AudioBuffer read_wav(const std::filesystem::path& path);

// Mono 32-bit float WAV.
void write_wav(std::ostream& out, std::span<const double> samples, double sample_rate);
void write_wav(const std::filesystem::path& path, std::span<const double> samples,
               double sample_rate);

Rir read_rir_wav(const std::filesystem::path& path);
void write_rir_wav(const std::filesystem::path& path, const Rir& rir);

inline constexpr double kConvolvePeakDbfs = -1.0;

// FFT linear convolution (length len(audio) + len(rir) - 1), peak-normalized
// to -1 dBFS. Sample rates must match.
AudioBuffer convolve(const AudioBuffer& audio, const Rir& rir);

}  // namespace edcrir
