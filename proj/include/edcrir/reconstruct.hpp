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
#include <span>
#include <string_view>
#include <vector>

#include "edcrir/edc.hpp"
#include "edcrir/rir.hpp"

namespace edcrir {

enum class SignMode { kRandom, kSticky };

// kRandom: i.i.d. +/-1 per sample. kSticky: s[0] = +1, then each sample keeps
// the previous polarity with probability `stickiness` and flips otherwise.
struct SignPolicy {
  SignMode mode = SignMode::kSticky;
  double stickiness = 0.90;
  std::uint64_t seed = 0;
};

SignMode parse_sign_mode(std::string_view name);  // "rs" | "rss"
std::string_view to_string(SignMode mode);

// d[n] = EDC[n] - EDC[n+1]; the last sample carries the residual EDC[N-1] so
// that sum(d) == EDC[0].
std::vector<double> reverse_diff(std::span<const double> edc);

// sqrt(max(d[n], 0)).
std::vector<double> magnitude_from_edc(std::span<const double> edc);

std::vector<int> draw_signs(std::size_t n, const SignPolicy& policy);

std::vector<double> assign_signs(std::span<const double> magnitude, const SignPolicy& policy);

// magnitude_from_edc followed by assign_signs; the output rate is the EDC rate.
Rir reconstruct(const Edc& edc, const SignPolicy& policy);

}  // namespace edcrir
