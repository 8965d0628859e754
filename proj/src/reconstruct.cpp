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

#include "edcrir/reconstruct.hpp"

#include <cmath>

#include "edcrir/error.hpp"
#include "edcrir/rng.hpp"

namespace edcrir {

SignMode parse_sign_mode(std::string_view name) {
  if (name == "rs") return SignMode::kRandom;
  if (name == "rss") return SignMode::kSticky;
  throw UsageError("unknown sign method '" + std::string(name) + "' (expected rs|rss)");
}

std::string_view to_string(SignMode mode) {
  return mode == SignMode::kRandom ? "rs" : "rss";
}

std::vector<double> reverse_diff(std::span<const double> edc) {
  std::vector<double> d(edc.size());
  if (edc.empty()) return d;
  for (std::size_t n = 0; n + 1 < edc.size(); ++n) d[n] = edc[n] - edc[n + 1];
  d.back() = edc.back();
  return d;
}

std::vector<double> magnitude_from_edc(std::span<const double> edc) {
  std::vector<double> mag = reverse_diff(edc);
  for (double& v : mag) v = std::sqrt(std::max(v, 0.0));
  return mag;
}

std::vector<int> draw_signs(std::size_t n, const SignPolicy& policy) {
  std::vector<int> s(n);
  if (n == 0) return s;
  Rng rng(policy.seed);
  if (policy.mode == SignMode::kRandom) {
    for (int& v : s) v = (rng.next_u64() >> 63) ? 1 : -1;
    return s;
  }
  if (!(policy.stickiness >= 0.0 && policy.stickiness <= 1.0)) {
    throw ValidationError("stickiness must lie in [0, 1]");
  }
  s[0] = 1;
  for (std::size_t i = 1; i < n; ++i) {
    s[i] = rng.bernoulli(policy.stickiness) ? s[i - 1] : -s[i - 1];
  }
  return s;
}

std::vector<double> assign_signs(std::span<const double> magnitude, const SignPolicy& policy) {
  const std::vector<int> s = draw_signs(magnitude.size(), policy);
  std::vector<double> out(magnitude.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (magnitude[i] < 0.0) throw ValidationError("magnitude must be non-negative");
    out[i] = magnitude[i] * s[i];
  }
  return out;
}

Rir reconstruct(const Edc& edc, const SignPolicy& policy) {
  if (edc.values.empty()) throw ValidationError("EDC is empty");
  Rir rir;
  rir.sample_rate = edc.sample_rate;
  rir.samples = assign_signs(magnitude_from_edc(edc.values), policy);
  return rir;
}

}  // namespace edcrir
