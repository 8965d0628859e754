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

#include "edcrir/rir.hpp"

#include <algorithm>
#include <cmath>

#include "edcrir/error.hpp"

namespace edcrir {

void validate_rir(const Rir& rir) {
  if (rir.samples.empty()) throw ValidationError("RIR is empty");
  if (!(rir.sample_rate > 0.0)) throw ValidationError("RIR sample rate must be positive");
  for (double x : rir.samples) {
    if (!std::isfinite(x)) throw ValidationError("RIR contains non-finite samples");
  }
}

void peak_normalize(std::vector<double>& samples, double peak) {
  double max_abs = 0.0;
  for (double x : samples) max_abs = std::max(max_abs, std::abs(x));
  if (!(max_abs > 0.0)) throw NumericError("cannot peak-normalize an all-zero signal");
  const double scale = peak / max_abs;
  for (double& x : samples) x *= scale;
}

}  // namespace edcrir
