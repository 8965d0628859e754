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

#include "edcrir/predictor.hpp"

#include "edcrir/error.hpp"

namespace edcrir {

std::vector<double> predict_raw(const neural::ModelParams& params, const NormStats& stats,
                                const FeatureVector& features) {
  if (params.dims.input != static_cast<int>(kNumFeatures)) {
    throw ValidationError("model input size is not 16");
  }
  const FeatureVector x = normalize(features, stats);
  return neural::forward(params, x, {neural::Mode::kEval, 0.0, 0});
}

EdcGrid predict_grid(const neural::ModelParams& params, const NormStats& stats,
                     const FeatureVector& features) {
  if (params.dims.output != static_cast<int>(kGridLength)) {
    throw ValidationError("model output size does not match the 1440-point grid");
  }
  EdcGrid grid;
  grid.values = sanitize_curve(predict_raw(params, stats, features));
  return grid;
}

Edc predict(const neural::ModelParams& params, const NormStats& stats, const RoomSpec& room,
            double sample_rate) {
  return upsample_edc(predict_grid(params, stats, to_features(room)), sample_rate);
}

}  // namespace edcrir
