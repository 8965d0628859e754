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

#include <vector>

#include "edcrir/edc.hpp"
#include "edcrir/neural/model.hpp"
#include "edcrir/room.hpp"

namespace edcrir {

// Raw network output for one room (normalize -> forward in eval mode).
std::vector<double> predict_raw(const neural::ModelParams& params, const NormStats& stats,
                                const FeatureVector& features);

// Raw output made into a valid decay curve on the 480 Hz grid: clamp to
// [0, 1], running minimum, first sample renormalized to 1.
EdcGrid predict_grid(const neural::ModelParams& params, const NormStats& stats,
                     const FeatureVector& features);

// predict_grid upsampled to the audio rate.
Edc predict(const neural::ModelParams& params, const NormStats& stats, const RoomSpec& room,
            double sample_rate = kDefaultSampleRate);

}  // namespace edcrir
