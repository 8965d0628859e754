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
#include <functional>
#include <string>
#include <vector>

#include "edcrir/edc.hpp"
#include "edcrir/ism.hpp"
#include "edcrir/neural/train.hpp"
#include "edcrir/room.hpp"

namespace edcrir {

inline constexpr const char* kSimulatorVersion = "lattice-ism/1 (81-tap hann sinc, 4th-order octave bank)";

struct DatasetOptions {
  std::size_t n_rooms = 6000;
  std::uint64_t master_seed = 0;
  DurationPolicy duration;
  RoomRanges ranges;
  unsigned threads = 1;
  // When non-empty, each simulated RIR is also written as
  // rir_dir/room_NNNNN.wav (32-bit float, 48 kHz).
  std::filesystem::path rir_dir;
};

// Rooms, their decay-curve targets and the train/validation/test split.
// Normalization statistics are fitted on the training rooms only.
struct Dataset {
  std::uint64_t master_seed = 0;
  DurationPolicy duration;
  std::vector<FeatureVector> features;
  std::vector<EdcGrid> edcs;
  DatasetSplit split;
  NormStats stats;

  std::size_t size() const { return features.size(); }
  RoomSpec room(std::size_t i) const { return from_features(features[i]); }
};

// Room i is sample_room(derive_seed(master_seed, i), ranges).
RoomSpec dataset_room(const DatasetOptions& options, std::size_t index);

// Simulated RIR (length from the duration policy) for one room.
Rir simulate_room_rir(const RoomSpec& room, const DurationPolicy& policy = {});

// Simulate -> Schroeder curve -> 480 Hz grid.
EdcGrid simulate_room_grid(const RoomSpec& room, const DurationPolicy& policy = {});

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

Dataset generate_dataset(const DatasetOptions& options, const ProgressFn& progress = {});

// Writes features.csv, edc_grid.csv, split.csv, norm_stats.txt and
// manifest.json.
// Output is byte-identical for identical options.
void write_dataset(const std::filesystem::path& dir, const Dataset& dataset,
                   const DatasetOptions& options);

Dataset load_dataset(const std::filesystem::path& dir);

// Normalized features and grid targets, one column per room.
neural::TrainingData make_training_data(const Dataset& dataset);

}  // namespace edcrir
