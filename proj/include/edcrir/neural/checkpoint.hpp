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

#include "edcrir/neural/model.hpp"
#include "edcrir/neural/train.hpp"
#include "edcrir/room.hpp"

namespace edcrir::neural {

inline constexpr char kCheckpointMagic[4] = {'E', 'D', 'C', 'M'};
inline constexpr std::uint32_t kCheckpointVersion = 1;

struct Checkpoint {
  ModelParams params;
  TrainConfig config;
  NormStats stats;
};

// Little-endian layout:
//   "EDCM" | u32 version | i32 input, hidden, dense, output
//   | f64 lr, beta1, beta2, epsilon, dropout, alpha, beta
//   | i32 max_epochs, patience, batch_size | u64 seed
//   | u32 block count | per block: u32 name length, name, u32 rows, u32 cols
//   | f64 values of every block in table order
//   | f64 norm min[16], max[16]
void save_model(std::ostream& out, const Checkpoint& checkpoint);
void save_model(const std::filesystem::path& path, const Checkpoint& checkpoint);

// Throws ValidationError on a bad magic, unsupported version or a shape
// table that disagrees with the stored dimensions.
Checkpoint load_model(std::istream& in);
Checkpoint load_model(const std::filesystem::path& path);

}  // namespace edcrir::neural
