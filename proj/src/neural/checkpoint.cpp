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

#include "edcrir/neural/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "edcrir/error.hpp"
#include "edcrir/io.hpp"

namespace edcrir::neural {

static_assert(std::endian::native == std::endian::little,
              "checkpoint I/O assumes a little-endian host");

namespace {

// Guards the allocation when reading a damaged file.
constexpr int kMaxDimension = 1 << 16;

template <typename T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  T v;
  if (!in.read(reinterpret_cast<char*>(&v), sizeof(T))) {
    throw ValidationError("checkpoint: unexpected end of file");
  }
  return v;
}

}  // namespace

void save_model(std::ostream& out, const Checkpoint& ck) {
  const TrainConfig& c = ck.config;
  const ModelDims& d = ck.params.dims;
  if (!(c.dims == d)) throw ValidationError("checkpoint: config and parameter shapes differ");
  out.write(kCheckpointMagic, 4);
  put<std::uint32_t>(out, kCheckpointVersion);
  for (int v : {d.input, d.hidden, d.dense, d.output}) put<std::int32_t>(out, v);
  for (double v : {c.adam.learning_rate, c.adam.beta1, c.adam.beta2, c.adam.epsilon, c.dropout,
                   c.loss.alpha, c.loss.beta}) {
    put<double>(out, v);
  }
  for (int v : {c.max_epochs, c.patience, c.batch_size}) put<std::int32_t>(out, v);
  put<std::uint64_t>(out, c.seed);

  const auto blocks = ck.params.blocks();
  put<std::uint32_t>(out, static_cast<std::uint32_t>(blocks.size()));
  for (const auto& b : blocks) {
    put<std::uint32_t>(out, static_cast<std::uint32_t>(b.name.size()));
    out.write(b.name.data(), static_cast<std::streamsize>(b.name.size()));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(b.rows));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(b.cols));
  }
  for (const auto& b : blocks) {
    out.write(reinterpret_cast<const char*>(b.values.data()),
              static_cast<std::streamsize>(b.values.size() * sizeof(double)));
  }
  for (double v : ck.stats.min) put<double>(out, v);
  for (double v : ck.stats.max) put<double>(out, v);
  if (!out) throw ValidationError("checkpoint: write failed");
}

void save_model(const std::filesystem::path& path, const Checkpoint& ck) {
  std::ofstream out = open_output(path);
  save_model(out, ck);
}

Checkpoint load_model(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kCheckpointMagic, 4) != 0) {
    throw ValidationError("checkpoint: bad magic (expected EDCM)");
  }
  const auto version = get<std::uint32_t>(in);
  if (version != kCheckpointVersion) {
    throw ValidationError("checkpoint: unsupported version " + std::to_string(version));
  }
  Checkpoint ck;
  ModelDims& d = ck.config.dims;
  d.input = get<std::int32_t>(in);
  d.hidden = get<std::int32_t>(in);
  d.dense = get<std::int32_t>(in);
  d.output = get<std::int32_t>(in);
  for (int v : {d.input, d.hidden, d.dense, d.output}) {
    if (v < 1 || v > kMaxDimension) throw ValidationError("checkpoint: corrupt dimensions");
  }
  TrainConfig& c = ck.config;
  c.adam.learning_rate = get<double>(in);
  c.adam.beta1 = get<double>(in);
  c.adam.beta2 = get<double>(in);
  c.adam.epsilon = get<double>(in);
  c.dropout = get<double>(in);
  c.loss.alpha = get<double>(in);
  c.loss.beta = get<double>(in);
  c.max_epochs = get<std::int32_t>(in);
  c.patience = get<std::int32_t>(in);
  c.batch_size = get<std::int32_t>(in);
  c.seed = get<std::uint64_t>(in);

  ck.params = ModelParams::zeros(d);
  auto blocks = ck.params.blocks();
  if (get<std::uint32_t>(in) != blocks.size()) throw ValidationError("checkpoint: block count mismatch");
  for (const auto& b : blocks) {
    const auto len = get<std::uint32_t>(in);
    if (len > 256) throw ValidationError("checkpoint: corrupt shape table");
    std::string name(len, '\0');
    if (!in.read(name.data(), len)) throw ValidationError("checkpoint: unexpected end of file");
    const auto rows = get<std::uint32_t>(in);
    const auto cols = get<std::uint32_t>(in);
    if (name != b.name || rows != static_cast<std::uint32_t>(b.rows) ||
        cols != static_cast<std::uint32_t>(b.cols)) {
      throw ValidationError("checkpoint: shape table does not match block " + b.name);
    }
  }
  for (auto& b : blocks) {
    const auto bytes = static_cast<std::streamsize>(b.values.size() * sizeof(double));
    if (!in.read(reinterpret_cast<char*>(b.values.data()), bytes)) {
      throw ValidationError("checkpoint: truncated parameter data");
    }
  }
  for (double& v : ck.stats.min) v = get<double>(in);
  for (double& v : ck.stats.max) v = get<double>(in);
  return ck;
}

Checkpoint load_model(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  return load_model(in);
}

}  // namespace edcrir::neural
