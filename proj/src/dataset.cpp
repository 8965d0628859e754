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

#include "edcrir/dataset.hpp"

#include <cstdio>
#include <fstream>
#include <json.hpp>

#include "edcrir/audio.hpp"
#include "edcrir/error.hpp"
#include "edcrir/io.hpp"
#include "edcrir/parallel.hpp"
#include "edcrir/rng.hpp"

namespace edcrir {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string room_file_name(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "room_%05zu.wav", i);
  return buf;
}

const char* split_name(int which) {
  static const char* names[] = {"train", "validation", "test"};
  return names[which];
}

}  // namespace

RoomSpec dataset_room(const DatasetOptions& options, std::size_t index) {
  return sample_room(derive_seed(options.master_seed, index), options.ranges);
}

Rir simulate_room_rir(const RoomSpec& room, const DurationPolicy& policy) {
  return simulate_rir(room, simulation_duration(room, policy));
}

EdcGrid simulate_room_grid(const RoomSpec& room, const DurationPolicy& policy) {
  return downsample_edc(compute_edc(simulate_room_rir(room, policy)));
}

Dataset generate_dataset(const DatasetOptions& options, const ProgressFn& progress) {
  if (options.n_rooms < 5) throw ValidationError("a dataset needs at least 5 rooms");
  Dataset ds;
  ds.master_seed = options.master_seed;
  ds.duration = options.duration;
  ds.features.resize(options.n_rooms);
  ds.edcs.resize(options.n_rooms);
  if (!options.rir_dir.empty()) fs::create_directories(options.rir_dir);

  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;
  parallel_for(options.n_rooms, options.threads, [&](std::size_t i) {
    const RoomSpec room = dataset_room(options, i);
    Rir rir = simulate_room_rir(room, options.duration);
    if (!options.rir_dir.empty()) write_rir_wav(options.rir_dir / room_file_name(i), rir);
    ds.features[i] = to_features(room);
    ds.edcs[i] = downsample_edc(compute_edc(rir));
    const std::size_t n = ++done;
    if (progress) {
      std::lock_guard<std::mutex> lock(progress_mutex);
      progress(n, options.n_rooms);
    }
  });

  ds.split = split_dataset(options.n_rooms, options.master_seed);
  std::vector<FeatureVector> train;
  for (std::size_t i : ds.split.train) train.push_back(ds.features[i]);
  ds.stats = fit_minmax(train);
  return ds;
}

void write_dataset(const fs::path& dir, const Dataset& ds, const DatasetOptions& options) {
  fs::create_directories(dir);
  {
    std::ofstream out = open_output(dir / "features.csv");
    out << "room_id";
    for (const char* name : feature_names()) out << ',' << name;
    out << '\n';
    for (std::size_t i = 0; i < ds.size(); ++i) {
      out << i << ',';
      write_csv_row(out, ds.features[i]);
    }
  }
  {
    std::ofstream out = open_output(dir / "edc_grid.csv");
    out << "room_id";
    for (std::size_t t = 0; t < kGridLength; ++t) out << ",t" << t;
    out << '\n';
    for (std::size_t i = 0; i < ds.size(); ++i) {
      out << i << ',';
      write_csv_row(out, ds.edcs[i].values);
    }
  }
  {
    std::vector<int> which(ds.size(), -1);
    for (std::size_t i : ds.split.train) which[i] = 0;
    for (std::size_t i : ds.split.validation) which[i] = 1;
    for (std::size_t i : ds.split.test) which[i] = 2;
    std::ofstream out = open_output(dir / "split.csv");
    out << "room_id,split\n";
    for (std::size_t i = 0; i < ds.size(); ++i) out << i << ',' << split_name(which[i]) << '\n';
  }
  {
    std::ofstream out = open_output(dir / "norm_stats.txt");
    write_norm_stats(out, ds.stats);
  }
  json manifest = {
      {"format", "edcrir-dataset"},
      {"version", 1},
      {"master_seed", ds.master_seed},
      {"rooms", ds.size()},
      {"simulator", kSimulatorVersion},
      {"sample_rate", kDefaultSampleRate},
      {"grid_rate", kGridRate},
      {"grid_length", kGridLength},
      {"duration_policy",
       {{"t60_factor", ds.duration.t60_factor},
        {"floor_s", ds.duration.floor_s},
        {"cap_s", ds.duration.cap_s}}},
      {"split", {{"seed", ds.master_seed}, {"train", ds.split.train.size()},
                 {"validation", ds.split.validation.size()}, {"test", ds.split.test.size()}}},
      {"rir_files", !options.rir_dir.empty()},
  };
  std::ofstream out = open_output(dir / "manifest.json");
  out << manifest.dump(2) << '\n';
}

Dataset load_dataset(const fs::path& dir) {
  Dataset ds;
  json manifest;
  {
    std::ifstream in = open_input(dir / "manifest.json");
    try {
      manifest = json::parse(in);
    } catch (const json::exception& e) {
      throw ValidationError("dataset manifest: " + std::string(e.what()));
    }
  }
  if (manifest.value("format", "") != "edcrir-dataset") {
    throw ValidationError("not an edcrir dataset: " + dir.string());
  }
  ds.master_seed = manifest.at("master_seed").get<std::uint64_t>();
  const auto& dp = manifest.at("duration_policy");
  ds.duration = {dp.at("t60_factor").get<double>(), dp.at("floor_s").get<double>(),
                 dp.at("cap_s").get<double>()};
  const std::size_t n = manifest.at("rooms").get<std::size_t>();

  auto read_rows = [&](const char* file, std::size_t width, auto&& store) {
    std::ifstream in = open_input(dir / file);
    std::string line;
    std::getline(in, line);
    std::size_t row = 0;
    while (std::getline(in, line)) {
      if (trim(line).empty()) continue;
      const auto fields = split(line, ',');
      if (fields.size() != width + 1 || fields[0] != std::to_string(row)) {
        throw ValidationError(std::string(file) + ": malformed row " + std::to_string(row));
      }
      std::vector<double> v(width);
      for (std::size_t k = 0; k < width; ++k) v[k] = parse_double(fields[k + 1], file);
      store(row, v);
      ++row;
    }
    if (row != n) throw ValidationError(std::string(file) + ": row count disagrees with manifest");
  };
  ds.features.resize(n);
  ds.edcs.resize(n);
  read_rows("features.csv", kNumFeatures, [&](std::size_t r, const std::vector<double>& v) {
    std::copy(v.begin(), v.end(), ds.features[r].begin());
  });
  read_rows("edc_grid.csv", kGridLength,
            [&](std::size_t r, const std::vector<double>& v) { ds.edcs[r].values = v; });

  {
    std::ifstream in = open_input(dir / "split.csv");
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
      if (trim(line).empty()) continue;
      const auto f = split(line, ',');
      if (f.size() != 2) throw ValidationError("split.csv: malformed row");
      const auto id = static_cast<std::size_t>(parse_double(f[0], "room id"));
      if (id >= n) throw ValidationError("split.csv: room id out of range");
      if (f[1] == "train") ds.split.train.push_back(id);
      else if (f[1] == "validation") ds.split.validation.push_back(id);
      else if (f[1] == "test") ds.split.test.push_back(id);
      else throw ValidationError("split.csv: unknown split '" + f[1] + "'");
    }
  }
  ds.stats = read_norm_stats(dir / "norm_stats.txt");
  return ds;
}

neural::TrainingData make_training_data(const Dataset& ds) {
  neural::TrainingData data;
  const auto n = static_cast<Eigen::Index>(ds.size());
  data.features.resize(static_cast<Eigen::Index>(kNumFeatures), n);
  data.targets.resize(static_cast<Eigen::Index>(kGridLength), n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const FeatureVector fv = normalize(ds.features[static_cast<std::size_t>(i)], ds.stats);
    for (std::size_t k = 0; k < kNumFeatures; ++k) data.features(static_cast<Eigen::Index>(k), i) = fv[k];
    const auto& e = ds.edcs[static_cast<std::size_t>(i)].values;
    for (std::size_t t = 0; t < kGridLength; ++t) data.targets(static_cast<Eigen::Index>(t), i) = e[t];
  }
  return data;
}

}  // namespace edcrir
