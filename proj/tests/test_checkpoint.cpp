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

#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "edcrir/error.hpp"
#include "edcrir/neural/checkpoint.hpp"

using namespace edcrir;
using namespace edcrir::neural;

namespace {

Checkpoint sample_checkpoint() {
  Checkpoint ck;
  ck.config.dims = {16, 4, 8, 10};
  ck.config.seed = 0xdeadbeefcafeULL;
  ck.config.adam.learning_rate = 3e-4;
  ck.config.loss.beta = 0.25;
  ck.params = ModelParams::initialize(ck.config.dims, 5);
  for (std::size_t i = 0; i < kNumFeatures; ++i) {
    ck.stats.min[i] = -1.0 / (i + 3);
    ck.stats.max[i] = 1.0 / (i + 7) + 2.0;
  }
  return ck;
}

}  // namespace

TEST_CASE("checkpoint round trip is bit exact") {
  const Checkpoint ck = sample_checkpoint();
  std::stringstream buf;
  save_model(buf, ck);
  CHECK(buf.str().substr(0, 4) == "EDCM");
  const Checkpoint back = load_model(buf);
  CHECK(back.params == ck.params);
  CHECK(back.config == ck.config);
  CHECK(back.stats == ck.stats);

  const auto path = std::filesystem::temp_directory_path() / "edcrir_ck_test" / "model.bin";
  save_model(path, ck);
  CHECK(load_model(path).params == ck.params);
  std::filesystem::remove_all(path.parent_path());
}

TEST_CASE("damaged checkpoints are rejected") {
  std::stringstream buf;
  save_model(buf, sample_checkpoint());
  const std::string bytes = buf.str();

  std::istringstream bad_magic("EDCX" + bytes.substr(4));
  CHECK_THROWS_AS(load_model(bad_magic), ValidationError);

  std::string v2 = bytes;
  v2[4] = 2;
  std::istringstream bad_version(v2);
  CHECK_THROWS_AS(load_model(bad_version), ValidationError);

  std::string huge = bytes;
  huge[11] = 0x7f;  // input size, high byte
  std::istringstream bad_dims(huge);
  CHECK_THROWS_AS(load_model(bad_dims), ValidationError);

  for (std::size_t cut : {std::size_t{2}, std::size_t{30}, bytes.size() / 2, bytes.size() - 1}) {
    std::istringstream truncated(bytes.substr(0, cut));
    CHECK_THROWS_AS(load_model(truncated), ValidationError);
  }
}
