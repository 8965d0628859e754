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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "cli.hpp"
#include "edcrir/audio.hpp"
#include "edcrir/dataset.hpp"
#include "edcrir/edc.hpp"
#include "edcrir/io.hpp"
#include "edcrir/neural/checkpoint.hpp"
#include "edcrir/predictor.hpp"

using namespace edcrir;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& f) const { return (path / f).string(); }
};

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Small but shape-compatible model with plausible normalization stats.
neural::Checkpoint tiny_model(std::uint64_t seed) {
  neural::Checkpoint ck;
  ck.config.dims.hidden = 8;
  ck.config.dims.dense = 32;
  ck.params = neural::ModelParams::initialize(ck.config.dims, seed);
  std::vector<FeatureVector> rooms;
  for (std::uint64_t i = 0; i < 20; ++i) rooms.push_back(to_features(sample_room(i)));
  ck.stats = fit_minmax(rooms);
  return ck;
}

const char* kFeatures = "6,5,3,2,1.5,1.2,4,3.5,1.6,0.2,0.25,0.3,0.35,0.4,0.45,0.5";

}  // namespace

TEST_CASE("predict -> reconstruct -> EDC round trip") {
  TempDir dir("edcrir_cli_rt");
  neural::save_model(fs::path(dir / "m.bin"), tiny_model(3));

  SUBCASE("grid output") {
    REQUIRE(run({"predict", "--model", dir / "m.bin", "--features", kFeatures, "--out", dir / "e.csv"}).code == 0);
    const Edc grid = cli::read_edc_file(dir / "e.csv");
    CHECK(grid.size() == kGridLength);
    CHECK(grid.sample_rate == kGridRate);
    validate_edc(grid);
  }
  for (const char* method : {"rs", "rss"}) {
    CAPTURE(method);
    REQUIRE(run({"predict", "--model", dir / "m.bin", "--features", kFeatures, "--full-rate", "--out",
                 dir / "full.csv"}).code == 0);
    REQUIRE(run({"reconstruct", "--edc", dir / "full.csv", "--method", method, "--seed", "11", "--out",
                 dir / "rir.csv"}).code == 0);
    const Edc predicted = cli::read_edc_file(dir / "full.csv");
    const Edc back = compute_edc(cli::read_rir_file(dir / "rir.csv"));
    REQUIRE(back.size() == predicted.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < back.size(); ++i) {
      worst = std::max(worst, std::abs(back.values[i] - predicted.values[i]));
    }
    CHECK(worst <= 1e-9);

    // Grid input is upsampled inside reconstruct; float WAV output keeps ~1e-6.
    REQUIRE(run({"predict", "--model", dir / "m.bin", "--features", kFeatures, "--out", dir / "g.csv"}).code == 0);
    REQUIRE(run({"reconstruct", "--edc", dir / "g.csv", "--method", method, "--out", dir / "rir.wav"}).code == 0);
    const Edc up = upsample_edc(EdcGrid{cli::read_edc_file(dir / "g.csv").values});
    const Edc from_wav = compute_edc(read_rir_wav(dir / "rir.wav"));
    worst = 0.0;
    for (std::size_t i = 0; i < up.size(); ++i) {
      worst = std::max(worst, std::abs(from_wav.values[i] - up.values[i]));
    }
    CHECK(worst <= 1e-5);
  }
  CHECK(fs::exists(dir / "rir.wav.manifest.json"));
}

TEST_CASE("gen-dataset twice gives byte-identical directories") {
  TempDir dir("edcrir_cli_gen");
  for (const char* out : {"a", "b"}) {
    REQUIRE(run({"gen-dataset", "--rooms", "10", "--seed", "7", "--write-rirs", "--quiet", "--threads",
                 "2", "--out", dir / out}).code == 0);
  }
  std::size_t files = 0;
  for (const auto& entry : fs::recursive_directory_iterator(dir.path / "a")) {
    if (!entry.is_regular_file()) continue;
    const fs::path rel = fs::relative(entry.path(), dir.path / "a");
    INFO(rel.string());
    CHECK(slurp(entry.path()) == slurp(dir.path / "b" / rel));
    ++files;
  }
  CHECK(files == 15u);  // 5 tables + 10 RIRs
  CHECK(fs::exists(dir / "a.manifest.json"));
}

TEST_CASE("manifests carry the timestamp from SOURCE_DATE_EPOCH and replay bit-identically") {
  TempDir dir("edcrir_cli_manifest");
  ::setenv("SOURCE_DATE_EPOCH", "1700000000", 1);
  CHECK(cli::manifest_timestamp() == "2023-11-14T22:13:20Z");
  neural::save_model(fs::path(dir / "m.bin"), tiny_model(5));
  REQUIRE(run({"predict", "--model", dir / "m.bin", "--features", kFeatures, "--out", dir / "e.csv"}).code == 0);
  REQUIRE(run({"reconstruct", "--edc", dir / "e.csv", "--seed", "4", "--out", dir / "r.wav"}).code == 0);
  const std::string first = slurp(dir / "r.wav");
  const std::string manifest = slurp(dir / "r.wav.manifest.json");
  CHECK(manifest.find("\"timestamp\": \"2023-11-14T22:13:20Z\"") != std::string::npos);
  CHECK(manifest.find("\"sign_seed\": 4") != std::string::npos);
  fs::remove(dir / "r.wav");
  REQUIRE(run({"replay", "--manifest", dir / "r.wav.manifest.json"}).code == 0);
  CHECK(slurp(dir / "r.wav") == first);
  CHECK(slurp(dir / "r.wav.manifest.json") == manifest);
  ::unsetenv("SOURCE_DATE_EPOCH");
}

TEST_CASE("errors map to exit codes with one machine-parsable line") {
  TempDir dir("edcrir_cli_err");
  auto one_line = [](const Run& r) {
    CHECK(r.err.rfind("error: code=", 0) == 0);
    CHECK(r.err.find('\n') == r.err.size() - 1);
  };
  Run r = run({});
  CHECK(r.code == 2);
  one_line(r);
  r = run({"predict", "--model", "m.bin"});
  CHECK(r.code == 2);
  one_line(r);
  r = run({"reconstruct", "--edc", "x.csv", "--method", "abc", "--out", dir / "y.wav"});
  CHECK(r.code == 2);
  CHECK(r.err.find("kind=usage") != std::string::npos);
  r = run({"reconstruct", "--edc", dir / "missing.csv", "--out", dir / "y.wav"});
  CHECK(r.code == 3);
  one_line(r);
  std::ofstream(dir / "bad.csv") << "# sample_rate=480\ntime_s,edc\n0,1\n0.1,0.5\n0.2,0.7\n";
  r = run({"reconstruct", "--edc", dir / "bad.csv", "--out", dir / "y.wav"});
  CHECK(r.code == 3);
  r = run({"predict", "--model", dir / "nothing.bin", "--features", "1,2", "--out", dir / "e.csv"});
  CHECK(r.code == 3);
  r = run({"gen-dataset", "--rooms", "3", "--out", dir / "ds"});
  CHECK(r.code == 2);
  CHECK(run({"--help"}).code == 0);

  // No command mutates its inputs.
  neural::save_model(fs::path(dir / "m.bin"), tiny_model(1));
  const std::string model = slurp(dir / "m.bin");
  REQUIRE(run({"predict", "--model", dir / "m.bin", "--features", kFeatures, "--out", dir / "e.csv"}).code == 0);
  CHECK(slurp(dir / "m.bin") == model);
}

TEST_CASE("convolve and mushra-stats commands") {
  TempDir dir("edcrir_cli_misc");
  std::vector<double> dry(4800, 0.0);
  dry[0] = 1.0;
  dry[100] = -0.5;
  write_wav(fs::path(dir / "dry.wav"), dry, 48000.0);
  Rir rir;
  rir.samples = {1.0, 0.0, 0.5, 0.25};
  write_rir_wav(dir / "rir.wav", rir);
  REQUIRE(run({"convolve", "--audio", dir / "dry.wav", "--rir", dir / "rir.wav", "--out", dir / "wet.wav"}).code == 0);
  const AudioBuffer wet = read_wav(fs::path(dir / "wet.wav"));
  CHECK(wet.samples.size() == 4803u);
  const double peak = std::pow(10.0, -1.0 / 20.0);
  CHECK(wet.samples[0] == doctest::Approx(peak).epsilon(1e-6));
  CHECK(wet.samples[102] == doctest::Approx(-0.25 * peak).epsilon(1e-6));

  std::ofstream(dir / "ratings.csv") << "stimulus,participant,trial,score\nref,p1,t1,100\nref,p2,t1,90\n"
                                        "anchor,p1,t1,20\nanchor,p2,t1,30\n";
  const Run r = run({"mushra-stats", "--ratings", dir / "ratings.csv", "--out", dir / "stats.csv"});
  REQUIRE(r.code == 0);
  CHECK(slurp(dir / "stats.csv").find("ref,2,95") != std::string::npos);
  CHECK(run({"mushra-stats", "--ratings", dir / "missing.csv", "--out", dir / "s.csv"}).code == 3);
}

TEST_CASE("eval reports near-zero error on memorized rooms") {
  TempDir dir("edcrir_cli_mem");
  DatasetOptions opt;
  opt.n_rooms = 6;
  opt.master_seed = 12;
  Dataset ds = generate_dataset(opt);
  // Five training rooms; the validation room repeats one of them so that
  // restore-best keeps the most memorized epoch.
  ds.features[5] = ds.features[4];
  ds.edcs[5] = ds.edcs[4];
  ds.split = {{0, 1, 2, 3, 4}, {5}, {}};
  write_dataset(dir.path / "ds", ds, opt);

  std::ofstream(dir / "mem.cfg") << "dropout=0\nbatch_size=5\nlearning_rate=0.001\nbeta=0\n"
                                    "max_epochs=300\npatience=300\nseed=2\n";
  REQUIRE(run({"train", "--dataset", dir / "ds", "--config", dir / "mem.cfg", "--out", dir / "m.bin"}).code == 0);
  const Run r = run({"eval", "--model", dir / "m.bin", "--dataset", dir / "ds", "--split", "train", "--rir-rooms", "1",
                     "--out", dir / "report.csv"});
  REQUIRE(r.code == 0);
  MESSAGE(r.out);

  std::ifstream in(dir / "report.csv");
  std::string line;
  std::getline(in, line);
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    const auto f = split(line, ',');
    const double mae = parse_double(f[1], "mae");
    INFO("room " << f[0] << " mae " << mae);
    CHECK(mae < 5e-3);
    ++rows;
  }
  CHECK(rows == 5u);
  for (const char* f : {"report_curves.csv", "report_summary.csv", "report_rir.csv", "report.csv.manifest.json"}) {
    CHECK(fs::exists(dir / f));
  }
  std::ifstream curves(dir / "report_curves.csv");
  std::getline(curves, line);
  CHECK(line == "time,mean_mae,std_mae,mean_rmse,std_rmse");
}
