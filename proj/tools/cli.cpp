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


#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <span>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "edcrir/audio.hpp"
#include "edcrir/dataset.hpp"
#include "edcrir/error.hpp"
#include "edcrir/io.hpp"
#include "edcrir/metrics.hpp"
#include "edcrir/mushra.hpp"
#include "edcrir/neural/checkpoint.hpp"
#include "edcrir/parallel.hpp"
#include "edcrir/predictor.hpp"
#include "edcrir/reconstruct.hpp"
#include "edcrir/rng.hpp"

namespace edcrir::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const char* kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUsage: return "usage";
    case ErrorKind::kValidation: return "validation";
    case ErrorKind::kNumeric: return "numeric";
  }
  return "validation";
}

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n' || c == '\r') {
      out += ' ';
      continue;
    }
    out += c;
  }
  return out;
}

int report(std::ostream& err, ErrorKind kind, std::string_view msg) {
  err << "error: code=" << static_cast<int>(kind) << " kind=" << kind_name(kind) << " msg=\""
      << escape(msg) << "\"\n";
  return static_cast<int>(kind);
}

void ensure_parent(const fs::path& p) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
}

// "<out>.manifest.json", next to the output file or directory.
fs::path manifest_path(fs::path out) {
  out = out.lexically_normal();
  if (!out.has_filename()) out = out.parent_path();
  return fs::path(out.string() + ".manifest.json");
}

// Sibling file: report.csv -> report_curves.csv.
fs::path sibling(const fs::path& out, const std::string& suffix) {
  fs::path p = out;
  const std::string ext = p.has_extension() ? p.extension().string() : ".csv";
  p.replace_extension();
  return fs::path(p.string() + suffix + ext);
}

struct Manifest {
  std::string command;
  std::vector<std::string> argv;
  json config = json::object();
  json seeds = json::object();
  json inputs = json::object();
  json outputs = json::object();

  void write(const fs::path& out) const {
    json j = {{"command", command},     {"argv", argv},       {"config", config},
              {"seeds", seeds},         {"inputs", inputs},   {"outputs", outputs},
              {"version", EDCRIR_VERSION}, {"timestamp", manifest_timestamp()}};
    const fs::path p = manifest_path(out);
    ensure_parent(p);
    std::ofstream f = open_output(p);
    f << j.dump(2) << '\n';
  }
};

std::string csv_double(double v) { return std::isfinite(v) ? format_double(v) : "nan"; }

// ---------------------------------------------------------------- gen-dataset

struct GenOptions {
  std::size_t rooms = 6000;
  std::uint64_t seed = 0;
  std::string out;
  unsigned threads = 0;
  bool rirs = false;
  bool quiet = false;
};

int cmd_gen_dataset(const GenOptions& o, const std::vector<std::string>& argv, std::ostream& out) {
  DatasetOptions opt;
  opt.n_rooms = o.rooms;
  opt.master_seed = o.seed;
  opt.threads = o.threads ? o.threads : default_thread_count();
  if (o.rirs) opt.rir_dir = fs::path(o.out) / "rirs";
  ProgressFn progress;
  if (!o.quiet) {
    progress = [&](std::size_t done, std::size_t total) {
      if (done % 100 == 0 || done == total) out << "simulated " << done << "/" << total << "\n";
    };
  }
  const Dataset ds = generate_dataset(opt, progress);
  write_dataset(o.out, ds, opt);

  Manifest m{"gen-dataset", argv};
  m.config = {{"rooms", o.rooms}, {"write_rirs", o.rirs}, {"simulator", kSimulatorVersion}};
  m.seeds = {{"master_seed", o.seed}};
  m.outputs = {{"dataset", o.out}};
  m.write(o.out);
  out << "wrote " << ds.size() << " rooms to " << o.out << "\n";
  return 0;
}

// ---------------------------------------------------------------------- train

struct TrainOptions {
  std::string dataset;
  std::string config;
  std::string out;
  std::vector<std::string> set;
  std::optional<int> epochs, batch_size, patience;
  std::optional<double> lr, dropout;
  std::optional<std::uint64_t> seed;
  bool verbose = false;
};

int cmd_train(const TrainOptions& o, const std::vector<std::string>& argv, std::ostream& out) {
  KeyValues kv;
  if (!o.config.empty()) kv = read_key_values(fs::path(o.config));
  for (const std::string& s : o.set) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw UsageError("--set expects key=value, got '" + s + "'");
    kv[trim(s.substr(0, eq))] = trim(s.substr(eq + 1));
  }
  if (o.epochs) kv["max_epochs"] = std::to_string(*o.epochs);
  if (o.batch_size) kv["batch_size"] = std::to_string(*o.batch_size);
  if (o.patience) kv["patience"] = std::to_string(*o.patience);
  if (o.lr) kv["learning_rate"] = format_double(*o.lr);
  if (o.dropout) kv["dropout"] = format_double(*o.dropout);
  if (o.seed) kv["seed"] = std::to_string(*o.seed);
  const neural::TrainConfig config = neural::train_config_from_key_values(kv);

  const Dataset ds = load_dataset(o.dataset);
  const neural::TrainingData data = make_training_data(ds);
  neural::EpochObserver observer;
  if (o.verbose) {
    observer = [&](const neural::EpochRecord& r) {
      out << "epoch " << r.epoch << " train " << r.train_loss << " val " << r.val_loss << "\n";
    };
  }
  const neural::TrainResult result = neural::train(data, ds.split, config, observer);
  ensure_parent(o.out);
  neural::save_model(fs::path(o.out), {result.params, config, ds.stats});
  {
    std::ofstream log = open_output(sibling(o.out, "_log").replace_extension(".csv"));
    neural::write_training_log(log, result.report);
  }

  std::stringstream cfg;
  neural::write_train_config(cfg, config);
  Manifest m{"train", argv};
  for (const auto& [k, v] : read_key_values(cfg)) m.config[k] = v;
  m.seeds = {{"train_seed", config.seed}, {"dataset_seed", ds.master_seed}};
  m.inputs = {{"dataset", o.dataset}, {"config", o.config}};
  m.outputs = {{"model", o.out}, {"log", sibling(o.out, "_log").replace_extension(".csv").string()}};
  m.write(o.out);
  out << "trained " << result.report.epochs.size() << " epochs (" << result.report.stop_reason
      << "), best epoch " << result.report.best_epoch << " val loss "
      << result.report.best_val_loss << "\n";
  return 0;
}

// -------------------------------------------------------------------- predict

struct PredictOptions {
  std::string model;
  std::string room;
  std::string features;
  std::string out;
  bool full_rate = false;
};

int cmd_predict(const PredictOptions& o, const std::vector<std::string>& argv, std::ostream& out) {
  if (o.room.empty() == o.features.empty()) {
    throw UsageError("predict needs exactly one of --room or --features");
  }
  FeatureVector fv{};
  if (!o.room.empty()) {
    fv = to_features(room_from_key_values(read_key_values(fs::path(o.room))));
  } else {
    const auto v = parse_double_list(o.features, "--features");
    if (v.size() != kNumFeatures) throw ValidationError("--features needs 16 values");
    std::copy(v.begin(), v.end(), fv.begin());
    validate_room(from_features(fv));
  }
  const neural::Checkpoint ck = neural::load_model(fs::path(o.model));
  const EdcGrid grid = predict_grid(ck.params, ck.stats, fv);
  const Edc edc = o.full_rate ? upsample_edc(grid) : grid.as_edc();
  ensure_parent(o.out);
  write_edc_file(o.out, edc);

  Manifest m{"predict", argv};
  m.config = {{"full_rate", o.full_rate}, {"features", std::vector<double>(fv.begin(), fv.end())}};
  m.inputs = {{"model", o.model}, {"room", o.room}};
  m.outputs = {{"edc", o.out}};
  m.write(o.out);
  out << "wrote " << edc.size() << "-point decay curve to " << o.out << "\n";
  return 0;
}

// ---------------------------------------------------------------- reconstruct

struct ReconstructOptions {
  std::string edc;
  std::string method = "rss";
  double stickiness = 0.90;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_reconstruct(const ReconstructOptions& o, const std::vector<std::string>& argv,
                    std::ostream& out) {
  const SignMode mode = parse_sign_mode(o.method);
  if (!(o.stickiness >= 0.0 && o.stickiness <= 1.0)) {
    throw ValidationError("stickiness must lie in [0, 1]");
  }
  Edc edc = read_edc_file(o.edc);
  // Grid curves are brought to the audio rate first.
  if (edc.sample_rate == kGridRate && edc.size() == kGridLength) {
    EdcGrid grid;
    grid.values = edc.values;
    edc = upsample_edc(grid);
  }
  edc.values = sanitize_curve(edc.values);
  const Rir rir = reconstruct(edc, {mode, o.stickiness, o.seed});
  ensure_parent(o.out);
  write_rir_file(o.out, rir);

  Manifest m{"reconstruct", argv};
  m.config = {{"method", std::string(to_string(mode))}, {"stickiness", o.stickiness}};
  m.seeds = {{"sign_seed", o.seed}};
  m.inputs = {{"edc", o.edc}};
  m.outputs = {{"rir", o.out}};
  m.write(o.out);
  out << "wrote " << rir.size() << "-sample RIR to " << o.out << "\n";
  return 0;
}

// ------------------------------------------------------------------- convolve

struct ConvolveOptions {
  std::string audio, rir, out;
};

int cmd_convolve(const ConvolveOptions& o, const std::vector<std::string>& argv, std::ostream& out) {
  const AudioBuffer dry = read_wav(fs::path(o.audio));
  const Rir rir = read_rir_file(o.rir);
  const AudioBuffer wet = convolve(dry, rir);
  ensure_parent(o.out);
  write_wav(fs::path(o.out), wet.samples, wet.sample_rate);

  Manifest m{"convolve", argv};
  m.config = {{"peak_dbfs", kConvolvePeakDbfs}};
  m.inputs = {{"audio", o.audio}, {"rir", o.rir}};
  m.outputs = {{"audio", o.out}};
  m.write(o.out);
  out << "wrote " << wet.samples.size() << " samples to " << o.out << "\n";
  return 0;
}

// ----------------------------------------------------------------------- eval

struct EvalOptions {
  std::string model, dataset, out;
  std::string split = "test";
  std::size_t rir_rooms = 4;
  double stickiness = 0.90;
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

struct RoomEval {
  std::size_t id = 0;
  double mae = 0.0, rmse = 0.0;
  AcousticParams truth{kNaN, kNaN, kNaN};
  AcousticParams pred{kNaN, kNaN, kNaN};
};

AcousticParams params_or_nan(const Edc& edc) {
  AcousticParams p{kNaN, kNaN, kNaN};
  try { p.edt_s = edt(edc); } catch (const Error&) {}
  try { p.t20_s = t20(edc); } catch (const Error&) {}
  p.c50_db = c50(edc);
  return p;
}

struct ParamSummary {
  std::size_t n = 0;
  double mae = kNaN, rmse = kNaN, r2 = kNaN;
};

ParamSummary summarize_param(const std::vector<RoomEval>& rooms, double AcousticParams::*field) {
  std::vector<double> ref, est;
  for (const RoomEval& r : rooms) {
    const double a = r.truth.*field, b = r.pred.*field;
    if (std::isfinite(a) && std::isfinite(b)) {
      ref.push_back(a);
      est.push_back(b);
    }
  }
  ParamSummary s;
  s.n = ref.size();
  if (ref.empty()) return s;
  const ErrorSummary e = summarize_errors(ref, est);
  s.mae = e.mae;
  s.rmse = e.rmse;
  s.r2 = e.r2;
  return s;
}

int cmd_eval(const EvalOptions& o, const std::vector<std::string>& argv, std::ostream& out) {
  const neural::Checkpoint ck = neural::load_model(fs::path(o.model));
  const Dataset ds = load_dataset(o.dataset);
  std::vector<std::size_t> ids;
  if (o.split == "train") ids = ds.split.train;
  else if (o.split == "validation") ids = ds.split.validation;
  else if (o.split == "test") ids = ds.split.test;
  else if (o.split == "all") {
    ids.resize(ds.size());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
  } else {
    throw UsageError("--split must be train, validation, test or all");
  }
  if (ids.empty()) throw ValidationError("eval: the selected split is empty");

  const unsigned threads = o.threads ? o.threads : default_thread_count();
  std::vector<RoomEval> rooms(ids.size());
  std::vector<std::vector<double>> errors(ids.size());
  parallel_for(ids.size(), threads, [&](std::size_t k) {
    const std::size_t i = ids[k];
    const EdcGrid pred = predict_grid(ck.params, ck.stats, ds.features[i]);
    const EdcGrid& truth = ds.edcs[i];
    RoomEval& r = rooms[k];
    r.id = i;
    const ErrorSummary e = summarize_errors(truth.values, pred.values);
    r.mae = e.mae;
    r.rmse = e.rmse;
    r.truth = params_or_nan(truth.as_edc());
    r.pred = params_or_nan(pred.as_edc());
    errors[k].resize(kGridLength);
    for (std::size_t t = 0; t < kGridLength; ++t) errors[k][t] = pred.values[t] - truth.values[t];
  });

  ensure_parent(o.out);
  {
    std::ofstream f = open_output(o.out);
    f << "room_id,mae,rmse,edt_true,edt_pred,t20_true,t20_pred,c50_true,c50_pred\n";
    for (const RoomEval& r : rooms) {
      f << r.id << ',' << csv_double(r.mae) << ',' << csv_double(r.rmse) << ','
        << csv_double(r.truth.edt_s) << ',' << csv_double(r.pred.edt_s) << ','
        << csv_double(r.truth.t20_s) << ',' << csv_double(r.pred.t20_s) << ','
        << csv_double(r.truth.c50_db) << ',' << csv_double(r.pred.c50_db) << '\n';
    }
  }

  // Per time step across rooms: |e| mean and std, RMSE and its delta-method std.
  const fs::path curves_path = sibling(o.out, "_curves");
  {
    std::ofstream f = open_output(curves_path);
    f << "time,mean_mae,std_mae,mean_rmse,std_rmse\n";
    const double n = static_cast<double>(rooms.size());
    for (std::size_t t = 0; t < kGridLength; ++t) {
      double sa = 0.0, sq = 0.0;
      for (const auto& e : errors) {
        sa += std::abs(e[t]);
        sq += e[t] * e[t];
      }
      const double mean_abs = sa / n, mean_sq = sq / n;
      double va = 0.0, vq = 0.0;
      for (const auto& e : errors) {
        va += (std::abs(e[t]) - mean_abs) * (std::abs(e[t]) - mean_abs);
        vq += (e[t] * e[t] - mean_sq) * (e[t] * e[t] - mean_sq);
      }
      const double denom = n > 1.0 ? n - 1.0 : 1.0;
      const double rms = std::sqrt(mean_sq);
      const double std_rms = rms > 0.0 ? std::sqrt(vq / denom) / (2.0 * rms) : 0.0;
      f << format_double(static_cast<double>(t) / kGridRate) << ',' << format_double(mean_abs) << ','
        << format_double(std::sqrt(va / denom)) << ',' << format_double(rms) << ','
        << format_double(std_rms) << '\n';
    }
  }

  const fs::path summary_path = sibling(o.out, "_summary");
  const std::pair<const char*, double AcousticParams::*> params[] = {
      {"T20", &AcousticParams::t20_s}, {"EDT", &AcousticParams::edt_s}, {"C50", &AcousticParams::c50_db}};
  json summary_json = json::object();
  {
    std::ofstream f = open_output(summary_path);
    f << "parameter,n,mae,rmse,r2\n";
    out << "parameter      n        MAE       RMSE         R2\n";
    for (const auto& [name, field] : params) {
      const ParamSummary s = summarize_param(rooms, field);
      f << name << ',' << s.n << ',' << csv_double(s.mae) << ',' << csv_double(s.rmse) << ','
        << csv_double(s.r2) << '\n';
      char line[128];
      std::snprintf(line, sizeof(line), "%-9s %6zu %10.4f %10.4f %10.4f\n", name, s.n, s.mae, s.rmse,
                    s.r2);
      out << line;
      summary_json[name] = {{"n", s.n}, {"mae", s.mae}, {"rmse", s.rmse}, {"r2", s.r2}};
    }
    double mae_sum = 0.0, rmse_sum = 0.0;
    for (const RoomEval& r : rooms) {
      mae_sum += r.mae;
      rmse_sum += r.rmse;
    }
    f << "EDC," << rooms.size() << ',' << csv_double(mae_sum / rooms.size()) << ','
      << csv_double(rmse_sum / rooms.size()) << ",nan\n";
  }

  // RIR-level comparison against the simulator on the first few rooms.
  const fs::path rir_path = sibling(o.out, "_rir");
  const std::size_t n_rir = std::min(o.rir_rooms, ids.size());
  struct RirRow {
    std::size_t id;
    std::string method;
    double mse, spectral, corr;
  };
  std::vector<std::vector<RirRow>> rir_rows(n_rir);
  parallel_for(n_rir, threads, [&](std::size_t k) {
    const std::size_t i = ids[k];
    const RoomSpec room = ds.room(i);
    const Rir truth = simulate_room_rir(room, ds.duration);
    const Edc pred = upsample_edc(predict_grid(ck.params, ck.stats, ds.features[i]));
    const Edc exact = compute_edc(truth);
    const std::uint64_t seed = derive_seed(o.seed, i);
    const std::tuple<const char*, const Edc*, SignMode> variants[] = {
        {"rss_pred", &pred, SignMode::kSticky},
        {"rs_pred", &pred, SignMode::kRandom},
        {"rss_true", &exact, SignMode::kSticky}};
    for (const auto& [name, edc, mode] : variants) {
      const Rir rec = reconstruct(*edc, {mode, o.stickiness, seed});
      rir_rows[k].push_back({i, name, rir_mse(truth, rec), spectral_mse_db(truth, rec),
                             rir_correlation(truth, rec)});
    }
  });
  {
    std::ofstream f = open_output(rir_path);
    f << "room_id,method,mse,spectral_mse_db,correlation\n";
    for (const auto& rows : rir_rows) {
      for (const RirRow& r : rows) {
        f << r.id << ',' << r.method << ',' << csv_double(r.mse) << ',' << csv_double(r.spectral)
          << ',' << csv_double(r.corr) << '\n';
      }
    }
  }

  Manifest m{"eval", argv};
  m.config = {{"split", o.split}, {"rooms", rooms.size()}, {"rir_rooms", n_rir},
              {"stickiness", o.stickiness}, {"summary", summary_json}};
  m.seeds = {{"sign_seed", o.seed}, {"dataset_seed", ds.master_seed}};
  m.inputs = {{"model", o.model}, {"dataset", o.dataset}};
  m.outputs = {{"report", o.out}, {"curves", curves_path.string()},
               {"summary", summary_path.string()}, {"rir", rir_path.string()}};
  m.write(o.out);
  return 0;
}

// --------------------------------------------------------------- mushra-stats

int cmd_mushra(const std::string& ratings, const std::string& out_path,
               const std::vector<std::string>& argv, std::ostream& out) {
  const auto stats = mushra_stats(read_ratings_csv(fs::path(ratings)));
  ensure_parent(out_path);
  {
    std::ofstream f = open_output(out_path);
    write_mushra_csv(f, stats);
  }
  Manifest m{"mushra-stats", argv};
  m.config = {{"ci_z", kCi95Z}};
  m.inputs = {{"ratings", ratings}};
  m.outputs = {{"stats", out_path}};
  m.write(out_path);
  write_mushra_csv(out, stats);
  return 0;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cmd_replay(const std::string& manifest, std::ostream& out, std::ostream& err) {
  json j;
  try {
    std::ifstream in = open_input(manifest);
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ValidationError("manifest: " + std::string(e.what()));
  }
  if (!j.contains("argv") || !j["argv"].is_array()) throw ValidationError("manifest has no argv");
  const auto argv = j["argv"].get<std::vector<std::string>>();
  if (!argv.empty() && argv.front() == "replay") throw ValidationError("manifest replays itself");
  return dispatch(argv, out, err);
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Room decay curve prediction and impulse response reconstruction", "edcrir"};
  app.require_subcommand(1);
  app.set_version_flag("--version", EDCRIR_VERSION);

  GenOptions gen;
  auto* c_gen = app.add_subcommand("gen-dataset", "Simulate rooms and write a training dataset");
  c_gen->add_option("--rooms", gen.rooms, "Number of rooms")->check(CLI::Range(5, 10000000));
  c_gen->add_option("--seed", gen.seed, "Master seed");
  c_gen->add_option("--out", gen.out, "Output directory")->required();
  c_gen->add_option("--threads", gen.threads, "Worker threads (default: EDCRIR_THREADS or all cores)");
  c_gen->add_flag("--write-rirs", gen.rirs, "Also write every RIR as rirs/room_NNNNN.wav");
  c_gen->add_flag("--quiet", gen.quiet, "No progress output");

  TrainOptions tr;
  auto* c_train = app.add_subcommand("train", "Train the decay-curve model");
  c_train->add_option("--dataset", tr.dataset, "Dataset directory")->required();
  c_train->add_option("--config", tr.config, "key=value config file");
  c_train->add_option("--out", tr.out, "Model file")->required();
  c_train->add_option("--set", tr.set, "Config override key=value (repeatable)");
  c_train->add_option("--epochs", tr.epochs, "max_epochs");
  c_train->add_option("--batch-size", tr.batch_size, "batch_size");
  c_train->add_option("--patience", tr.patience, "patience");
  c_train->add_option("--lr", tr.lr, "learning_rate");
  c_train->add_option("--dropout", tr.dropout, "dropout");
  c_train->add_option("--seed", tr.seed, "seed");
  c_train->add_flag("--verbose", tr.verbose, "Print per-epoch losses");

  PredictOptions pr;
  auto* c_pred = app.add_subcommand("predict", "Predict a room's decay curve");
  c_pred->add_option("--model", pr.model, "Model file")->required();
  c_pred->add_option("--room", pr.room, "Room file (key=value)");
  c_pred->add_option("--features", pr.features, "16 comma-separated raw features");
  c_pred->add_option("--out", pr.out, "Output curve (.csv or .wav)")->required();
  c_pred->add_flag("--full-rate", pr.full_rate, "Upsample to 48 kHz instead of the 480 Hz grid");

  ReconstructOptions rc;
  auto* c_rec = app.add_subcommand("reconstruct", "Rebuild an RIR from a decay curve");
  c_rec->add_option("--edc", rc.edc, "Decay curve (.csv or .wav)")->required();
  c_rec->add_option("--method", rc.method, "rs or rss");
  c_rec->add_option("--stickiness", rc.stickiness, "RSS stickiness, useful range 0.7-0.95");
  c_rec->add_option("--seed", rc.seed, "Sign seed");
  c_rec->add_option("--out", rc.out, "Output RIR (.wav float32, or .csv full precision)")->required();

  ConvolveOptions cv;
  auto* c_conv = app.add_subcommand("convolve", "Convolve dry audio with an RIR");
  c_conv->add_option("--audio", cv.audio, "Dry WAV")->required();
  c_conv->add_option("--rir", cv.rir, "RIR (.wav or .csv)")->required();
  c_conv->add_option("--out", cv.out, "Output WAV")->required();

  EvalOptions ev;
  auto* c_eval = app.add_subcommand("eval", "Evaluate a model on a dataset split");
  c_eval->add_option("--model", ev.model, "Model file")->required();
  c_eval->add_option("--dataset", ev.dataset, "Dataset directory")->required();
  c_eval->add_option("--out", ev.out, "Per-room report CSV")->required();
  c_eval->add_option("--split", ev.split, "train, validation, test or all");
  c_eval->add_option("--rir-rooms", ev.rir_rooms, "Rooms compared at RIR level");
  c_eval->add_option("--stickiness", ev.stickiness, "RSS stickiness");
  c_eval->add_option("--seed", ev.seed, "Sign seed");
  c_eval->add_option("--threads", ev.threads, "Worker threads");

  std::string ratings, mushra_out;
  auto* c_mushra = app.add_subcommand("mushra-stats", "Summarize listening-test ratings");
  c_mushra->add_option("--ratings", ratings, "CSV stimulus,participant,trial,score")->required();
  c_mushra->add_option("--out", mushra_out, "Output CSV")->required();

  std::string manifest;
  auto* c_replay = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  c_replay->add_option("--manifest", manifest, "Manifest JSON")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    return report(err, ErrorKind::kUsage, e.what());
  }

  if (c_gen->parsed()) return cmd_gen_dataset(gen, args, out);
  if (c_train->parsed()) return cmd_train(tr, args, out);
  if (c_pred->parsed()) return cmd_predict(pr, args, out);
  if (c_rec->parsed()) return cmd_reconstruct(rc, args, out);
  if (c_conv->parsed()) return cmd_convolve(cv, args, out);
  if (c_eval->parsed()) return cmd_eval(ev, args, out);
  if (c_mushra->parsed()) return cmd_mushra(ratings, mushra_out, args, out);
  if (c_replay->parsed()) return cmd_replay(manifest, out, err);
  return report(err, ErrorKind::kUsage, "no command given");
}

}  // namespace

std::string manifest_timestamp() {
  std::time_t t = std::time(nullptr);
  if (const char* env = std::getenv("SOURCE_DATE_EPOCH")) {
    char* end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (end != env && *end == '\0') t = static_cast<std::time_t>(v);
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

static void write_signal(const fs::path& path, std::span<const double> values, double sample_rate,
                         std::string_view column) {
  if (path.extension() == ".wav") {
    write_wav(path, values, sample_rate);
    return;
  }
  std::ofstream f = open_output(path);
  f << "# sample_rate=" << format_double(sample_rate) << "\ntime_s," << column << '\n';
  for (std::size_t i = 0; i < values.size(); ++i) {
    f << format_double(static_cast<double>(i) / sample_rate) << ',' << format_double(values[i])
      << '\n';
  }
}

static AudioBuffer read_signal(const fs::path& path) {
  if (path.extension() == ".wav") return read_wav(path);
  AudioBuffer a;
  std::ifstream in = open_input(path);
  std::string line;
  bool have_rate = false;
  while (std::getline(in, line)) {
    const std::string s = trim(line);
    if (s.empty()) continue;
    if (s.front() == '#') {
      const auto eq = s.find("sample_rate=");
      if (eq != std::string::npos) {
        a.sample_rate = parse_double(s.substr(eq + 12), "sample_rate");
        have_rate = true;
      }
      continue;
    }
    if (s.rfind("time_s", 0) == 0) continue;
    const auto f = split(s, ',');
    if (f.size() != 2) throw ValidationError(path.string() + ": expected two-column rows");
    a.samples.push_back(parse_double(f[1], path.string()));
  }
  if (!have_rate) throw ValidationError(path.string() + ": missing '# sample_rate=' header");
  if (!(a.sample_rate > 0.0)) throw ValidationError(path.string() + ": sample rate must be positive");
  if (a.samples.empty()) throw ValidationError(path.string() + ": no samples");
  return a;
}

void write_edc_file(const fs::path& path, const Edc& edc) {
  write_signal(path, edc.values, edc.sample_rate, "edc");
}

Edc read_edc_file(const fs::path& path) {
  AudioBuffer a = read_signal(path);
  Edc edc{std::move(a.samples), a.sample_rate};
  validate_edc(edc, 1e-9);
  return edc;
}

void write_rir_file(const fs::path& path, const Rir& rir) {
  write_signal(path, rir.samples, rir.sample_rate, "rir");
}

Rir read_rir_file(const fs::path& path) {
  AudioBuffer a = read_signal(path);
  Rir rir;
  rir.samples = std::move(a.samples);
  rir.sample_rate = a.sample_rate;
  validate_rir(rir);
  return rir;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out, err);
  } catch (const Error& e) {
    return report(err, e.kind(), e.what());
  } catch (const fs::filesystem_error& e) {
    return report(err, ErrorKind::kValidation, e.what());
  } catch (const std::exception& e) {
    return report(err, ErrorKind::kNumeric, e.what());
  }
}

int run_cli(const std::vector<std::string>& args) { return run_cli(args, std::cout, std::cerr); }

}  // namespace edcrir::cli
