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


#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cstring>

#include "cli.hpp"
#include "edcrir/dataset.hpp"
#include "edcrir/edc.hpp"
#include "edcrir/error.hpp"
#include "edcrir/ism.hpp"
#include "edcrir/metrics.hpp"
#include "edcrir/mushra.hpp"
#include "edcrir/neural/checkpoint.hpp"
#include "edcrir/predictor.hpp"
#include "edcrir/reconstruct.hpp"

namespace py = pybind11;
using namespace edcrir;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<double> to_vector(const Array& a) {
  if (a.ndim() != 1) throw ValidationError("expected a 1-D array");
  return {a.data(), a.data() + a.size()};
}

Array to_array(const std::vector<double>& v) {
  Array out(static_cast<py::ssize_t>(v.size()));
  std::memcpy(out.mutable_data(), v.data(), v.size() * sizeof(double));
  return out;
}

Edc edc_from(const Array& values, double rate) { return {to_vector(values), rate}; }

}  // namespace

PYBIND11_MODULE(_edcrir, m) {
  m.doc() = "Room decay curve prediction and impulse response reconstruction";
  m.attr("__version__") = EDCRIR_VERSION;

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<UsageError>(m, "UsageError", base.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<NumericError>(m, "NumericError", base.ptr());

  py::class_<RoomSpec>(m, "RoomSpec")
      .def(py::init<>())
      .def_readwrite("length_m", &RoomSpec::length_m)
      .def_readwrite("width_m", &RoomSpec::width_m)
      .def_readwrite("height_m", &RoomSpec::height_m)
      .def_readwrite("source", &RoomSpec::source)
      .def_readwrite("receiver", &RoomSpec::receiver)
      .def_readwrite("absorption", &RoomSpec::absorption)
      .def("volume", &RoomSpec::volume)
      .def("features", [](const RoomSpec& r) {
        const FeatureVector f = to_features(r);
        return to_array({f.begin(), f.end()});
      })
      .def("__eq__", [](const RoomSpec& a, const RoomSpec& b) { return a == b; })
      .def("__repr__", [](const RoomSpec& r) { return "RoomSpec(" + describe(r) + ")"; });

  m.def("sample_room", [](std::uint64_t seed) { return sample_room(seed); }, py::arg("seed"),
        "Room drawn with the default ranges and material presets.");
  m.def("room_from_features", [](const Array& f) {
    const auto v = to_vector(f);
    if (v.size() != kNumFeatures) throw ValidationError("expected 16 features");
    FeatureVector fv{};
    std::copy(v.begin(), v.end(), fv.begin());
    RoomSpec room = from_features(fv);
    validate_room(room);
    return room;
  });
  m.def("eyring_t60", &eyring_t60, py::arg("volume"), py::arg("surface"), py::arg("absorption"));

  m.def(
      "simulate_rir",
      [](const RoomSpec& room, std::optional<double> duration) {
        const double d = duration ? *duration : simulation_duration(room);
        Rir rir;
        {
          py::gil_scoped_release release;
          rir = simulate_rir(room, d);
        }
        return to_array(rir.samples);
      },
      py::arg("room"), py::arg("duration") = py::none(),
      "Peak-normalized 48 kHz RIR; the duration defaults to the room's policy length.");

  m.def(
      "compute_edc",
      [](const Array& rir, double rate) {
        Rir r;
        r.samples = to_vector(rir);
        r.sample_rate = rate;
        return to_array(compute_edc(r).values);
      },
      py::arg("rir"), py::arg("sample_rate") = kDefaultSampleRate);

  m.def(
      "reconstruct",
      [](const Array& edc, const std::string& method, double stickiness, std::uint64_t seed, double rate) {
        return to_array(reconstruct(edc_from(edc, rate), {parse_sign_mode(method), stickiness, seed}).samples);
      },
      py::arg("edc"), py::arg("method") = "rss", py::arg("stickiness") = 0.90, py::arg("seed") = 0,
      py::arg("sample_rate") = kDefaultSampleRate);

  m.def(
      "downsample_edc", [](const Array& edc, double rate) { return to_array(downsample_edc(edc_from(edc, rate)).values); },
      py::arg("edc"), py::arg("sample_rate") = kDefaultSampleRate);
  m.def(
      "upsample_edc",
      [](const Array& grid) {
        EdcGrid g;
        g.values = to_vector(grid);
        if (g.values.size() != kGridLength) throw ValidationError("expected a 1440-point grid");
        return to_array(upsample_edc(g).values);
      },
      py::arg("grid"));

  m.def("t20", [](const Array& e, double rate) { return t20(edc_from(e, rate)); }, py::arg("edc"),
        py::arg("sample_rate") = kDefaultSampleRate);
  m.def("edt", [](const Array& e, double rate) { return edt(edc_from(e, rate)); }, py::arg("edc"),
        py::arg("sample_rate") = kDefaultSampleRate);
  m.def("c50", [](const Array& e, double rate) { return c50(edc_from(e, rate)); }, py::arg("edc"),
        py::arg("sample_rate") = kDefaultSampleRate);

  py::class_<neural::Checkpoint>(m, "Model")
      .def_static("load", [](const std::filesystem::path& p) { return neural::load_model(p); })
      .def_property_readonly("hidden", [](const neural::Checkpoint& c) { return c.params.dims.hidden; })
      .def_property_readonly("dense", [](const neural::Checkpoint& c) { return c.params.dims.dense; })
      .def("predict", [](const neural::Checkpoint& c, const RoomSpec& room) {
        return to_array(predict_grid(c.params, c.stats, to_features(room)).values);
      }, "Decay curve on the 480 Hz grid (1440 points).");

  py::class_<MushraStats>(m, "MushraStats")
      .def_readonly("stimulus", &MushraStats::stimulus)
      .def_readonly("count", &MushraStats::count)
      .def_readonly("mean", &MushraStats::mean)
      .def_readonly("std", &MushraStats::std)
      .def_readonly("median", &MushraStats::median)
      .def_readonly("sem", &MushraStats::sem)
      .def_readonly("ci95", &MushraStats::ci95);
  m.def("mushra_stats", [](const std::vector<std::tuple<std::string, std::string, std::string, double>>& rows) {
    std::vector<Rating> ratings;
    for (const auto& [stimulus, participant, trial, score] : rows) {
      ratings.push_back({stimulus, participant, trial, score});
    }
    return mushra_stats(ratings);
  }, py::arg("ratings"), "Rows of (stimulus, participant, trial, score).");

  m.def("run_cli", [](const std::vector<std::string>& args) {
    py::gil_scoped_release release;
    return cli::run_cli(args);
  }, py::arg("args"), "Runs a command line; returns the exit code.");
}
