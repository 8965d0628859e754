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

#include <span>
#include <string>
#include <vector>

#include "edcrir/edc.hpp"
#include "edcrir/rir.hpp"

namespace edcrir {

// Least-squares slope (dB/s) over the samples with hi_db >= value >= lo_db.
// Throws ValidationError("insufficient decay range") when the curve never
// reaches lo_db or fewer than two samples fall in the window.
double decay_fit(std::span<const double> edc_db, double hi_db, double lo_db,
                 double sample_rate);

// Fit over [-5, -25] dB, extrapolated to 60 dB.
double t20(const Edc& edc);
// Fit over [0, -10] dB, extrapolated to 60 dB.
double edt(const Edc& edc);
// 10 log10((1 - E) / E) with E the normalized curve at the sample nearest
// 50 ms, clamped to +/-60 dB.
double c50(const Edc& edc);

struct AcousticParams {
  double edt_s = 0.0;
  double t20_s = 0.0;
  double c50_db = 0.0;
};

AcousticParams acoustic_params(const Edc& edc);

double mae(std::span<const double> reference, std::span<const double> estimate);
double rmse(std::span<const double> reference, std::span<const double> estimate);
// Coefficient of determination of `estimate` against `reference`. NaN when the
// reference has zero variance.
double r2(std::span<const double> reference, std::span<const double> estimate);
// NaN when either argument has zero variance.
double pearson(std::span<const double> a, std::span<const double> b);

// Mean squared difference after peak-normalizing both; the shorter signal is
// zero-padded. Rates must match.
double rir_mse(const Rir& a, const Rir& b);

// Mean squared difference of the dB magnitude spectra (-120 dB floor) over
// bins 0..n/2 with n the next power of two >= the longer length.
double spectral_mse_db(const Rir& a, const Rir& b);

// Pearson correlation over the common zero-padded length.
double rir_correlation(const Rir& a, const Rir& b);

// Sum of |X(f)|^2 over FFT bins with lo_hz <= f <= hi_hz.
double band_energy(const Rir& rir, double lo_hz, double hi_hz);

// Aggregate MAE / RMSE / R^2 for one parameter.
struct ErrorSummary {
  double mae = 0.0;
  double rmse = 0.0;
  double r2 = 0.0;
};

ErrorSummary summarize_errors(std::span<const double> reference, std::span<const double> estimate);

}  // namespace edcrir
