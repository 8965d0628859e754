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

#include "edcrir/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "edcrir/error.hpp"
#include "edcrir/fft.hpp"

namespace edcrir {

namespace {

void check_pair(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ValidationError("metric inputs differ in length");
  if (a.empty()) throw ValidationError("metric inputs are empty");
}

double mean(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

std::vector<double> padded(const std::vector<double>& x, std::size_t n) {
  std::vector<double> out(x);
  out.resize(n, 0.0);
  return out;
}

constexpr double kC50ClampDb = 60.0;
constexpr double kSpectrumFloorDb = -120.0;

}  // namespace

double decay_fit(std::span<const double> edc_db, double hi_db, double lo_db, double sample_rate) {
  if (!(hi_db > lo_db)) throw ValidationError("decay_fit: hi_db must exceed lo_db");
  if (!(sample_rate > 0.0)) throw ValidationError("decay_fit: sample rate must be positive");
  const bool reaches = std::any_of(edc_db.begin(), edc_db.end(),
                                   [&](double v) { return v <= lo_db; });
  if (!reaches) throw ValidationError("insufficient decay range");

  double n = 0.0, st = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < edc_db.size(); ++i) {
    const double y = edc_db[i];
    if (y > hi_db || y < lo_db) continue;
    n += 1.0;
    st += static_cast<double>(i) / sample_rate;
    sy += y;
  }
  if (n < 2.0) throw ValidationError("insufficient decay range");
  const double tm = st / n;
  const double ym = sy / n;
  double stt = 0.0, sty = 0.0;
  for (std::size_t i = 0; i < edc_db.size(); ++i) {
    const double y = edc_db[i];
    if (y > hi_db || y < lo_db) continue;
    const double t = static_cast<double>(i) / sample_rate - tm;
    stt += t * t;
    sty += t * (y - ym);
  }
  if (!(stt > 0.0)) throw ValidationError("insufficient decay range");
  return sty / stt;
}

double t20(const Edc& edc) {
  const double slope = decay_fit(to_db(edc), -5.0, -25.0, edc.sample_rate);
  if (!(slope < 0.0)) throw NumericError("T20 fit produced a non-negative slope");
  return -60.0 / slope;
}

double edt(const Edc& edc) {
  const double slope = decay_fit(to_db(edc), 0.0, -10.0, edc.sample_rate);
  if (!(slope < 0.0)) throw NumericError("EDT fit produced a non-negative slope");
  return -60.0 / slope;
}

double c50(const Edc& edc) {
  if (edc.values.empty()) throw ValidationError("EDC is empty");
  const auto idx = static_cast<std::size_t>(std::llround(0.05 * edc.sample_rate));
  const double late = idx < edc.values.size() ? std::clamp(edc.values[idx], 0.0, 1.0) : 0.0;
  if (late <= 0.0) return kC50ClampDb;
  if (late >= 1.0) return -kC50ClampDb;
  const double db = 10.0 * std::log10((1.0 - late) / late);
  return std::clamp(db, -kC50ClampDb, kC50ClampDb);
}

AcousticParams acoustic_params(const Edc& edc) {
  return {edt(edc), t20(edc), c50(edc)};
}

double mae(std::span<const double> reference, std::span<const double> estimate) {
  check_pair(reference, estimate);
  double s = 0.0;
  for (std::size_t i = 0; i < reference.size(); ++i) s += std::abs(estimate[i] - reference[i]);
  return s / static_cast<double>(reference.size());
}

double rmse(std::span<const double> reference, std::span<const double> estimate) {
  check_pair(reference, estimate);
  double s = 0.0;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    const double e = estimate[i] - reference[i];
    s += e * e;
  }
  return std::sqrt(s / static_cast<double>(reference.size()));
}

double r2(std::span<const double> reference, std::span<const double> estimate) {
  check_pair(reference, estimate);
  const double m = mean(reference);
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    const double e = reference[i] - estimate[i];
    const double d = reference[i] - m;
    ss_res += e * e;
    ss_tot += d * d;
  }
  if (!(ss_tot > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return 1.0 - ss_res / ss_tot;
}

double pearson(std::span<const double> a, std::span<const double> b) {
  check_pair(a, b);
  const double ma = mean(a);
  const double mb = mean(b);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (!(saa > 0.0 && sbb > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

double rir_mse(const Rir& a, const Rir& b) {
  validate_rir(a);
  validate_rir(b);
  if (a.sample_rate != b.sample_rate) throw ValidationError("rir_mse: sample rates differ");
  const std::size_t n = std::max(a.size(), b.size());
  std::vector<double> x = padded(a.samples, n);
  std::vector<double> y = padded(b.samples, n);
  peak_normalize(x);
  peak_normalize(y);
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = x[i] - y[i];
    s += e * e;
  }
  return s / static_cast<double>(n);
}

double spectral_mse_db(const Rir& a, const Rir& b) {
  validate_rir(a);
  validate_rir(b);
  if (a.sample_rate != b.sample_rate) throw ValidationError("spectral_mse_db: sample rates differ");
  const std::size_t n = next_pow2(std::max(a.size(), b.size()));
  const auto fa = rfft(a.samples, n);
  const auto fb = rfft(b.samples, n);
  auto to_db = [](std::complex<double> z) {
    const double mag = std::abs(z);
    return mag > 0.0 ? std::max(20.0 * std::log10(mag), kSpectrumFloorDb) : kSpectrumFloorDb;
  };
  double s = 0.0;
  for (std::size_t k = 0; k < fa.size(); ++k) {
    const double e = to_db(fa[k]) - to_db(fb[k]);
    s += e * e;
  }
  return s / static_cast<double>(fa.size());
}

double rir_correlation(const Rir& a, const Rir& b) {
  validate_rir(a);
  validate_rir(b);
  const std::size_t n = std::max(a.size(), b.size());
  const auto x = padded(a.samples, n);
  const auto y = padded(b.samples, n);
  return pearson(x, y);
}

double band_energy(const Rir& rir, double lo_hz, double hi_hz) {
  validate_rir(rir);
  const std::size_t n = next_pow2(rir.size());
  const auto bins = rfft(rir.samples, n);
  const double df = rir.sample_rate / static_cast<double>(n);
  double e = 0.0;
  for (std::size_t k = 0; k < bins.size(); ++k) {
    const double f = static_cast<double>(k) * df;
    if (f >= lo_hz && f <= hi_hz) e += std::norm(bins[k]);
  }
  return e;
}

ErrorSummary summarize_errors(std::span<const double> reference, std::span<const double> estimate) {
  return {mae(reference, estimate), rmse(reference, estimate), r2(reference, estimate)};
}

}  // namespace edcrir
