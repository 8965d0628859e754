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

#include <cmath>
#include <numeric>
#include <vector>

#include "edcrir/edc.hpp"
#include "edcrir/error.hpp"
#include "edcrir/ism.hpp"
#include "edcrir/metrics.hpp"
#include "edcrir/reconstruct.hpp"
#include "edcrir/rng.hpp"

using namespace edcrir;

namespace {

Edc exponential_edc(double t60, std::size_t n) {
  Edc e;
  e.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) e.values[i] = std::pow(10.0, -6.0 * i / (t60 * kDefaultSampleRate));
  return e;
}

Edc random_edc(Rng& rng, std::size_t n) {
  std::vector<double> h(n);
  for (double& v : h) v = rng.uniform(-1.0, 1.0) * std::exp(-rng.uniform(0.0, 5.0));
  return compute_edc(Rir{h});
}

}  // namespace

TEST_CASE("sign method names") {
  CHECK(parse_sign_mode("rs") == SignMode::kRandom);
  CHECK(parse_sign_mode("rss") == SignMode::kSticky);
  CHECK(to_string(SignMode::kSticky) == "rss");
  CHECK_THROWS_AS(parse_sign_mode("minphase"), UsageError);
}

TEST_CASE("reverse differentiation") {
  CHECK(reverse_diff(std::vector<double>{1, 0, 0}) == std::vector<double>{1, 0, 0});
  CHECK(reverse_diff(std::vector<double>{1, 0.5}) == std::vector<double>{0.5, 0.5});
  Rng rng(1);
  for (int t = 0; t < 50; ++t) {
    const Edc e = random_edc(rng, 500);
    const auto d = reverse_diff(e.values);
    double sum = 0.0;
    for (double v : d) {
      CHECK(v >= -1e-15);
      sum += v;
    }
    CHECK(sum == doctest::Approx(e.values.front()).epsilon(1e-12));
  }
}

TEST_CASE("magnitude extraction") {
  CHECK(magnitude_from_edc(std::vector<double>{1, 0}) == std::vector<double>{1, 0});
  const double r = 0.95;
  std::vector<double> geo(200);
  for (std::size_t n = 0; n < geo.size(); ++n) geo[n] = std::pow(r, static_cast<double>(n));
  const auto mag = magnitude_from_edc(geo);
  for (std::size_t n = 0; n + 1 < geo.size(); ++n)
    CHECK(mag[n] == doctest::Approx(std::sqrt((1 - r) * std::pow(r, static_cast<double>(n)))).epsilon(1e-12));
  // Clipping only touches increasing steps.
  const auto clipped = magnitude_from_edc(std::vector<double>{1.0, 0.5, 0.6, 0.1});
  CHECK(clipped[1] == 0.0);

  Rng rng(2);
  for (int t = 0; t < 20; ++t) {
    const auto m = magnitude_from_edc(random_edc(rng, 300).values);
    double energy = 0.0;
    for (double v : m) energy += v * v;
    CHECK(energy == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("sticky signs") {
  SignPolicy p{SignMode::kSticky, 1.0, 3};
  const std::vector<double> mag = {0.5, 0.25, 0.1, 0.0, 0.3};
  CHECK(assign_signs(mag, p) == mag);

  p.stickiness = 0.9;
  const std::size_t n = 1000000;
  const auto s = draw_signs(n, p);
  CHECK(s[0] == 1);
  std::size_t flips = 0;
  for (std::size_t i = 1; i < n; ++i) flips += s[i] != s[i - 1];
  const double rate = static_cast<double>(flips) / (n - 1);
  CHECK(rate >= 0.095);
  CHECK(rate <= 0.105);

  p.stickiness = 1.5;
  CHECK_THROWS_AS(draw_signs(10, p), ValidationError);
}

TEST_CASE("random signs are balanced") {
  const auto s = draw_signs(1000000, SignPolicy{SignMode::kRandom, 0.9, 11});
  const double mean = std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(s.size());
  CHECK(std::abs(mean) <= 0.004);
}

TEST_CASE("round trip through the Schroeder integral") {
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    const Edc e = random_edc(rng, 2000);
    for (SignMode mode : {SignMode::kRandom, SignMode::kSticky}) {
      const Rir r = reconstruct(e, SignPolicy{mode, 0.9, static_cast<std::uint64_t>(t)});
      CHECK(r.sample_rate == e.sample_rate);
      const Edc back = compute_edc(r);
      for (std::size_t i = 0; i < e.size(); ++i) REQUIRE(std::abs(back.values[i] - e.values[i]) <= 1e-9);
    }
  }
  const Rir sim = simulate_rir(sample_room(4), 0.5);
  const Edc e = compute_edc(sim);
  const Edc back = compute_edc(reconstruct(e, SignPolicy{}));
  for (std::size_t i = 0; i < e.size(); ++i) REQUIRE(std::abs(back.values[i] - e.values[i]) <= 1e-9);
}

TEST_CASE("identity EDC reconstructs an impulse") {
  Edc e;
  e.values = {1.0, 0.0, 0.0, 0.0};
  for (SignMode mode : {SignMode::kRandom, SignMode::kSticky}) {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      const Rir r = reconstruct(e, SignPolicy{mode, 0.9, seed});
      CHECK(std::abs(r.samples[0]) == 1.0);
      if (mode == SignMode::kSticky) CHECK(r.samples[0] == 1.0);
      for (std::size_t i = 1; i < 4; ++i) CHECK(r.samples[i] == 0.0);
    }
  }
}

TEST_CASE("determinism") {
  const Edc e = exponential_edc(0.7, 20000);
  const SignPolicy p{SignMode::kSticky, 0.85, 42};
  CHECK(reconstruct(e, p).samples == reconstruct(e, p).samples);
}

TEST_CASE("sticky signs carry more low-frequency energy than random signs") {
  const Edc e = exponential_edc(1.0, 48000);
  double rs = 0.0, rss = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    rs += band_energy(reconstruct(e, SignPolicy{SignMode::kRandom, 0.9, seed}), 0.0, 500.0);
    rss += band_energy(reconstruct(e, SignPolicy{SignMode::kSticky, 0.9, seed}), 0.0, 500.0);
  }
  MESSAGE("0-500 Hz energy, RSS / RS: " << rss / rs);
  CHECK(rss > rs);
}
