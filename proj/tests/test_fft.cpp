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

#include <complex>
#include <vector>

#include "edcrir/fft.hpp"
#include "edcrir/rng.hpp"
#include "oracles.hpp"

using namespace edcrir;

TEST_CASE("next_pow2") {
  CHECK(next_pow2(1) == 1u);
  CHECK(next_pow2(2) == 2u);
  CHECK(next_pow2(3) == 4u);
  CHECK(next_pow2(48000) == 65536u);
  CHECK(next_pow2(65536) == 65536u);
}

TEST_CASE("real FFT matches the direct DFT") {
  Rng rng(3);
  std::vector<double> x(300);
  for (double& v : x) v = rng.uniform(-1.0, 1.0);
  for (std::size_t n : {300u, 512u, 1000u}) {
    const auto fast = rfft(x, n);
    const auto slow = oracle::dft(x, n);
    REQUIRE(fast.size() == slow.size());
    for (std::size_t k = 0; k < fast.size(); ++k) CHECK(std::abs(fast[k] - slow[k]) < 1e-9);
  }
}

TEST_CASE("inverse FFT undoes the forward transform") {
  Rng rng(4);
  std::vector<double> x(1024);
  for (double& v : x) v = rng.uniform(-1.0, 1.0);
  const auto back = irfft(rfft(x, 1024), 1024);
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(back[i] == doctest::Approx(x[i]).epsilon(1e-12));
}

TEST_CASE("FFT convolution matches the O(n^2) sum") {
  Rng rng(5);
  for (auto [na, nb] : {std::pair{1u, 1u}, {3u, 2u}, {17u, 64u}, {1000u, 333u}}) {
    std::vector<double> a(na), b(nb);
    for (double& v : a) v = rng.uniform(-1.0, 1.0);
    for (double& v : b) v = rng.uniform(-1.0, 1.0);
    const auto fast = fft_convolve(a, b);
    const auto slow = oracle::direct_convolution(a, b);
    REQUIRE(fast.size() == slow.size());
    for (std::size_t i = 0; i < fast.size(); ++i) CHECK(std::abs(fast[i] - slow[i]) < 1e-10);
  }
  const auto small = fft_convolve(std::vector<double>{1, 2}, std::vector<double>{1, 3});
  REQUIRE(small.size() == 3u);
  CHECK(small[0] == doctest::Approx(1.0));
  CHECK(small[1] == doctest::Approx(5.0));
  CHECK(small[2] == doctest::Approx(6.0));
}
