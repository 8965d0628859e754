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

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace edcrir {

struct Rating {
  std::string stimulus;
  std::string participant;
  std::string trial;
  double score = 0.0;
};

struct MushraStats {
  std::string stimulus;
  std::size_t count = 0;
  double mean = 0.0;
  double std = 0.0;  // sample (n - 1) standard deviation
  double median = 0.0;
  double sem = 0.0;
  double ci95 = 0.0;  // 1.96 * sem
  bool degenerate = false;  // single rating: std reported as 0
};

inline constexpr double kCi95Z = 1.96;

// Per-stimulus statistics in order of first appearance. Throws
// ValidationError for scores outside [0, 100] or an empty input.
std::vector<MushraStats> mushra_stats(const std::vector<Rating>& ratings);

MushraStats summarize_scores(const std::string& stimulus, std::vector<double> scores);

// CSV with header stimulus,participant,trial,score.
std::vector<Rating> read_ratings_csv(std::istream& in);
std::vector<Rating> read_ratings_csv(const std::filesystem::path& path);

void write_mushra_csv(std::ostream& out, const std::vector<MushraStats>& stats);

}  // namespace edcrir
