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

#include "edcrir/mushra.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "edcrir/error.hpp"
#include "edcrir/io.hpp"

namespace edcrir {

MushraStats summarize_scores(const std::string& stimulus, std::vector<double> scores) {
  if (scores.empty()) throw ValidationError("stimulus '" + stimulus + "' has no ratings");
  MushraStats st;
  st.stimulus = stimulus;
  st.count = scores.size();
  const double n = static_cast<double>(scores.size());
  double sum = 0.0;
  for (double s : scores) sum += s;
  st.mean = sum / n;
  if (scores.size() > 1) {
    double ss = 0.0;
    for (double s : scores) ss += (s - st.mean) * (s - st.mean);
    st.std = std::sqrt(ss / (n - 1.0));
  } else {
    st.std = 0.0;
    st.degenerate = true;
  }
  std::sort(scores.begin(), scores.end());
  const std::size_t mid = scores.size() / 2;
  st.median = scores.size() % 2 ? scores[mid] : 0.5 * (scores[mid - 1] + scores[mid]);
  st.sem = st.std / std::sqrt(n);
  st.ci95 = kCi95Z * st.sem;
  return st;
}

std::vector<MushraStats> mushra_stats(const std::vector<Rating>& ratings) {
  if (ratings.empty()) throw ValidationError("no ratings");
  std::vector<std::string> order;
  std::vector<std::vector<double>> groups;
  for (const Rating& r : ratings) {
    if (!(r.score >= 0.0 && r.score <= 100.0)) {
      throw ValidationError("score " + format_double(r.score) + " for '" + r.stimulus +
                            "' outside [0, 100]");
    }
    const auto it = std::find(order.begin(), order.end(), r.stimulus);
    if (it == order.end()) {
      order.push_back(r.stimulus);
      groups.push_back({r.score});
    } else {
      groups[static_cast<std::size_t>(it - order.begin())].push_back(r.score);
    }
  }
  std::vector<MushraStats> out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    out.push_back(summarize_scores(order[i], std::move(groups[i])));
  }
  return out;
}

std::vector<Rating> read_ratings_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("ratings CSV is empty");
  const auto header = split(line, ',');
  const std::vector<std::string> expected = {"stimulus", "participant", "trial", "score"};
  if (header != expected) {
    throw ValidationError("ratings CSV header must be stimulus,participant,trial,score");
  }
  std::vector<Rating> out;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 4) {
      throw ValidationError("ratings CSV line " + std::to_string(lineno) + ": expected 4 fields");
    }
    out.push_back({f[0], f[1], f[2], parse_double(f[3], "score")});
  }
  return out;
}

std::vector<Rating> read_ratings_csv(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  return read_ratings_csv(in);
}

void write_mushra_csv(std::ostream& out, const std::vector<MushraStats>& stats) {
  out << "stimulus,n,mean,std,median,sem,ci95\n";
  for (const MushraStats& s : stats) {
    out << s.stimulus << ',' << s.count << ',' << format_double(s.mean) << ','
        << format_double(s.std) << ',' << format_double(s.median) << ',' << format_double(s.sem)
        << ',' << format_double(s.ci95) << '\n';
  }
}

}  // namespace edcrir
