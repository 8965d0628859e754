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

#include "edcrir/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "edcrir/error.hpp"

namespace edcrir {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view s, char delim) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(delim, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(std::string_view s, std::string_view what) {
  const std::string t = trim(s);
  double v = 0.0;
  const char* begin = t.data();
  const char* end = t.data() + t.size();
  if (!t.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (t.empty() || ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw ValidationError("cannot parse " + std::string(what) + " from '" + t + "'");
  }
  return v;
}

std::vector<double> parse_double_list(std::string_view s, std::string_view what) {
  std::vector<double> out;
  for (const std::string& item : split(s, ',')) out.push_back(parse_double(item, what));
  return out;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw NumericError("cannot format number");
  return std::string(buf, ptr);
}

KeyValues read_key_values(std::istream& in) {
  KeyValues kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("line " + std::to_string(lineno) + ": expected key=value");
    }
    kv[trim(std::string_view(t).substr(0, eq))] = trim(std::string_view(t).substr(eq + 1));
  }
  return kv;
}

KeyValues read_key_values(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  return read_key_values(in);
}

namespace {

const std::string& require(const KeyValues& kv, const std::string& key) {
  const auto it = kv.find(key);
  if (it == kv.end()) throw ValidationError("room file: missing key '" + key + "'");
  return it->second;
}

template <std::size_t N>
std::array<double, N> fixed_list(const KeyValues& kv, const std::string& key) {
  const std::vector<double> v = parse_double_list(require(kv, key), key);
  if (v.size() != N) {
    throw ValidationError("room file: '" + key + "' needs " + std::to_string(N) + " values");
  }
  std::array<double, N> out{};
  std::copy(v.begin(), v.end(), out.begin());
  return out;
}

}  // namespace

RoomSpec room_from_key_values(const KeyValues& kv) {
  RoomSpec room;
  room.length_m = parse_double(require(kv, "length_m"), "length_m");
  room.width_m = parse_double(require(kv, "width_m"), "width_m");
  room.height_m = parse_double(require(kv, "height_m"), "height_m");
  room.source = fixed_list<3>(kv, "source");
  room.receiver = fixed_list<3>(kv, "receiver");
  room.absorption = fixed_list<kNumBands>(kv, "absorption");
  validate_room(room);
  return room;
}

void write_room(std::ostream& out, const RoomSpec& room) {
  auto list = [&](std::span<const double> v) {
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << format_double(v[i]);
    out << '\n';
  };
  out << "length_m=" << format_double(room.length_m) << '\n';
  out << "width_m=" << format_double(room.width_m) << '\n';
  out << "height_m=" << format_double(room.height_m) << '\n';
  out << "source=";
  list(room.source);
  out << "receiver=";
  list(room.receiver);
  out << "absorption=";
  list(room.absorption);
}

void write_norm_stats(std::ostream& out, const NormStats& stats) {
  const auto names = feature_names();
  for (std::size_t i = 0; i < kNumFeatures; ++i) {
    out << names[i] << ' ' << format_double(stats.min[i]) << ' ' << format_double(stats.max[i])
        << '\n';
  }
}

NormStats read_norm_stats(std::istream& in) {
  NormStats stats;
  const auto names = feature_names();
  std::string line;
  std::size_t i = 0;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    if (i >= kNumFeatures) throw ValidationError("norm stats: too many lines");
    const auto parts = split(t, ' ');
    if (parts.size() != 3 || parts[0] != names[i]) {
      throw ValidationError("norm stats: expected '" + std::string(names[i]) + " min max'");
    }
    stats.min[i] = parse_double(parts[1], "norm min");
    stats.max[i] = parse_double(parts[2], "norm max");
    if (stats.max[i] < stats.min[i]) throw ValidationError("norm stats: max < min");
    ++i;
  }
  if (i != kNumFeatures) throw ValidationError("norm stats: expected 16 features");
  return stats;
}

NormStats read_norm_stats(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  return read_norm_stats(in);
}

void write_csv_row(std::ostream& out, std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out << ',';
    out << format_double(values[i]);
  }
  out << '\n';
}

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open '" + path.string() + "' for writing");
  return out;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path.string() + "'");
  return in;
}

}  // namespace edcrir
