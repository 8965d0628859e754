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

#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "edcrir/room.hpp"

namespace edcrir {

std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char delim);

// Strict double parse; throws ValidationError naming `what` on failure.
double parse_double(std::string_view s, std::string_view what);
std::vector<double> parse_double_list(std::string_view s, std::string_view what);

// Shortest round-trip representation.
std::string format_double(double v);

// Flat key=value text. Blank lines and '#' comments are ignored.
using KeyValues = std::map<std::string, std::string>;
KeyValues read_key_values(std::istream& in);
KeyValues read_key_values(const std::filesystem::path& path);

// Room description as key=value: length_m, width_m, height_m,
// source=x,y,z, receiver=x,y,z, absorption=a125,...,a8000.
RoomSpec room_from_key_values(const KeyValues& kv);
void write_room(std::ostream& out, const RoomSpec& room);

// Sixteen "name min max" lines.
void write_norm_stats(std::ostream& out, const NormStats& stats);
NormStats read_norm_stats(std::istream& in);
NormStats read_norm_stats(const std::filesystem::path& path);

void write_csv_row(std::ostream& out, std::span<const double> values);

std::ofstream open_output(const std::filesystem::path& path);
std::ifstream open_input(const std::filesystem::path& path);

}  // namespace edcrir
