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
#include <string>
#include <vector>

#include "edcrir/edc.hpp"

namespace edcrir::cli {

// Runs one command. `args` excludes the program name. Returns the process
// exit code: 0 ok, 2 usage, 3 validation, 4 numeric. Failures print one line
//   error: code=N kind=<usage|validation|numeric> msg="..."
// to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args);

// Signal files: "# sample_rate=R", a "time_s,<name>" header, then one row per
// sample at full double precision. Paths ending in .wav are 32-bit float
// WAV instead.
void write_edc_file(const std::filesystem::path& path, const Edc& edc);
Edc read_edc_file(const std::filesystem::path& path);
void write_rir_file(const std::filesystem::path& path, const Rir& rir);
Rir read_rir_file(const std::filesystem::path& path);

// UTC ISO-8601 time, taken from SOURCE_DATE_EPOCH when set.
std::string manifest_timestamp();

}  // namespace edcrir::cli
