// Copyright 2026 The PIMS Authorization Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "pims/bench/rows.hpp"

namespace pims::bench {

inline constexpr std::string_view kCsvHeader =
    "scheme,t,n,msg_size_bytes,phase,latency_micros,rep";

// Header line followed by one line per row, "\n" terminated.
std::string format_csv(std::span<const BenchRow> rows);
void write_csv(std::span<const BenchRow> rows, std::ostream& out);
// Throws Error(kStorageFailure) if the file cannot be written.
void emit_csv(std::span<const BenchRow> rows, const std::filesystem::path& path);

// Throws Error(kDecodeError) on a bad header or malformed line.
std::vector<BenchRow> parse_csv(std::string_view text);
std::vector<BenchRow> read_csv(const std::filesystem::path& path);

}  // namespace pims::bench
