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

#include "pims/bench/csv.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "pims/common/error.hpp"

namespace pims::bench {

namespace {

template <typename T>
T parse_int(std::string_view field) {
  T v{};
  auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || end != field.data() + field.size()) {
    throw Error(ErrorCode::kDecodeError, "bad integer field: " + std::string(field));
  }
  return v;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

void write_csv(std::span<const BenchRow> rows, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << ledger::scheme_name(r.scheme) << ',' << r.t << ',' << r.n << ',' << r.msg_size_bytes
        << ',' << phase_name(r.phase) << ',' << r.latency_micros << ',' << r.rep << '\n';
  }
}

std::string format_csv(std::span<const BenchRow> rows) {
  std::ostringstream out;
  write_csv(rows, out);
  return out.str();
}

void emit_csv(std::span<const BenchRow> rows, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kStorageFailure, "cannot open " + path.string());
  write_csv(rows, out);
  if (!out.flush()) throw Error(ErrorCode::kStorageFailure, "write failed: " + path.string());
}

std::vector<BenchRow> parse_csv(std::string_view text) {
  std::vector<BenchRow> rows;
  bool header = true;
  while (!text.empty()) {
    auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (header) {
      if (line != kCsvHeader) throw Error(ErrorCode::kDecodeError, "unexpected CSV header");
      header = false;
      continue;
    }
    if (line.empty()) continue;
    auto f = split_fields(line);
    if (f.size() != 7) throw Error(ErrorCode::kDecodeError, "expected 7 fields");
    BenchRow r;
    try {
      r.scheme = ledger::scheme_from_name(f[0]);
    } catch (const Error&) {
      throw Error(ErrorCode::kDecodeError, "unknown scheme: " + std::string(f[0]));
    }
    r.t = parse_int<std::uint32_t>(f[1]);
    r.n = parse_int<std::uint32_t>(f[2]);
    r.msg_size_bytes = parse_int<std::uint64_t>(f[3]);
    r.phase = phase_from_name(f[4]);
    r.latency_micros = parse_int<std::int64_t>(f[5]);
    r.rep = parse_int<std::uint32_t>(f[6]);
    rows.push_back(r);
  }
  if (header) throw Error(ErrorCode::kDecodeError, "missing CSV header");
  return rows;
}

std::vector<BenchRow> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kNotFound, "cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_csv(ss.str());
}

}  // namespace pims::bench
