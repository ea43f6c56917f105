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

#include <span>
#include <string>
#include <vector>

#include "pims/bench/rows.hpp"

namespace pims::bench {

// The sweep variable a set of rows varies along.
enum class Axis { kThreshold, kNodes, kMsgSize };
std::string_view axis_name(Axis a);

struct LinearFit {
  double slope = 0;
  double intercept = 0;
};

double median(std::span<const double> values);
// Spearman's rho with average ranks for ties; 0 if either side is constant.
double spearman(std::span<const double> x, std::span<const double> y);
// Ordinary least squares. Requires x.size() == y.size() >= 1.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

// Median latency per sweep value for one (scheme, phase).
struct Series {
  Scheme scheme = Scheme::kSecretSharing;
  Phase phase = Phase::kEndToEnd;
  std::vector<double> x;
  std::vector<double> median;
};

struct SeriesSummary {
  Series series;
  LinearFit fit;
  double spearman = 0;
  bool nondecreasing = true;
};

struct TrendReport {
  Axis axis = Axis::kThreshold;
  std::vector<SeriesSummary> series;  // scheme-major, phases in timed order
  std::size_t error_rows = 0;

  const SeriesSummary* find(Scheme scheme, Phase phase) const;
};

// The axis whose value differs between rows; t when nothing varies.
Axis infer_axis(std::span<const BenchRow> rows);
std::vector<Series> median_series(std::span<const BenchRow> rows, Axis axis);
TrendReport summarize(std::span<const BenchRow> rows);

std::string format_report(const TrendReport& report);
// Static line chart of the per-point medians, one polyline per series.
std::string render_svg(const TrendReport& report);

}  // namespace pims::bench
