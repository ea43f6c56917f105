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

#include "pims/bench/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "pims/common/error.hpp"

namespace pims::bench {

namespace {

std::vector<double> ranks(std::span<const double> v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2 + 1;
    for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
    i = j + 1;
  }
  return r;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0 || syy == 0) return 0;
  return sxy / std::sqrt(sxx * syy);
}

double axis_value(const BenchRow& r, Axis a) {
  switch (a) {
    case Axis::kThreshold: return r.t;
    case Axis::kNodes: return r.n;
    case Axis::kMsgSize: return static_cast<double>(r.msg_size_bytes);
  }
  return 0;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

}  // namespace

std::string_view axis_name(Axis a) {
  switch (a) {
    case Axis::kThreshold: return "t";
    case Axis::kNodes: return "n";
    case Axis::kMsgSize: return "msg_size_bytes";
  }
  return "t";
}

double median(std::span<const double> values) {
  if (values.empty()) return 0;
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  auto mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : (v[mid - 1] + v[mid]) / 2;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorCode::kInvalidParams, "length mismatch");
  if (x.size() < 2) return 0;
  auto rx = ranks(x);
  auto ry = ranks(y);
  return pearson(rx, ry);
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.empty()) {
    throw Error(ErrorCode::kInvalidParams, "fit needs equal, non-empty inputs");
  }
  const double n = static_cast<double>(x.size());
  double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  LinearFit f;
  f.slope = sxx == 0 ? 0 : sxy / sxx;
  f.intercept = my - f.slope * mx;
  return f;
}

const SeriesSummary* TrendReport::find(Scheme scheme, Phase phase) const {
  for (const auto& s : series) {
    if (s.series.scheme == scheme && s.series.phase == phase) return &s;
  }
  return nullptr;
}

Axis infer_axis(std::span<const BenchRow> rows) {
  std::set<std::uint32_t> ts, ns;
  std::set<std::uint64_t> sizes;
  for (const auto& r : rows) {
    if (r.phase == Phase::kError) continue;
    ts.insert(r.t);
    ns.insert(r.n);
    sizes.insert(r.msg_size_bytes);
  }
  if (ns.size() > 1) return Axis::kNodes;
  if (sizes.size() > 1) return Axis::kMsgSize;
  return Axis::kThreshold;
}

std::vector<Series> median_series(std::span<const BenchRow> rows, Axis axis) {
  std::map<std::pair<Scheme, Phase>, std::map<double, std::vector<double>>> grouped;
  for (const auto& r : rows) {
    if (r.phase == Phase::kError) continue;
    grouped[{r.scheme, r.phase}][axis_value(r, axis)].push_back(
        static_cast<double>(r.latency_micros));
  }
  std::vector<Series> out;
  for (auto& [key, by_x] : grouped) {
    Series s{key.first, key.second, {}, {}};
    for (auto& [x, ys] : by_x) {
      s.x.push_back(x);
      s.median.push_back(median(ys));
    }
    out.push_back(std::move(s));
  }
  return out;
}

TrendReport summarize(std::span<const BenchRow> rows) {
  TrendReport report;
  report.axis = infer_axis(rows);
  report.error_rows = static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const auto& r) { return r.phase == Phase::kError; }));
  for (auto& s : median_series(rows, report.axis)) {
    SeriesSummary sum;
    sum.fit = fit_line(s.x, s.median);
    sum.spearman = spearman(s.x, s.median);
    sum.nondecreasing = std::is_sorted(s.median.begin(), s.median.end());
    sum.series = std::move(s);
    report.series.push_back(std::move(sum));
  }
  return report;
}

std::string format_report(const TrendReport& report) {
  std::ostringstream out;
  out << "axis: " << axis_name(report.axis) << '\n';
  if (report.error_rows) out << "failed points: " << report.error_rows << '\n';
  for (const auto& s : report.series) {
    out << ledger::scheme_name(s.series.scheme) << ' ' << phase_name(s.series.phase)
        << ": slope=" << fmt(s.fit.slope) << " us/unit, intercept=" << fmt(s.fit.intercept)
        << " us, spearman=" << fmt(s.spearman)
        << ", monotone=" << (s.nondecreasing ? "yes" : "no") << '\n';
    out << "  medians:";
    for (std::size_t i = 0; i < s.series.x.size(); ++i) {
      out << ' ' << fmt(s.series.x[i]) << '=' << fmt(s.series.median[i]);
    }
    out << '\n';
  }
  return out.str();
}

std::string render_svg(const TrendReport& report) {
  constexpr double kW = 800, kH = 480, kL = 70, kR = 200, kT = 30, kB = 50;
  double x_min = INFINITY, x_max = -INFINITY, y_max = 0;
  const bool log_x = report.axis == Axis::kMsgSize;
  auto tx = [&](double x) { return log_x ? std::log10(std::max(x, 1.0)) : x; };
  for (const auto& s : report.series) {
    if (s.series.phase == Phase::kEndToEnd) continue;
    for (std::size_t i = 0; i < s.series.x.size(); ++i) {
      x_min = std::min(x_min, tx(s.series.x[i]));
      x_max = std::max(x_max, tx(s.series.x[i]));
      y_max = std::max(y_max, s.series.median[i]);
    }
  }
  if (!(x_min < x_max)) {
    x_min = std::isfinite(x_min) ? x_min - 1 : 0;
    x_max = x_min + 2;
  }
  if (y_max <= 0) y_max = 1;
  auto px = [&](double x) { return kL + (tx(x) - x_min) / (x_max - x_min) * (kW - kL - kR); };
  auto py = [&](double y) { return kH - kB - y / y_max * (kH - kT - kB); };

  static constexpr const char* kColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                            "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<line x1=\"" << kL << "\" y1=\"" << kH - kB << "\" x2=\"" << kW - kR << "\" y2=\""
      << kH - kB << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << kL << "\" y1=\"" << kT << "\" x2=\"" << kL << "\" y2=\"" << kH - kB
      << "\" stroke=\"black\"/>\n"
      << "<text x=\"" << (kL + kW - kR) / 2 << "\" y=\"" << kH - 12
      << "\" text-anchor=\"middle\">" << axis_name(report.axis) << (log_x ? " (log10)" : "")
      << "</text>\n"
      << "<text x=\"14\" y=\"" << (kT + kH - kB) / 2 << "\" transform=\"rotate(-90 14 "
      << (kT + kH - kB) / 2 << ")\" text-anchor=\"middle\">median latency (us)</text>\n"
      << "<text x=\"" << kL - 6 << "\" y=\"" << kT + 4 << "\" text-anchor=\"end\">"
      << fmt(y_max) << "</text>\n"
      << "<text x=\"" << kL - 6 << "\" y=\"" << kH - kB + 4 << "\" text-anchor=\"end\">0</text>\n";

  std::size_t color = 0;
  double legend_y = kT;
  for (const auto& s : report.series) {
    if (s.series.phase == Phase::kEndToEnd) continue;
    const char* c = kColors[color++ % std::size(kColors)];
    out << "<polyline fill=\"none\" stroke=\"" << c << "\" stroke-width=\"2\"";
    if (s.series.scheme == Scheme::kThresholdPre) out << " stroke-dasharray=\"6 3\"";
    out << " points=\"";
    for (std::size_t i = 0; i < s.series.x.size(); ++i) {
      out << fmt(px(s.series.x[i])) << ',' << fmt(py(s.series.median[i])) << ' ';
    }
    out << "\"/>\n";
    out << "<text x=\"" << kW - kR + 10 << "\" y=\"" << legend_y << "\" fill=\"" << c << "\">"
        << ledger::scheme_name(s.series.scheme) << ' ' << phase_name(s.series.phase)
        << "</text>\n";
    legend_y += 16;
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace pims::bench
