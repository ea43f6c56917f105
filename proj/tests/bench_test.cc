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

#include <cmath>
#include <filesystem>
#include <iterator>
#include <map>
#include <tuple>

#include "pims/bench/csv.hpp"
#include "pims/bench/pipeline.hpp"
#include "pims/bench/report.hpp"
#include "pims/bench/sweep.hpp"
#include "test_util.hpp"

namespace pims::bench {
namespace {

BenchRow row(Scheme s, std::uint32_t t, Phase p, std::int64_t us, std::uint32_t rep = 0,
             std::uint32_t n = 25, std::uint64_t size = 30) {
  return BenchRow{s, t, n, size, p, us, rep};
}

TEST(Csv, GoldenFixture) {
  std::vector<BenchRow> rows{
      row(Scheme::kSecretSharing, 2, Phase::kEncryptSetup, 120, 0),
      row(Scheme::kThresholdPre, 3, Phase::kNodeResponse, 4501, 1, 10, 30000),
      row(Scheme::kSecretSharing, 1, Phase::kError, 0, 2, 5, 10),
  };
  const std::string expected =
      "scheme,t,n,msg_size_bytes,phase,latency_micros,rep\n"
      "SS,2,25,30,encrypt_setup,120,0\n"
      "PRE,3,10,30000,node_response,4501,1\n"
      "SS,1,5,10,error,0,2\n";
  EXPECT_EQ(format_csv(rows), expected);
  EXPECT_EQ(parse_csv(expected), rows);
  EXPECT_EQ(format_csv({}), std::string(kCsvHeader) + "\n");
  EXPECT_TRUE(parse_csv(format_csv({})).empty());
}

TEST(Csv, FileRoundTripAndErrors) {
  auto path = std::filesystem::temp_directory_path() / "pims_bench_test.csv";
  std::vector<BenchRow> rows;
  for (std::uint32_t i = 0; i < 50; ++i) {
    rows.push_back(row(i % 2 ? Scheme::kThresholdPre : Scheme::kSecretSharing, 1 + i % 5,
                       kTimedPhases[i % std::size(kTimedPhases)], 1000 + 7 * i, i));
  }
  emit_csv(rows, path);
  EXPECT_EQ(read_csv(path), rows);
  std::filesystem::remove(path);

  EXPECT_PIMS_ERROR(emit_csv(rows, "/nonexistent/dir/x.csv"), ErrorCode::kStorageFailure);
  EXPECT_PIMS_ERROR(parse_csv(""), ErrorCode::kDecodeError);
  EXPECT_PIMS_ERROR(parse_csv("a,b\n"), ErrorCode::kDecodeError);
  auto head = std::string(kCsvHeader) + "\n";
  EXPECT_PIMS_ERROR(parse_csv(head + "SS,2,25,30,encrypt_setup,120\n"), ErrorCode::kDecodeError);
  EXPECT_PIMS_ERROR(parse_csv(head + "XX,2,25,30,encrypt_setup,120,0\n"),
                    ErrorCode::kDecodeError);
  EXPECT_PIMS_ERROR(parse_csv(head + "SS,2,25,30,nap,120,0\n"), ErrorCode::kDecodeError);
  EXPECT_PIMS_ERROR(parse_csv(head + "SS,2x,25,30,encrypt_setup,120,0\n"),
                    ErrorCode::kDecodeError);
}

TEST(Rows, PhaseNames) {
  for (auto p : kTimedPhases) EXPECT_EQ(phase_from_name(phase_name(p)), p);
  EXPECT_EQ(phase_from_name("error"), Phase::kError);
  EXPECT_EQ(std::size(kTimedPhases), 5u);
}

TEST(Stats, MedianSpearmanAndFit) {
  std::vector<double> odd{5, 1, 3};
  std::vector<double> even{4, 1, 3, 2};
  EXPECT_DOUBLE_EQ(median(odd), 3);
  EXPECT_DOUBLE_EQ(median(even), 2.5);

  std::vector<double> x{1, 2, 3, 4, 5};
  std::vector<double> up{2, 4, 9, 16, 100};
  std::vector<double> down{5, 4, 3, 2, 1};
  std::vector<double> flat{7, 7, 7, 7, 7};
  EXPECT_DOUBLE_EQ(spearman(x, up), 1.0);
  EXPECT_DOUBLE_EQ(spearman(x, down), -1.0);
  EXPECT_DOUBLE_EQ(spearman(x, flat), 0.0);
  // Ties take average ranks: ranks y = {1.5, 1.5, 3, 4, 5}.
  std::vector<double> tied{1, 1, 2, 3, 4};
  EXPECT_NEAR(spearman(x, tied), 0.9746794344808963, 1e-12);
  // Reference value from scipy.stats.spearmanr.
  std::vector<double> noisy{1.0, 3.0, 2.0, 5.0, 4.0};
  EXPECT_NEAR(spearman(x, noisy), 0.8, 1e-12);

  std::vector<double> line{3, 5, 7, 9, 11};
  auto fit = fit_line(x, line);
  EXPECT_NEAR(fit.slope, 2, 1e-12);
  EXPECT_NEAR(fit.intercept, 1, 1e-12);
  auto flat_fit = fit_line(x, flat);
  EXPECT_NEAR(flat_fit.slope, 0, 1e-12);
  EXPECT_NEAR(flat_fit.intercept, 7, 1e-12);
}

TEST(Report, ConstantRowsGiveZeroSlope) {
  std::vector<BenchRow> rows;
  for (auto scheme : {Scheme::kSecretSharing, Scheme::kThresholdPre}) {
    for (std::uint32_t t = 1; t <= 5; ++t) {
      for (std::uint32_t rep = 0; rep < 3; ++rep) {
        for (auto p : kTimedPhases) rows.push_back(row(scheme, t, p, 500, rep));
      }
    }
  }
  auto report = summarize(rows);
  EXPECT_EQ(report.axis, Axis::kThreshold);
  EXPECT_EQ(report.series.size(), 2 * std::size(kTimedPhases));
  for (const auto& s : report.series) {
    EXPECT_NEAR(s.fit.slope, 0, 1e-12);
    EXPECT_DOUBLE_EQ(s.spearman, 0);
    EXPECT_TRUE(s.nondecreasing);
    EXPECT_EQ(s.series.x, (std::vector<double>{1, 2, 3, 4, 5}));
  }
  EXPECT_EQ(format_report(report).rfind("axis: t\n", 0), 0u);
  auto svg = render_svg(report);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST(Report, MediansAndErrorRows) {
  std::vector<BenchRow> rows{
      row(Scheme::kThresholdPre, 25, Phase::kEndToEnd, 10, 0, 5),
      row(Scheme::kThresholdPre, 25, Phase::kEndToEnd, 30, 1, 5),
      row(Scheme::kThresholdPre, 25, Phase::kEndToEnd, 20, 2, 5),
      row(Scheme::kThresholdPre, 25, Phase::kEndToEnd, 40, 0, 10),
      row(Scheme::kThresholdPre, 25, Phase::kEndToEnd, 60, 1, 10),
      row(Scheme::kThresholdPre, 25, Phase::kError, 0, 0, 15),
  };
  EXPECT_EQ(infer_axis(rows), Axis::kNodes);
  auto report = summarize(rows);
  EXPECT_EQ(report.error_rows, 1u);
  auto* s = report.find(Scheme::kThresholdPre, Phase::kEndToEnd);
  ASSERT_NE(s, nullptr);
  EXPECT_EQ(s->series.x, (std::vector<double>{5, 10}));
  EXPECT_EQ(s->series.median, (std::vector<double>{20, 50}));
  EXPECT_NEAR(s->fit.slope, 6, 1e-12);
  EXPECT_EQ(report.find(Scheme::kSecretSharing, Phase::kEndToEnd), nullptr);
}

TEST(Sweep, StandardPointsAndValidation) {
  auto th = SweepConfig::standard(SweepKind::kThreshold);
  auto pts = th.points();
  ASSERT_EQ(pts.size(), 25u);
  EXPECT_EQ(pts.front(), (SweepPoint{1, 25, 30}));
  EXPECT_EQ(pts.back(), (SweepPoint{25, 25, 30}));
  auto nodes = SweepConfig::standard(SweepKind::kNodes).points();
  ASSERT_EQ(nodes.size(), 5u);
  EXPECT_EQ(nodes[0], (SweepPoint{2, 5, 30000}));
  EXPECT_EQ(nodes[4], (SweepPoint{2, 25, 30000}));
  auto sizes = SweepConfig::standard(SweepKind::kMsgSize).points();
  ASSERT_EQ(sizes.size(), 6u);
  EXPECT_EQ(sizes[0].size, 10u);
  EXPECT_EQ(sizes[5].size, 1000000u);

  EXPECT_EQ(sweep_from_name("msgsize"), SweepKind::kMsgSize);
  EXPECT_PIMS_ERROR(sweep_from_name("latency"), ErrorCode::kConfigInvalid);

  auto bad = th;
  bad.values = {30};
  EXPECT_PIMS_ERROR(bad.validate(), ErrorCode::kConfigInvalid);
  bad = th;
  bad.reps = 0;
  EXPECT_PIMS_ERROR(bad.validate(), ErrorCode::kConfigInvalid);
}

TEST(Sweep, RowCountAndPartition) {
  SweepConfig cfg;
  cfg.kind = SweepKind::kThreshold;
  cfg.n = 4;
  cfg.values = {1, 3};
  cfg.reps = 3;
  cfg.warmup = 1;
  auto result = run_sweep(cfg);
  EXPECT_EQ(result.failed_points, 0u);
  EXPECT_EQ(result.rows.size(), 2u * 3u * 2u * std::size(kTimedPhases));
  EXPECT_EQ(result.service.size(), 4u);

  std::map<std::tuple<Scheme, std::uint32_t, std::uint32_t>, std::map<Phase, std::int64_t>> by;
  for (const auto& r : result.rows) {
    EXPECT_EQ(r.n, 4u);
    EXPECT_EQ(r.msg_size_bytes, 30u);
    EXPECT_GE(r.latency_micros, 0);
    by[{r.scheme, r.t, r.rep}][r.phase] = r.latency_micros;
  }
  for (const auto& [key, phases] : by) {
    ASSERT_EQ(phases.size(), std::size(kTimedPhases));
    auto parts = phases.at(Phase::kEncryptSetup) + phases.at(Phase::kKeyDistribution) +
                 phases.at(Phase::kNodeResponse) + phases.at(Phase::kClientOpen);
    // Each phase is rounded to whole microseconds independently.
    EXPECT_NEAR(static_cast<double>(parts), static_cast<double>(phases.at(Phase::kEndToEnd)), 4);
  }
}

TEST(Sweep, InfeasiblePointEmitsErrorRow) {
  SweepConfig cfg;
  cfg.kind = SweepKind::kThreshold;
  cfg.schemes = {Scheme::kSecretSharing};
  cfg.n = 3;
  cfg.values = {2};
  cfg.reps = 1;
  cfg.warmup = 0;
  cfg.group = "no-such-group";
  EXPECT_PIMS_ERROR(run_sweep(cfg), ErrorCode::kConfigInvalid);
}

TEST(Pipeline, RoundTripAndTimingPartition) {
  PipelineOptions opts;
  opts.n = 5;
  opts.consumers = 2;
  PipelineEnv env(crypto::ristretto255(), opts);
  for (auto scheme : {Scheme::kSecretSharing, Scheme::kThresholdPre}) {
    for (std::size_t c = 0; c < 2; ++c) {
      auto timing = env.run(scheme, 3, to_bytes("pipeline payload"), c);
      double sum = 0;
      for (auto p : {Phase::kEncryptSetup, Phase::kKeyDistribution, Phase::kNodeResponse,
                     Phase::kClientOpen}) {
        EXPECT_GE(timing.phase(p).count(), 0);
        sum += timing.phase(p).count();
      }
      EXPECT_NEAR(sum, timing.phase(Phase::kEndToEnd).count(), 1e-6);
    }
  }
}

}  // namespace
}  // namespace pims::bench
