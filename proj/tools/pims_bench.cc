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

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "pims/authz/config.hpp"
#include "pims/bench/csv.hpp"
#include "pims/bench/pipeline.hpp"
#include "pims/bench/report.hpp"
#include "pims/bench/sweep.hpp"
#include "pims/common/error.hpp"

namespace {

using namespace pims;
using namespace pims::bench;

constexpr int kExitFailedPoint = 2;

std::vector<Scheme> parse_schemes(const std::string& s) {
  if (s == "both") return {Scheme::kSecretSharing, Scheme::kThresholdPre};
  if (s == "ss") return {Scheme::kSecretSharing};
  if (s == "pre") return {Scheme::kThresholdPre};
  throw Error(ErrorCode::kConfigInvalid, "--scheme must be ss, pre or both");
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text)) throw Error(ErrorCode::kStorageFailure, "cannot write " + path);
}

void write_rows(const std::vector<BenchRow>& rows, const std::string& out) {
  if (out.empty() || out == "-") {
    write_csv(rows, std::cout);
  } else {
    emit_csv(rows, out);
  }
}

struct SweepArgs {
  std::string kind;
  std::string scheme = "both";
  std::optional<std::uint32_t> t, n;
  std::optional<std::uint64_t> size;
  std::vector<std::uint64_t> values;
  std::uint32_t reps = 30;
  std::uint32_t warmup = 5;
  std::uint32_t consumers = 1;
  std::uint64_t seed = 1;
  std::string out;
  std::string latency = "none";
  std::string group = "ristretto255";
  std::string svg;
  bool quiet = false;
};

int run_sweep_command(const SweepArgs& a) {
  auto cfg = SweepConfig::standard(sweep_from_name(a.kind));
  cfg.schemes = parse_schemes(a.scheme);
  if (a.t) cfg.t = *a.t;
  if (a.n) cfg.n = *a.n;
  if (a.size) cfg.size = *a.size;
  if (!a.values.empty()) cfg.values = a.values;
  cfg.reps = a.reps;
  cfg.warmup = a.warmup;
  cfg.consumers = a.consumers;
  cfg.seed = a.seed;
  cfg.latency = authz::LatencyModel::parse(a.latency);
  cfg.group = a.group;

  auto progress = [&](Scheme s, const SweepPoint& p) {
    if (!a.quiet) {
      std::cerr << "[" << ledger::scheme_name(s) << "] t=" << p.t << " n=" << p.n
                << " size=" << p.size << '\n';
    }
  };
  auto result = bench::run_sweep(cfg, progress);
  write_rows(result.rows, a.out);

  auto report = summarize(result.rows);
  std::cerr << format_report(report);
  for (const auto& s : result.service) {
    std::cerr << ledger::scheme_name(s.scheme) << " node service t=" << s.point.t
              << " n=" << s.point.n << " size=" << s.point.size
              << ": median=" << s.median_micros << " us over " << s.samples << " requests\n";
  }
  if (!a.svg.empty()) write_text(a.svg, render_svg(report));
  for (const auto& f : result.failures) std::cerr << "failed point: " << f << '\n';
  return result.failed_points ? kExitFailedPoint : 0;
}

struct RunArgs {
  std::string config;
  std::string scheme = "both";
  std::uint64_t size = 30;
  std::uint32_t reps = 1;
  std::string out;
};

int run_config_command(const RunArgs& a) {
  auto cfg = authz::load_network_config(a.config);
  std::vector<BenchRow> rows;
  int status = 0;
  for (auto scheme : parse_schemes(a.scheme)) {
    PipelineOptions opts;
    opts.n = cfg.nodes;
    opts.network.latency = cfg.latency;
    opts.seed = cfg.seed.value_or(1);
    opts.timeout = cfg.timeout;
    std::uint32_t rep = 0;
    try {
      PipelineEnv env(crypto::group_by_name(cfg.group), opts);
      auto plaintext = env.workload_rng().bytes(a.size);
      for (; rep < a.reps; ++rep) {
        auto timing = env.run(scheme, cfg.threshold, plaintext);
        for (auto phase : kTimedPhases) {
          rows.push_back(BenchRow{scheme, cfg.threshold, cfg.nodes, a.size, phase,
                                  std::llround(timing.phase(phase).count()), rep});
        }
      }
    } catch (const std::exception& e) {
      std::cerr << "failed: " << ledger::scheme_name(scheme) << ": " << e.what() << '\n';
      rows.push_back(BenchRow{scheme, cfg.threshold, cfg.nodes, a.size, Phase::kError, 0, rep});
      status = kExitFailedPoint;
    }
  }
  write_rows(rows, a.out);
  return status;
}

int run_report_command(const std::string& in, const std::string& svg) {
  auto rows = read_csv(in);
  auto report = summarize(rows);
  std::cout << format_report(report);
  if (!svg.empty()) write_text(svg, render_svg(report));
  return report.error_rows ? kExitFailedPoint : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Latency sweeps over the secret-sharing and proxy re-encryption schemes"};
  app.require_subcommand(1);

  SweepArgs sa;
  auto* sweep = app.add_subcommand("sweep", "Run a threshold, nodes or msgsize sweep");
  sweep->add_option("kind", sa.kind, "Free variable")
      ->required()
      ->check(CLI::IsMember({"threshold", "nodes", "msgsize"}));
  sweep->add_option("--scheme", sa.scheme, "ss, pre or both")
      ->check(CLI::IsMember({"ss", "pre", "both"}))
      ->capture_default_str();
  sweep->add_option("--t", sa.t, "Fixed threshold");
  sweep->add_option("--n", sa.n, "Fixed node count");
  sweep->add_option("--size", sa.size, "Fixed message size in bytes");
  sweep->add_option("--values", sa.values, "Values of the free variable")->delimiter(',');
  sweep->add_option("--reps", sa.reps, "Measured repetitions per point")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep->add_option("--warmup", sa.warmup, "Discarded warm-up runs per point")
      ->capture_default_str();
  sweep->add_option("--consumers", sa.consumers, "Consumers served in rotation")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep->add_option("--seed", sa.seed, "Workload seed")->capture_default_str();
  sweep->add_option("--out", sa.out, "CSV output path (stdout if omitted)");
  sweep->add_option("--latency-model", sa.latency, "none, fixed:<us> or uniform:<min>:<max>")
      ->capture_default_str();
  sweep->add_option("--group", sa.group, "ristretto255 or tiny")->capture_default_str();
  sweep->add_option("--svg", sa.svg, "Also write a chart of the medians");
  sweep->add_flag("--quiet", sa.quiet, "No per-point progress");

  RunArgs ra;
  auto* run = app.add_subcommand("run", "Run the pipeline against a network config file");
  run->add_option("--config", ra.config, "Network config (JSON)")->required();
  run->add_option("--scheme", ra.scheme, "ss, pre or both")
      ->check(CLI::IsMember({"ss", "pre", "both"}))
      ->capture_default_str();
  run->add_option("--size", ra.size, "Message size in bytes")->capture_default_str();
  run->add_option("--reps", ra.reps, "Repetitions")->capture_default_str();
  run->add_option("--out", ra.out, "CSV output path (stdout if omitted)");

  std::string report_in, report_svg;
  auto* report = app.add_subcommand("report", "Summarize an existing CSV");
  report->add_option("--in", report_in, "CSV produced by sweep or run")->required();
  report->add_option("--svg", report_svg, "Also write a chart of the medians");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sweep) return run_sweep_command(sa);
    if (*run) return run_config_command(ra);
    return run_report_command(report_in, report_svg);
  } catch (const pims::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
