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

#include "pims/bench/sweep.hpp"

#include <algorithm>
#include <cmath>

#include "pims/bench/pipeline.hpp"
#include "pims/common/error.hpp"

namespace pims::bench {

namespace {

double median_of(std::vector<double> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  auto mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : (v[mid - 1] + v[mid]) / 2;
}

}  // namespace

std::string_view sweep_name(SweepKind k) {
  switch (k) {
    case SweepKind::kThreshold: return "threshold";
    case SweepKind::kNodes: return "nodes";
    case SweepKind::kMsgSize: return "msgsize";
  }
  return "threshold";
}

SweepKind sweep_from_name(std::string_view name) {
  for (auto k : {SweepKind::kThreshold, SweepKind::kNodes, SweepKind::kMsgSize}) {
    if (sweep_name(k) == name) return k;
  }
  throw Error(ErrorCode::kConfigInvalid, "unknown sweep: " + std::string(name));
}

SweepConfig SweepConfig::standard(SweepKind kind) {
  SweepConfig c;
  c.kind = kind;
  switch (kind) {
    case SweepKind::kThreshold:
      c.n = 25;
      c.size = 30;
      for (std::uint64_t t = 1; t <= 25; ++t) c.values.push_back(t);
      break;
    case SweepKind::kNodes:
      c.t = 2;
      c.size = 30 * 1000;
      c.values = {5, 10, 15, 20, 25};
      break;
    case SweepKind::kMsgSize:
      c.t = 2;
      c.n = 25;
      c.values = {10, 100, 1000, 10000, 100000, 1000000};
      break;
  }
  return c;
}

void SweepConfig::validate() const {
  auto fail = [](const std::string& why) { throw Error(ErrorCode::kConfigInvalid, why); };
  if (schemes.empty()) fail("no scheme selected");
  if (values.empty()) fail("sweep has no points");
  if (reps == 0) fail("repetitions must be at least 1");
  if (consumers == 0) fail("consumers must be at least 1");
  try {
    crypto::group_by_name(group);
  } catch (const Error&) {
    fail("unknown group: " + group);
  }
  for (const auto& p : points()) {
    if (p.n == 0 || p.t == 0 || p.t > p.n) {
      fail("invalid threshold policy t=" + std::to_string(p.t) + " n=" + std::to_string(p.n));
    }
  }
}

std::vector<SweepPoint> SweepConfig::points() const {
  std::vector<SweepPoint> out;
  for (auto v : values) {
    SweepPoint p{t, n, size};
    switch (kind) {
      case SweepKind::kThreshold: p.t = static_cast<std::uint32_t>(v); break;
      case SweepKind::kNodes: p.n = static_cast<std::uint32_t>(v); break;
      case SweepKind::kMsgSize: p.size = v; break;
    }
    out.push_back(p);
  }
  return out;
}

SweepResult run_sweep(const SweepConfig& config, const SweepProgress& progress) {
  config.validate();
  auto group = crypto::group_by_name(config.group);
  SweepResult result;

  for (auto scheme : config.schemes) {
    for (const auto& point : config.points()) {
      if (progress) progress(scheme, point);
      PipelineOptions opts;
      opts.n = point.n;
      opts.network.latency = config.latency;
      opts.consumers = config.consumers;
      // Same workload for both schemes at a given point.
      opts.seed = config.seed ^ (std::uint64_t{point.t} << 48) ^
                  (std::uint64_t{point.n} << 32) ^ point.size;

      std::uint32_t rep = 0;
      try {
        PipelineEnv env(group, opts);
        auto plaintext = env.workload_rng().bytes(point.size);
        auto consumer_for = [&](std::uint32_t i) { return i % env.consumer_count(); };
        for (std::uint32_t w = 0; w < config.warmup; ++w) {
          env.run(scheme, point.t, plaintext, consumer_for(w));
        }
        env.network().take_service_samples();

        std::vector<BenchRow> rows;
        for (; rep < config.reps; ++rep) {
          auto timing = env.run(scheme, point.t, plaintext, consumer_for(rep));
          for (auto phase : kTimedPhases) {
            rows.push_back(BenchRow{scheme, point.t, point.n, point.size, phase,
                                    std::llround(timing.phase(phase).count()), rep});
          }
        }

        std::vector<double> cpu;
        for (const auto& s : env.network().take_service_samples()) {
          if (s.tag == authz::FrameTag::kAccessRequest) {
            cpu.push_back(std::chrono::duration<double, std::micro>(s.cpu).count());
          }
        }
        result.service.push_back(ServiceStat{scheme, point, median_of(cpu), cpu.size()});
        result.rows.insert(result.rows.end(), rows.begin(), rows.end());
      } catch (const std::exception& e) {
        ++result.failed_points;
        result.failures.push_back(std::string(ledger::scheme_name(scheme)) +
                                  " t=" + std::to_string(point.t) +
                                  " n=" + std::to_string(point.n) +
                                  " size=" + std::to_string(point.size) + ": " + e.what());
        result.rows.push_back(
            BenchRow{scheme, point.t, point.n, point.size, Phase::kError, 0, rep});
      }
    }
  }
  return result;
}

}  // namespace pims::bench
