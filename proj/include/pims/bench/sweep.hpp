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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pims/authz/network.hpp"
#include "pims/bench/rows.hpp"

namespace pims::bench {

enum class SweepKind { kThreshold, kNodes, kMsgSize };

std::string_view sweep_name(SweepKind k);
// "threshold", "nodes" or "msgsize"; throws Error(kConfigInvalid).
SweepKind sweep_from_name(std::string_view name);

struct SweepPoint {
  std::uint32_t t = 0;
  std::uint32_t n = 0;
  std::uint64_t size = 0;

  friend bool operator==(const SweepPoint&, const SweepPoint&) = default;
};

struct SweepConfig {
  SweepKind kind = SweepKind::kThreshold;
  std::vector<Scheme> schemes{Scheme::kSecretSharing, Scheme::kThresholdPre};
  // Fixed parameters; the one matching `kind` is ignored.
  std::uint32_t t = 2;
  std::uint32_t n = 25;
  std::uint64_t size = 30;
  // Values of the free variable.
  std::vector<std::uint64_t> values;
  std::uint32_t reps = 30;
  std::uint32_t warmup = 5;
  std::uint32_t consumers = 1;
  std::uint64_t seed = 1;
  authz::LatencyModel latency;
  std::string group = "ristretto255";

  // Parameters of the three standard sweeps: t in 1..25 at n = 25 and
  // 30 B; n in {5, 10, 15, 20, 25} at t = 2 and 30 KB; sizes 10 B to 1 MB
  // by decades at n = 25, t = 2.
  static SweepConfig standard(SweepKind kind);

  // Throws Error(kConfigInvalid).
  void validate() const;
  std::vector<SweepPoint> points() const;
};

// Median CPU time nodes spent answering one access request at a point.
struct ServiceStat {
  Scheme scheme = Scheme::kSecretSharing;
  SweepPoint point;
  double median_micros = 0;
  std::size_t samples = 0;
};

struct SweepResult {
  std::vector<BenchRow> rows;
  std::vector<ServiceStat> service;
  std::size_t failed_points = 0;
  std::vector<std::string> failures;
};

using SweepProgress = std::function<void(Scheme, const SweepPoint&)>;

// For every point, scheme and repetition runs the full pipeline and emits
// one row per timed phase; a failing point stops there and contributes a
// single "error" row. Warm-up runs are executed and discarded.
SweepResult run_sweep(const SweepConfig& config, const SweepProgress& progress = {});

}  // namespace pims::bench
