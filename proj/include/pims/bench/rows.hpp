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

#include <cstdint>
#include <string_view>

#include "pims/ledger/ledger.hpp"

namespace pims::bench {

using ledger::Scheme;

enum class Phase {
  kEncryptSetup,
  kKeyDistribution,
  kNodeResponse,
  kClientOpen,
  kEndToEnd,
  kError,  // marks a sweep point whose pipeline failed
};

inline constexpr Phase kTimedPhases[] = {Phase::kEncryptSetup, Phase::kKeyDistribution,
                                         Phase::kNodeResponse, Phase::kClientOpen,
                                         Phase::kEndToEnd};

std::string_view phase_name(Phase p);
// Throws Error(kDecodeError) for an unknown name.
Phase phase_from_name(std::string_view name);

struct BenchRow {
  Scheme scheme = Scheme::kSecretSharing;
  std::uint32_t t = 0;
  std::uint32_t n = 0;
  std::uint64_t msg_size_bytes = 0;
  Phase phase = Phase::kEndToEnd;
  std::int64_t latency_micros = 0;
  std::uint32_t rep = 0;

  friend bool operator==(const BenchRow&, const BenchRow&) = default;
};

}  // namespace pims::bench
