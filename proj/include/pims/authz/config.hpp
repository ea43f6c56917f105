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

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>

#include "pims/authz/network.hpp"

namespace pims::authz {

// Deployment description read from a JSON document:
//
//   {"nodes": 25, "threshold": 2, "latency": "fixed:200",
//    "timeout_ms": 5000, "group": "ristretto255", "seed": 7}
//
// Only "nodes" and "threshold" are required.
struct NetworkConfig {
  std::uint32_t nodes = 0;
  std::uint32_t threshold = 0;
  LatencyModel latency;
  std::chrono::milliseconds timeout{5000};
  std::string group = "ristretto255";
  std::optional<std::uint64_t> seed;

  // Throws Error(kConfigInvalid).
  void validate() const;
};

// Throws Error(kConfigInvalid) on malformed input or failed validation.
NetworkConfig parse_network_config(std::string_view json_text);
NetworkConfig load_network_config(const std::filesystem::path& path);
std::string to_json(const NetworkConfig& config);

}  // namespace pims::authz
