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

#include "pims/authz/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "pims/common/error.hpp"
#include "pims/crypto/group.hpp"

namespace pims::authz {

using nlohmann::ordered_json;

void NetworkConfig::validate() const {
  if (nodes == 0) throw Error(ErrorCode::kConfigInvalid, "nodes must be positive");
  if (threshold == 0 || threshold > nodes) {
    throw Error(ErrorCode::kConfigInvalid, "threshold must be in [1, nodes]");
  }
  if (timeout.count() <= 0) throw Error(ErrorCode::kConfigInvalid, "timeout must be positive");
  try {
    crypto::group_by_name(group);
  } catch (const Error&) {
    throw Error(ErrorCode::kConfigInvalid, "unknown group: " + group);
  }
}

NetworkConfig parse_network_config(std::string_view json_text) {
  NetworkConfig cfg;
  try {
    auto j = ordered_json::parse(json_text);
    if (!j.is_object()) throw Error(ErrorCode::kConfigInvalid, "config must be an object");
    for (const auto& [key, _] : j.items()) {
      if (key != "nodes" && key != "threshold" && key != "latency" && key != "timeout_ms" &&
          key != "group" && key != "seed") {
        throw Error(ErrorCode::kConfigInvalid, "unknown config key: " + key);
      }
    }
    cfg.nodes = j.at("nodes").get<std::uint32_t>();
    cfg.threshold = j.at("threshold").get<std::uint32_t>();
    if (j.contains("latency")) cfg.latency = LatencyModel::parse(j["latency"].get<std::string>());
    if (j.contains("timeout_ms")) {
      cfg.timeout = std::chrono::milliseconds(j["timeout_ms"].get<std::int64_t>());
    }
    if (j.contains("group")) cfg.group = j["group"].get<std::string>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
  } catch (const ordered_json::exception& e) {
    throw Error(ErrorCode::kConfigInvalid, e.what());
  }
  cfg.validate();
  return cfg;
}

NetworkConfig load_network_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kConfigInvalid, "cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_network_config(ss.str());
}

std::string to_json(const NetworkConfig& config) {
  ordered_json j;
  j["nodes"] = config.nodes;
  j["threshold"] = config.threshold;
  j["latency"] = config.latency.to_string();
  j["timeout_ms"] = config.timeout.count();
  j["group"] = config.group;
  if (config.seed) j["seed"] = *config.seed;
  return j.dump();
}

}  // namespace pims::authz
