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
#include <memory>
#include <vector>

#include "pims/authz/client.hpp"
#include "pims/authz/network.hpp"
#include "pims/authz/owner.hpp"
#include "pims/bench/rows.hpp"

namespace pims::bench {

using Micros = std::chrono::duration<double, std::micro>;

// Durations of one full owner-to-consumer run. The four stage timings add
// up to end_to_end; node_response is the request wall time the client
// thread did not spend computing.
struct PipelineTiming {
  Micros encrypt_setup{0};
  Micros key_distribution{0};
  Micros node_response{0};
  Micros client_open{0};
  Micros end_to_end{0};

  Micros phase(Phase p) const;
};

struct PipelineOptions {
  std::uint32_t n = 25;
  authz::NetworkOptions network;
  std::uint32_t consumers = 1;
  std::uint64_t seed = 1;
  Bytes pepper = to_bytes("pims-bench-pepper");
  std::chrono::milliseconds timeout{5000};
};

// Everything one sweep point needs: ledger, in-memory store, node network,
// owner and a pool of consumers. Reused across repetitions.
class PipelineEnv {
 public:
  PipelineEnv(crypto::GroupParams group, PipelineOptions options);

  const crypto::GroupParams& group() const { return group_; }
  ledger::Ledger& ledger() { return ledger_; }
  store::BlobStore& store() { return store_; }
  authz::Network& network() { return network_; }
  authz::DataOwner& owner() { return owner_; }
  authz::DataConsumer& consumer(std::size_t i) { return *consumers_.at(i); }
  std::size_t consumer_count() const { return consumers_.size(); }
  Rng& workload_rng() { return workload_; }

  // publish, grant, provision, request_access. Throws on any failure,
  // including a plaintext that does not round-trip.
  PipelineTiming run(Scheme scheme, std::uint32_t t, ByteView plaintext,
                     std::size_t consumer_index = 0);

 private:
  crypto::GroupParams group_;
  PipelineOptions options_;
  ledger::Ledger ledger_;
  store::BlobStore store_;
  authz::Network network_;
  Rng workload_;
  authz::DataOwner owner_;
  std::vector<std::unique_ptr<authz::DataConsumer>> consumers_;
};

}  // namespace pims::bench
