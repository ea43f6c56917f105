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

#include "pims/bench/pipeline.hpp"

#include "pims/common/error.hpp"

namespace pims::bench {

namespace {

authz::NetworkOptions seeded(authz::NetworkOptions opts, std::uint64_t seed) {
  if (!opts.seed) opts.seed = seed;
  return opts;
}

}  // namespace

std::string_view phase_name(Phase p) {
  switch (p) {
    case Phase::kEncryptSetup: return "encrypt_setup";
    case Phase::kKeyDistribution: return "key_distribution";
    case Phase::kNodeResponse: return "node_response";
    case Phase::kClientOpen: return "client_open";
    case Phase::kEndToEnd: return "end_to_end";
    case Phase::kError: return "error";
  }
  return "error";
}

Phase phase_from_name(std::string_view name) {
  for (auto p : {Phase::kEncryptSetup, Phase::kKeyDistribution, Phase::kNodeResponse,
                 Phase::kClientOpen, Phase::kEndToEnd, Phase::kError}) {
    if (phase_name(p) == name) return p;
  }
  throw Error(ErrorCode::kDecodeError, "unknown phase: " + std::string(name));
}

Micros PipelineTiming::phase(Phase p) const {
  switch (p) {
    case Phase::kEncryptSetup: return encrypt_setup;
    case Phase::kKeyDistribution: return key_distribution;
    case Phase::kNodeResponse: return node_response;
    case Phase::kClientOpen: return client_open;
    case Phase::kEndToEnd: return end_to_end;
    case Phase::kError: break;
  }
  return Micros{0};
}

PipelineEnv::PipelineEnv(crypto::GroupParams group, PipelineOptions options)
    : group_(std::move(group)),
      options_(std::move(options)),
      ledger_(group_),
      store_(std::make_shared<store::MemoryBackend>()),
      network_(group_, ledger_, options_.n, seeded(options_.network, options_.seed)),
      workload_(Rng::from_seed(options_.seed)),
      owner_(group_, ledger_, store_, options_.pepper, workload_.fork("owner")) {
  if (options_.consumers == 0) throw Error(ErrorCode::kConfigInvalid, "need a consumer");
  for (std::uint32_t i = 0; i < options_.consumers; ++i) {
    auto rng = workload_.fork("consumer/" + std::to_string(i));
    auto key = crypto::generate_keypair(group_, rng, crypto::KeyRole::kConsumer);
    consumers_.push_back(std::make_unique<authz::DataConsumer>(
        group_, ledger_, store_, options_.pepper, std::move(key), std::move(rng)));
  }
}

PipelineTiming PipelineEnv::run(Scheme scheme, std::uint32_t t, ByteView plaintext,
                                std::size_t consumer_index) {
  using authz::Clock;
  auto& consumer = *consumers_.at(consumer_index);
  const sharing::ThresholdPolicy policy{t, network_.size()};
  const auto node_keys = network_.node_keys();
  PipelineTiming timing;

  auto t0 = Clock::now();
  auto id = owner_.publish(plaintext, scheme, policy);
  auto t1 = Clock::now();

  owner_.grant(id, consumer.address());
  auto msgs = scheme == Scheme::kSecretSharing
                  ? owner_.prepare_shares(id, node_keys)
                  : owner_.prepare_kfrags(id, consumer.key().public_key(), node_keys);
  auto acks = network_.provision(msgs);
  for (const auto& ack : acks) {
    if (ack.status != authz::AckStatus::kOk) {
      throw Error(ErrorCode::kInvalidParams, "node " + std::to_string(ack.node_id) +
                                                 " refused provisioning: " +
                                                 std::string(authz::ack_status_name(ack.status)));
    }
  }
  auto t2 = Clock::now();

  authz::AccessTrace trace;
  auto recovered =
      consumer.request_access(network_, id, &trace, authz::AccessOptions{options_.timeout});
  auto t3 = Clock::now();
  network_.quiesce();

  if (recovered.size() != plaintext.size() ||
      !std::equal(recovered.begin(), recovered.end(), plaintext.begin())) {
    throw Error(ErrorCode::kAuthenticationFailure, "plaintext did not round-trip");
  }

  timing.encrypt_setup = t1 - t0;
  timing.key_distribution = t2 - t1;
  Micros request = t3 - t2;
  timing.client_open = std::min<Micros>(trace.client_cpu, request);
  timing.node_response = request - timing.client_open;
  timing.end_to_end = t3 - t0;
  return timing;
}

}  // namespace pims::bench
