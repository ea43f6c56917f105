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
#include <vector>

#include "pims/authz/network.hpp"
#include "pims/store/blob_store.hpp"

namespace pims::authz {

struct AccessOptions {
  std::chrono::milliseconds timeout{5000};
};

// What one request_access call saw on the way to its result.
struct AccessTrace {
  std::size_t responses = 0;
  std::size_t denials = 0;
  std::vector<std::uint32_t> accepted_nodes;  // in arrival order
  std::vector<std::uint32_t> rejected_nodes;  // failed verification
  std::vector<DenialReason> denial_reasons;
  // CPU time the calling thread spent inside request_access: signing,
  // verifying responses, reconstructing and decrypting.
  std::chrono::nanoseconds client_cpu{0};
  std::chrono::nanoseconds wall{0};
};

// Data consumer. Fans a signed request out to the service, accepts the
// first t payloads that verify, opens the capsule and decrypts the
// off-chain ciphertext.
class DataConsumer {
 public:
  DataConsumer(crypto::GroupParams group, const ledger::Ledger& ledger,
               const store::BlobStore& store, Bytes pepper, KeyPair key, Rng rng);

  const KeyPair& key() const { return key_; }
  Address address() const { return ledger::address_of(key_.public_key()); }

  // Errors: kUnknownRecord, kInsufficientResponses (fewer than t valid
  // payloads before the deadline), kIntegrityMismatch, kNotFound,
  // kAuthenticationFailure.
  Bytes request_access(Network& network, const RecordId& id, AccessTrace* trace = nullptr,
                       const AccessOptions& options = {});

  // Opens a record from already collected responses, in the given order,
  // without touching the network.
  Bytes open_from_responses(const ledger::DataRecord& record,
                            std::span<const NodeResponse> responses,
                            AccessTrace* trace = nullptr);

 private:
  class Collector;

  Bytes decrypt_payload(const ledger::DataRecord& record, const crypto::SymmetricKey& key) const;

  crypto::GroupParams group_;
  const ledger::Ledger& ledger_;
  const store::BlobStore& store_;
  Bytes pepper_;
  KeyPair key_;
  Rng rng_;
};

}  // namespace pims::authz
