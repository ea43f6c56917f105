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

#include <map>
#include <span>
#include <vector>

#include "pims/authz/messages.hpp"
#include "pims/store/blob_store.hpp"

namespace pims::authz {

// Data owner: encrypts a bundle under a fresh per-record KEM key, stores
// the ciphertext off-chain, registers the record on the ledger and derives
// the threshold material for the service nodes.
class DataOwner {
 public:
  DataOwner(crypto::GroupParams group, ledger::Ledger& ledger, store::BlobStore& store,
            Bytes pepper, Rng rng);

  const KeyPair& account() const { return account_; }
  Address address() const { return ledger::address_of(account_.public_key()); }

  // Encrypts, stores and deploys. Throws Error(kInvalidPolicy).
  RecordId publish(ByteView plaintext, Scheme scheme, const ThresholdPolicy& policy);

  // One message per node key, node i+1 receiving element i. Secret sharing
  // splits the record's KEM key afresh on every call.
  // Throws Error(kUnknownRecord) for a record this owner did not publish,
  // Error(kInvalidParams) for a scheme mismatch and Error(kCountMismatch)
  // unless there are policy.n node keys.
  std::vector<ProvisionMessage> prepare_shares(const RecordId& id,
                                               std::span<const Element> node_keys);
  std::vector<ProvisionMessage> prepare_kfrags(const RecordId& id, const Element& consumer_pk,
                                               std::span<const Element> node_keys);

  std::uint64_t grant(const RecordId& id, const Address& consumer);
  std::uint64_t revoke(const RecordId& id, const Address& consumer);

  const CapsuleEnvelope& envelope(const RecordId& id) const;
  // The record's KEM key pair. Exposed for tests that play a colluding owner.
  const KeyPair& kem_key(const RecordId& id) const;

 private:
  struct Held {
    KeyPair kem;
    CapsuleEnvelope envelope;
    ThresholdPolicy policy;
  };

  const Held& held(const RecordId& id) const;
  Held& held(const RecordId& id);
  ProvisionMessage make_message(const Held& h, std::uint32_t node_id, const Element& node_key,
                                MaterialKind kind, ByteView material,
                                std::optional<Element> consumer_pk);
  void sign_envelope(CapsuleEnvelope& env);

  crypto::GroupParams group_;
  ledger::Ledger& ledger_;
  store::BlobStore& store_;
  Bytes pepper_;
  Rng rng_;
  KeyPair account_;
  std::map<RecordId, Held> records_;
};

}  // namespace pims::authz
