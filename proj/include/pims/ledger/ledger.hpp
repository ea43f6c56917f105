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
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <functional>
#include <future>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "pims/common/hash.hpp"
#include "pims/common/rng.hpp"
#include "pims/crypto/group.hpp"
#include "pims/crypto/keys.hpp"
#include "pims/crypto/signature.hpp"
#include "pims/sharing/policy.hpp"
#include "pims/store/blob_store.hpp"

// In-process stand-in for the smart-contract layer: one DataRecord per
// data bundle, an ACL mutated only by owner-signed transactions, and an
// append-only event log from which the whole state can be replayed.
namespace pims::ledger {

using crypto::Element;
using crypto::Group;
using crypto::GroupParams;
using crypto::KeyPair;
using crypto::Signature;
using sharing::ThresholdPolicy;
using store::Digest;
using store::StorageRef;

struct Address {
  FixedBytes<20> bytes{};

  std::string hex() const { return to_hex(bytes); }
  friend auto operator<=>(const Address&, const Address&) = default;
};

// Final 20 bytes of SHA-256 over the encoded public key.
Address address_of(const Element& public_key);

struct RecordId {
  Hash256 bytes{};

  std::string hex() const { return to_hex(bytes); }
  friend auto operator<=>(const RecordId&, const RecordId&) = default;
};

enum class Scheme : std::uint8_t { kSecretSharing = 1, kThresholdPre = 2 };
std::string_view scheme_name(Scheme s);
Scheme scheme_from_name(std::string_view name);

struct DataRecord {
  RecordId record_id;
  Address owner;
  StorageRef storage_ref;
  Digest digest;
  Scheme scheme = Scheme::kSecretSharing;
  ThresholdPolicy policy;
  std::uint64_t nonce = 0;
  std::set<Address> acl;
  std::uint64_t created_at = 0;  // seq of the Deploy event

  friend bool operator==(const DataRecord&, const DataRecord&) = default;
};

// record_id = SHA-256(owner || storage_ref || nonce)
RecordId derive_record_id(const Address& owner, const StorageRef& ref, std::uint64_t nonce);

// Associated data binding a DEM ciphertext to its record. The record id
// itself hashes the ciphertext, so the binding uses (owner, nonce).
Bytes record_aad(const Address& owner, std::uint64_t nonce);

enum class EventKind : std::uint8_t { kDeploy = 1, kGrant = 2, kRevoke = 3 };
std::string_view event_kind_name(EventKind k);

struct DeployFields {
  StorageRef storage_ref;
  Digest digest;
  Scheme scheme = Scheme::kSecretSharing;
  ThresholdPolicy policy;
  std::uint64_t nonce = 0;

  friend bool operator==(const DeployFields&, const DeployFields&) = default;
};

struct LedgerEvent {
  std::uint64_t seq = 0;
  EventKind kind = EventKind::kDeploy;
  RecordId record_id;
  Address subject;  // owner for Deploy, consumer for Grant/Revoke
  Address tx_signer;
  std::optional<DeployFields> deploy;  // set for Deploy only

  friend bool operator==(const LedgerEvent&, const LedgerEvent&) = default;
};

using LedgerState = std::map<RecordId, DataRecord>;

// Rebuilds state from a gapless event log starting at seq 1.
// Throws Error(kDecodeError) for gaps or events that reference unknown records.
LedgerState replay(std::span<const LedgerEvent> events);

struct DeployTx {
  Element owner_pk;
  DeployFields fields;
  Signature signature;
};

struct AclTx {
  EventKind kind = EventKind::kGrant;  // kGrant or kRevoke
  RecordId record_id;
  Address consumer;
  Element signer_pk;
  Signature signature;
};

Bytes signing_payload(const DeployTx& tx);
Bytes signing_payload(const AclTx& tx);

DeployTx make_deploy_tx(const Group& group, const KeyPair& owner, DeployFields fields, Rng& rng);
AclTx make_acl_tx(const Group& group, const KeyPair& signer, EventKind kind,
                  const RecordId& record_id, const Address& consumer, Rng& rng);

// NDJSON, one event per line, fixed field order.
std::string export_events(std::span<const LedgerEvent> events);
std::vector<LedgerEvent> import_events(std::string_view text);

class Ledger {
 public:
  struct Options {
    // Artificial per-transaction confirmation latency.
    std::chrono::microseconds confirmation_delay{0};
  };

  explicit Ledger(GroupParams group) : Ledger(std::move(group), Options{}) {}
  Ledger(GroupParams group, Options options);
  ~Ledger();

  Ledger(const Ledger&) = delete;
  Ledger& operator=(const Ledger&) = delete;

  // Writes are applied one at a time, in arrival order, by a single writer
  // thread. The futures carry the receipt or the rejection.
  // Deploy errors: kBadSignature, kDuplicateRecord.
  std::future<RecordId> submit_deploy(DeployTx tx);
  // Grant/revoke errors: kUnknownRecord, kBadSignature, kUnauthorized.
  std::future<std::uint64_t> submit_acl(AclTx tx);

  RecordId deploy_record(DeployTx tx) { return submit_deploy(std::move(tx)).get(); }
  std::uint64_t grant(AclTx tx);
  std::uint64_t revoke(AclTx tx);

  // Throws Error(kUnknownRecord).
  bool is_authorized(const RecordId& id, const Address& consumer) const;
  DataRecord record(const RecordId& id) const;
  std::optional<DataRecord> find_record(const RecordId& id) const;

  // Events for one record with seq >= from_seq.
  std::vector<LedgerEvent> events(const RecordId& id, std::uint64_t from_seq = 1) const;
  std::vector<LedgerEvent> all_events(std::uint64_t from_seq = 1) const;
  LedgerState state() const;
  std::uint64_t head() const;

  const GroupParams& group() const { return group_; }

 private:
  void writer_loop();
  void enqueue(std::function<void()> job);
  RecordId apply_deploy(const DeployTx& tx);
  std::uint64_t apply_acl(const AclTx& tx);
  void append(LedgerEvent event);

  GroupParams group_;
  Options options_;

  mutable std::shared_mutex state_mu_;
  LedgerState records_;
  std::vector<LedgerEvent> log_;

  std::mutex queue_mu_;
  std::condition_variable queue_cv_;
  std::deque<std::function<void()>> queue_;
  bool stopping_ = false;
  std::thread writer_;
};

}  // namespace pims::ledger
