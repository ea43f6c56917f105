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

#include <list>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

#include "pims/authz/messages.hpp"

namespace pims::authz {

enum class NodeBehavior {
  kHonest,
  kCorrupt,  // answers with tampered shares or fragments
  kOffline,  // accepts provisioning, never answers access requests
};

// Bounded set of recently seen request digests, evicting the least
// recently inserted or touched entry.
class ReplayCache {
 public:
  explicit ReplayCache(std::size_t capacity);

  // True if the key was new (and is now recorded).
  bool insert(const Hash256& key);
  bool contains(const Hash256& key) const;
  std::size_t size() const { return index_.size(); }
  std::size_t capacity() const { return capacity_; }

 private:
  std::size_t capacity_;
  std::list<std::string> order_;
  std::unordered_map<std::string, std::list<std::string>::iterator> index_;
};

// One member of the authorization service. Holds at most one share or
// kfrag per (record, consumer) and consults the ledger for every request.
// Safe to call from several threads; vault writes are serialized.
class AuthNode {
 public:
  static constexpr std::size_t kDefaultReplayCapacity = std::size_t{1} << 16;

  AuthNode(crypto::GroupParams group, std::uint32_t node_id, KeyPair identity,
           const ledger::Ledger& ledger, Rng rng,
           std::size_t replay_capacity = kDefaultReplayCapacity);

  std::uint32_t id() const { return id_; }
  const Element& public_key() const { return identity_.public_key(); }

  NodeBehavior behavior() const;
  void set_behavior(NodeBehavior b);

  ProvisionAck provision(const ProvisionMessage& msg);
  // nullopt when offline.
  std::optional<NodeResponse> handle_request(const AccessRequest& req);

  // Wire entry point: decodes a frame, dispatches, encodes the reply.
  // Undecodable frames and offline nodes yield nullopt.
  std::optional<Bytes> handle_frame(ByteView frame);

  std::size_t vault_size() const;
  bool holds(const RecordId& id) const;

 private:
  struct Entry {
    CapsuleEnvelope envelope;
    std::optional<sharing::Share> share;
    std::map<Element, pre::KFrag> kfrags;  // by consumer public key
  };

  NodeResponse deny(DenialReason reason) const;

  crypto::GroupParams group_;
  std::uint32_t id_;
  KeyPair identity_;
  const ledger::Ledger& ledger_;

  mutable std::mutex mu_;
  Rng rng_;
  NodeBehavior behavior_ = NodeBehavior::kHonest;
  ReplayCache replay_;
  std::map<RecordId, Entry> vault_;
};

}  // namespace pims::authz
