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

#include "pims/authz/node.hpp"

#include "pims/common/error.hpp"
#include "pims/common/hash.hpp"

namespace pims::authz {

ReplayCache::ReplayCache(std::size_t capacity) : capacity_(capacity) {
  if (capacity_ == 0) throw Error(ErrorCode::kInvalidParams, "replay cache capacity 0");
}

bool ReplayCache::insert(const Hash256& key) {
  std::string k(key.begin(), key.end());
  if (auto it = index_.find(k); it != index_.end()) {
    order_.splice(order_.begin(), order_, it->second);
    return false;
  }
  order_.push_front(k);
  index_.emplace(std::move(k), order_.begin());
  if (index_.size() > capacity_) {
    index_.erase(order_.back());
    order_.pop_back();
  }
  return true;
}

bool ReplayCache::contains(const Hash256& key) const {
  return index_.contains(std::string(key.begin(), key.end()));
}

AuthNode::AuthNode(crypto::GroupParams group, std::uint32_t node_id, KeyPair identity,
                   const ledger::Ledger& ledger, Rng rng, std::size_t replay_capacity)
    : group_(std::move(group)),
      id_(node_id),
      identity_(std::move(identity)),
      ledger_(ledger),
      rng_(std::move(rng)),
      replay_(replay_capacity) {
  if (!group_) throw Error(ErrorCode::kInvalidParams, "null group");
}

NodeBehavior AuthNode::behavior() const {
  std::lock_guard lock(mu_);
  return behavior_;
}

void AuthNode::set_behavior(NodeBehavior b) {
  std::lock_guard lock(mu_);
  behavior_ = b;
}

std::size_t AuthNode::vault_size() const {
  std::lock_guard lock(mu_);
  std::size_t total = 0;
  for (const auto& [_, e] : vault_) total += (e.share ? 1 : 0) + e.kfrags.size();
  return total;
}

bool AuthNode::holds(const RecordId& id) const {
  std::lock_guard lock(mu_);
  return vault_.contains(id);
}

ProvisionAck AuthNode::provision(const ProvisionMessage& msg) {
  const auto& g = *group_;
  auto ack = [&](AckStatus s) { return ProvisionAck{id_, s}; };

  if (msg.node_id != id_) return ack(AckStatus::kMisrouted);
  if (!crypto::verify(g, msg.owner_account_pk, provision_signing_payload(g, msg),
                      msg.signature)) {
    return ack(AckStatus::kBadSignature);
  }
  auto record = ledger_.find_record(msg.record_id);
  if (!record) return ack(AckStatus::kUnknownRecord);
  if (ledger::address_of(msg.owner_account_pk) != record->owner) {
    return ack(AckStatus::kUnauthorized);
  }
  if (!verify_envelope(g, msg.envelope, *record)) return ack(AckStatus::kInvalidMaterial);

  const bool want_share = record->scheme == Scheme::kSecretSharing;
  if ((msg.kind == MaterialKind::kShare) != want_share) return ack(AckStatus::kInvalidMaterial);

  Bytes plain;
  try {
    plain = crypto::open(g, identity_.secret_key(), msg.sealed_material,
                         material_aad(msg.record_id, id_, msg.kind));
  } catch (const Error&) {
    return ack(AckStatus::kInvalidMaterial);
  }

  std::lock_guard lock(mu_);
  try {
    if (want_share) {
      const auto& commitments = *msg.envelope.commitments;
      auto share = sharing::deserialize_share(g.scalars(), plain, commitments.id);
      if (share.index != id_ || !sharing::verify_share(g, share, commitments)) {
        return ack(AckStatus::kInvalidMaterial);
      }
      auto& entry = vault_[msg.record_id];
      entry.envelope = msg.envelope;
      entry.share = std::move(share);
    } else {
      if (!msg.consumer_pk) return ack(AckStatus::kInvalidMaterial);
      auto kfrag = pre::deserialize_kfrag(g, plain);
      if (!pre::verify_kfrag(g, kfrag, msg.envelope.kem_pk, *msg.consumer_pk)) {
        return ack(AckStatus::kInvalidMaterial);
      }
      auto& entry = vault_[msg.record_id];
      entry.envelope = msg.envelope;
      entry.kfrags.insert_or_assign(*msg.consumer_pk, std::move(kfrag));
    }
  } catch (const Error&) {
    return ack(AckStatus::kInvalidMaterial);
  }
  return ack(AckStatus::kOk);
}

NodeResponse AuthNode::deny(DenialReason reason) const {
  return NodeResponse{id_, Denial{reason}, std::nullopt};
}

std::optional<NodeResponse> AuthNode::handle_request(const AccessRequest& req) {
  const auto& g = *group_;
  if (behavior() == NodeBehavior::kOffline) return std::nullopt;

  const auto payload = request_signing_payload(req);
  if (!crypto::verify(g, req.consumer_pk, payload, req.signature)) {
    return deny(DenialReason::kBadSignature);
  }
  {
    std::lock_guard lock(mu_);
    if (!replay_.insert(sha256(payload))) return deny(DenialReason::kBadSignature);
  }

  auto record = ledger_.find_record(req.record_id);
  if (!record) return deny(DenialReason::kUnknownRecord);
  if (!record->acl.contains(ledger::address_of(req.consumer_pk))) {
    return deny(DenialReason::kNotInAcl);
  }

  std::unique_lock lock(mu_);
  auto it = vault_.find(req.record_id);
  if (it == vault_.end()) return deny(DenialReason::kNotProvisioned);
  const auto& entry = it->second;
  const bool corrupt = behavior_ == NodeBehavior::kCorrupt;

  if (record->scheme == Scheme::kSecretSharing) {
    if (!entry.share) return deny(DenialReason::kNotProvisioned);
    auto share = *entry.share;
    if (corrupt) share.value = g.scalars().add(share.value, g.scalars().one());
    auto box = crypto::seal(g, req.consumer_pk, sharing::serialize(g.scalars(), share),
                            share_aad(req.record_id, id_), rng_);
    return NodeResponse{id_, EncryptedShare{std::move(box)}, entry.envelope};
  }

  auto kf = entry.kfrags.find(req.consumer_pk);
  if (kf == entry.kfrags.end()) return deny(DenialReason::kNotProvisioned);
  auto cfrag = pre::reencrypt(g, kf->second, entry.envelope.capsule, rng_);
  if (corrupt) cfrag.e1 = g.add(cfrag.e1, g.generator());
  return NodeResponse{id_, std::move(cfrag), entry.envelope};
}

std::optional<Bytes> AuthNode::handle_frame(ByteView bytes) {
  const auto& g = *group_;
  try {
    auto frame = decode_frame(bytes);
    switch (frame.tag) {
      case FrameTag::kProvision: {
        auto ack = provision(deserialize_provision(g, frame.body));
        return encode_frame(FrameTag::kProvisionAck, serialize(ack));
      }
      case FrameTag::kAccessRequest: {
        auto resp = handle_request(deserialize_request(g, frame.body));
        if (!resp) return std::nullopt;
        return encode_frame(FrameTag::kNodeResponse, serialize(g, *resp));
      }
      default:
        return std::nullopt;
    }
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace pims::authz
