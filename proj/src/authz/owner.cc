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

#include "pims/authz/owner.hpp"

#include "pims/common/error.hpp"

namespace pims::authz {

DataOwner::DataOwner(crypto::GroupParams group, ledger::Ledger& ledger,
                     store::BlobStore& store, Bytes pepper, Rng rng)
    : group_(std::move(group)),
      ledger_(ledger),
      store_(store),
      pepper_(std::move(pepper)),
      rng_(std::move(rng)),
      account_(crypto::generate_keypair(group_, rng_, crypto::KeyRole::kConsumer)) {}

const DataOwner::Held& DataOwner::held(const RecordId& id) const {
  auto it = records_.find(id);
  if (it == records_.end()) throw Error(ErrorCode::kUnknownRecord, "record not owned here");
  return it->second;
}

DataOwner::Held& DataOwner::held(const RecordId& id) {
  return const_cast<Held&>(std::as_const(*this).held(id));
}

const CapsuleEnvelope& DataOwner::envelope(const RecordId& id) const { return held(id).envelope; }

const KeyPair& DataOwner::kem_key(const RecordId& id) const { return held(id).kem; }

void DataOwner::sign_envelope(CapsuleEnvelope& env) {
  env.owner_account_pk = account_.public_key();
  env.signature = crypto::sign(*group_, account_.secret_key(),
                               envelope_signing_payload(*group_, env), rng_);
}

RecordId DataOwner::publish(ByteView plaintext, Scheme scheme, const ThresholdPolicy& policy) {
  policy.validate();
  const auto& g = *group_;
  auto kem = crypto::generate_keypair(group_, rng_, crypto::KeyRole::kOwnerKem);
  auto enc = crypto::kem_encapsulate(g, kem.public_key(), rng_);

  const auto nonce = rng_.next_u64();
  const auto aad = ledger::record_aad(address(), nonce);
  auto ct = crypto::serialize(crypto::dem_encrypt(enc.key, plaintext, ByteView(aad), rng_));

  ledger::DeployFields fields;
  fields.storage_ref = store_.put(ct);
  fields.digest = store::make_digest(ct, pepper_, rng_);
  fields.scheme = scheme;
  fields.policy = policy;
  fields.nonce = nonce;
  auto id = ledger_.deploy_record(ledger::make_deploy_tx(g, account_, fields, rng_));

  CapsuleEnvelope env;
  env.record_id = id;
  env.scheme = scheme;
  env.capsule = std::move(enc.capsule);
  env.kem_pk = kem.public_key();
  if (scheme == Scheme::kThresholdPre) sign_envelope(env);
  records_.insert_or_assign(id, Held{std::move(kem), std::move(env), policy});
  return id;
}

ProvisionMessage DataOwner::make_message(const Held& h, std::uint32_t node_id,
                                         const Element& node_key, MaterialKind kind,
                                         ByteView material,
                                         std::optional<Element> consumer_pk) {
  const auto& g = *group_;
  ProvisionMessage msg;
  msg.record_id = h.envelope.record_id;
  msg.node_id = node_id;
  msg.kind = kind;
  msg.consumer_pk = std::move(consumer_pk);
  msg.envelope = h.envelope;
  msg.sealed_material =
      crypto::seal(g, node_key, material, material_aad(msg.record_id, node_id, kind), rng_);
  msg.owner_account_pk = account_.public_key();
  msg.signature = crypto::sign(g, account_.secret_key(), provision_signing_payload(g, msg), rng_);
  return msg;
}

std::vector<ProvisionMessage> DataOwner::prepare_shares(const RecordId& id,
                                                        std::span<const Element> node_keys) {
  auto& h = held(id);
  if (h.envelope.scheme != Scheme::kSecretSharing) {
    throw Error(ErrorCode::kInvalidParams, "record does not use secret sharing");
  }
  if (node_keys.size() != h.policy.n) {
    throw Error(ErrorCode::kCountMismatch, "node key count differs from policy n");
  }
  const auto& g = *group_;
  auto split = sharing::split_secret(g, h.kem.secret_key(), h.policy, rng_);
  h.envelope.commitments = std::move(split.commitments);
  sign_envelope(h.envelope);

  std::vector<ProvisionMessage> out;
  out.reserve(node_keys.size());
  for (std::uint32_t i = 0; i < node_keys.size(); ++i) {
    auto material = sharing::serialize(g.scalars(), split.shares[i]);
    out.push_back(make_message(h, i + 1, node_keys[i], MaterialKind::kShare, material,
                               std::nullopt));
  }
  return out;
}

std::vector<ProvisionMessage> DataOwner::prepare_kfrags(const RecordId& id,
                                                        const Element& consumer_pk,
                                                        std::span<const Element> node_keys) {
  const auto& h = held(id);
  if (h.envelope.scheme != Scheme::kThresholdPre) {
    throw Error(ErrorCode::kInvalidParams, "record does not use proxy re-encryption");
  }
  if (node_keys.size() != h.policy.n) {
    throw Error(ErrorCode::kCountMismatch, "node key count differs from policy n");
  }
  const auto& g = *group_;
  auto kfrags = pre::generate_kfrags(g, h.kem.secret_key(), consumer_pk, h.policy, rng_);

  std::vector<ProvisionMessage> out;
  out.reserve(node_keys.size());
  for (std::uint32_t i = 0; i < node_keys.size(); ++i) {
    auto material = pre::serialize(g, kfrags[i]);
    out.push_back(make_message(h, i + 1, node_keys[i], MaterialKind::kKFrag, material,
                               consumer_pk));
  }
  return out;
}

std::uint64_t DataOwner::grant(const RecordId& id, const Address& consumer) {
  return ledger_.grant(
      ledger::make_acl_tx(*group_, account_, ledger::EventKind::kGrant, id, consumer, rng_));
}

std::uint64_t DataOwner::revoke(const RecordId& id, const Address& consumer) {
  return ledger_.revoke(
      ledger::make_acl_tx(*group_, account_, ledger::EventKind::kRevoke, id, consumer, rng_));
}

}  // namespace pims::authz
