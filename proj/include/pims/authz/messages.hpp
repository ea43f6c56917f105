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

#include <optional>
#include <variant>

#include "pims/common/rng.hpp"
#include "pims/crypto/kem.hpp"
#include "pims/crypto/keys.hpp"
#include "pims/crypto/sealed.hpp"
#include "pims/crypto/signature.hpp"
#include "pims/ledger/ledger.hpp"
#include "pims/pre/threshold_pre.hpp"
#include "pims/sharing/shamir.hpp"

namespace pims::authz {

using crypto::Capsule;
using crypto::Element;
using crypto::Group;
using crypto::KeyPair;
using crypto::SealedBox;
using crypto::Signature;
using ledger::Address;
using ledger::RecordId;
using ledger::Scheme;
using sharing::ThresholdPolicy;

// Public material every node serves alongside its payload: the capsule to
// open, the per-record KEM key it was made under and, for secret sharing,
// the Feldman commitments of the split. Signed by the owner's account key,
// whose address is the ledger record's owner.
struct CapsuleEnvelope {
  RecordId record_id;
  Scheme scheme = Scheme::kSecretSharing;
  Capsule capsule;
  Element kem_pk;
  std::optional<sharing::CommitmentSet> commitments;
  Element owner_account_pk;
  Signature signature;

  friend bool operator==(const CapsuleEnvelope&, const CapsuleEnvelope&) = default;
};

Bytes envelope_signing_payload(const Group& group, const CapsuleEnvelope& env);
// Signature, capsule self-check, owner address, and commitments[0] == kem_pk.
bool verify_envelope(const Group& group, const CapsuleEnvelope& env,
                     const ledger::DataRecord& record);

struct AccessRequest {
  static constexpr std::size_t kNonceSize = 16;

  RecordId record_id;
  Element consumer_pk;
  FixedBytes<kNonceSize> nonce{};
  Signature signature;  // over record_id || consumer_pk || nonce

  friend bool operator==(const AccessRequest&, const AccessRequest&) = default;
};

Bytes request_signing_payload(const AccessRequest& req);
AccessRequest make_access_request(const Group& group, const KeyPair& consumer,
                                  const RecordId& record_id, Rng& rng);

enum class DenialReason : std::uint8_t {
  kBadSignature = 1,
  kNotInAcl = 2,
  kUnknownRecord = 3,
  kNotProvisioned = 4,
};
std::string_view denial_reason_name(DenialReason r);

struct Denial {
  DenialReason reason;
  friend bool operator==(const Denial&, const Denial&) = default;
};

// Share sealed to the consumer's key with associated data
// share_aad(record_id, node_id).
struct EncryptedShare {
  SealedBox box;
  friend bool operator==(const EncryptedShare&, const EncryptedShare&) = default;
};

Bytes share_aad(const RecordId& record_id, std::uint32_t node_id);

using ResponsePayload = std::variant<EncryptedShare, pre::CFrag, Denial>;

struct NodeResponse {
  std::uint32_t node_id = 0;
  ResponsePayload payload;
  std::optional<CapsuleEnvelope> envelope;  // absent on Denial

  friend bool operator==(const NodeResponse&, const NodeResponse&) = default;
};

enum class MaterialKind : std::uint8_t { kShare = 1, kKFrag = 2 };

// Owner -> node i: node i's share or kfrag, sealed to the node identity key.
struct ProvisionMessage {
  RecordId record_id;
  std::uint32_t node_id = 0;
  MaterialKind kind = MaterialKind::kShare;
  std::optional<Element> consumer_pk;  // kfrags are per consumer
  CapsuleEnvelope envelope;
  SealedBox sealed_material;
  Element owner_account_pk;
  Signature signature;
};

Bytes provision_signing_payload(const Group& group, const ProvisionMessage& msg);
Bytes material_aad(const RecordId& record_id, std::uint32_t node_id, MaterialKind kind);

enum class AckStatus : std::uint8_t {
  kOk = 0,
  kBadSignature = 1,
  kUnknownRecord = 2,
  kUnauthorized = 3,
  kInvalidMaterial = 4,
  kMisrouted = 5,
};
std::string_view ack_status_name(AckStatus s);

struct ProvisionAck {
  std::uint32_t node_id = 0;
  AckStatus status = AckStatus::kOk;
  friend bool operator==(const ProvisionAck&, const ProvisionAck&) = default;
};

// Wire format: tag (u8) || length (u32 BE) || body, bodies being the
// length-prefixed field concatenations below.
enum class FrameTag : std::uint8_t {
  kProvision = 1,
  kProvisionAck = 2,
  kAccessRequest = 3,
  kNodeResponse = 4,
};

struct Frame {
  FrameTag tag;
  Bytes body;
};

Bytes encode_frame(FrameTag tag, ByteView body);
// Throws Error(kDecodeError) on unknown tag, bad length or trailing bytes.
Frame decode_frame(ByteView bytes);

Bytes serialize(const Group& group, const CapsuleEnvelope& env);
CapsuleEnvelope deserialize_envelope(const Group& group, ByteView bytes);
Bytes serialize(const Group& group, const AccessRequest& req);
AccessRequest deserialize_request(const Group& group, ByteView bytes);
Bytes serialize(const Group& group, const NodeResponse& resp);
NodeResponse deserialize_response(const Group& group, ByteView bytes);
Bytes serialize(const Group& group, const ProvisionMessage& msg);
ProvisionMessage deserialize_provision(const Group& group, ByteView bytes);
Bytes serialize(const ProvisionAck& ack);
ProvisionAck deserialize_ack(ByteView bytes);

}  // namespace pims::authz
