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

#include "pims/authz/messages.hpp"

#include "pims/common/codec.hpp"
#include "pims/common/error.hpp"

namespace pims::authz {

namespace {

Signature read_signature(ByteReader& r) { return Signature(r.prefixed()); }

}  // namespace

Bytes envelope_signing_payload(const Group& group, const CapsuleEnvelope& env) {
  ByteWriter w;
  w.prefixed(std::string_view("pims/authz/envelope"))
      .raw(env.record_id.bytes)
      .u8(static_cast<std::uint8_t>(env.scheme))
      .prefixed(crypto::serialize(group, env.capsule))
      .prefixed(env.kem_pk.bytes())
      .prefixed(env.commitments ? sharing::serialize(*env.commitments) : Bytes{})
      .prefixed(env.owner_account_pk.bytes());
  return std::move(w).take();
}

bool verify_envelope(const Group& group, const CapsuleEnvelope& env,
                     const ledger::DataRecord& record) {
  if (env.record_id != record.record_id || env.scheme != record.scheme) return false;
  if (ledger::address_of(env.owner_account_pk) != record.owner) return false;
  if (!crypto::verify(group, env.owner_account_pk, envelope_signing_payload(group, env),
                      env.signature)) {
    return false;
  }
  if (!crypto::is_valid_public_key(group, env.kem_pk)) return false;
  if (record.scheme == Scheme::kSecretSharing) {
    if (!env.commitments || env.commitments->commitments.size() != record.policy.t ||
        env.commitments->commitments.front() != env.kem_pk) {
      return false;
    }
  }
  return crypto::verify_capsule(group, env.capsule);
}

Bytes request_signing_payload(const AccessRequest& req) {
  ByteWriter w;
  w.prefixed(std::string_view("pims/authz/access-request"))
      .raw(req.record_id.bytes)
      .prefixed(req.consumer_pk.bytes())
      .raw(req.nonce);
  return std::move(w).take();
}

AccessRequest make_access_request(const Group& group, const KeyPair& consumer,
                                  const RecordId& record_id, Rng& rng) {
  AccessRequest req;
  req.record_id = record_id;
  req.consumer_pk = consumer.public_key();
  rng.fill(req.nonce);
  req.signature = crypto::sign(group, consumer.secret_key(), request_signing_payload(req), rng);
  return req;
}

std::string_view denial_reason_name(DenialReason r) {
  switch (r) {
    case DenialReason::kBadSignature: return "BadSignature";
    case DenialReason::kNotInAcl: return "NotInAcl";
    case DenialReason::kUnknownRecord: return "UnknownRecord";
    case DenialReason::kNotProvisioned: return "NotProvisioned";
  }
  return "?";
}

std::string_view ack_status_name(AckStatus s) {
  switch (s) {
    case AckStatus::kOk: return "Ok";
    case AckStatus::kBadSignature: return "BadSignature";
    case AckStatus::kUnknownRecord: return "UnknownRecord";
    case AckStatus::kUnauthorized: return "Unauthorized";
    case AckStatus::kInvalidMaterial: return "InvalidMaterial";
    case AckStatus::kMisrouted: return "Misrouted";
  }
  return "?";
}

Bytes share_aad(const RecordId& record_id, std::uint32_t node_id) {
  ByteWriter w;
  w.prefixed(std::string_view("pims/authz/share")).raw(record_id.bytes).u32(node_id);
  return std::move(w).take();
}

Bytes material_aad(const RecordId& record_id, std::uint32_t node_id, MaterialKind kind) {
  ByteWriter w;
  w.prefixed(std::string_view("pims/authz/material"))
      .raw(record_id.bytes)
      .u32(node_id)
      .u8(static_cast<std::uint8_t>(kind));
  return std::move(w).take();
}

Bytes provision_signing_payload(const Group& group, const ProvisionMessage& msg) {
  ByteWriter w;
  w.prefixed(std::string_view("pims/authz/provision"))
      .raw(msg.record_id.bytes)
      .u32(msg.node_id)
      .u8(static_cast<std::uint8_t>(msg.kind))
      .prefixed(msg.consumer_pk ? msg.consumer_pk->bytes() : Bytes{})
      .prefixed(serialize(group, msg.envelope))
      .prefixed(crypto::serialize(group, msg.sealed_material))
      .prefixed(msg.owner_account_pk.bytes());
  return std::move(w).take();
}

Bytes encode_frame(FrameTag tag, ByteView body) {
  ByteWriter w;
  w.u8(static_cast<std::uint8_t>(tag)).prefixed(body);
  return std::move(w).take();
}

Frame decode_frame(ByteView bytes) {
  ByteReader r(bytes);
  auto tag = r.u8();
  if (tag < 1 || tag > 4) throw Error(ErrorCode::kDecodeError, "unknown frame tag");
  Frame f{static_cast<FrameTag>(tag), r.prefixed()};
  r.expect_end();
  return f;
}

Bytes serialize(const Group& group, const CapsuleEnvelope& env) {
  ByteWriter w;
  w.raw(env.record_id.bytes)
      .u8(static_cast<std::uint8_t>(env.scheme))
      .prefixed(crypto::serialize(group, env.capsule))
      .prefixed(env.kem_pk.bytes())
      .u8(env.commitments ? 1 : 0);
  if (env.commitments) w.prefixed(sharing::serialize(*env.commitments));
  w.prefixed(env.owner_account_pk.bytes()).prefixed(env.signature.bytes());
  return std::move(w).take();
}

namespace {

Scheme read_scheme(ByteReader& r) {
  auto s = r.u8();
  if (s != 1 && s != 2) throw Error(ErrorCode::kDecodeError, "unknown scheme tag");
  return static_cast<Scheme>(s);
}

CapsuleEnvelope read_envelope(const Group& group, ByteReader& r) {
  CapsuleEnvelope env;
  env.record_id.bytes = to_fixed<32>(r.raw(32));
  env.scheme = read_scheme(r);
  env.capsule = crypto::deserialize_capsule(group, r.prefixed());
  env.kem_pk = group.decode(r.prefixed());
  if (r.u8()) env.commitments = sharing::deserialize_commitments(group, r.prefixed());
  env.owner_account_pk = group.decode(r.prefixed());
  env.signature = read_signature(r);
  return env;
}

}  // namespace

CapsuleEnvelope deserialize_envelope(const Group& group, ByteView bytes) {
  ByteReader r(bytes);
  auto env = read_envelope(group, r);
  r.expect_end();
  return env;
}

Bytes serialize(const Group&, const AccessRequest& req) {
  ByteWriter w;
  w.raw(req.record_id.bytes)
      .prefixed(req.consumer_pk.bytes())
      .raw(req.nonce)
      .prefixed(req.signature.bytes());
  return std::move(w).take();
}

AccessRequest deserialize_request(const Group& group, ByteView bytes) {
  ByteReader r(bytes);
  AccessRequest req;
  req.record_id.bytes = to_fixed<32>(r.raw(32));
  req.consumer_pk = group.decode(r.prefixed());
  req.nonce = to_fixed<AccessRequest::kNonceSize>(r.raw(AccessRequest::kNonceSize));
  req.signature = read_signature(r);
  r.expect_end();
  return req;
}

Bytes serialize(const Group& group, const NodeResponse& resp) {
  ByteWriter w;
  w.u32(resp.node_id);
  if (const auto* share = std::get_if<EncryptedShare>(&resp.payload)) {
    w.u8(1).prefixed(crypto::serialize(group, share->box));
  } else if (const auto* cfrag = std::get_if<pre::CFrag>(&resp.payload)) {
    w.u8(2).prefixed(pre::serialize(group, *cfrag));
  } else {
    w.u8(3).u8(static_cast<std::uint8_t>(std::get<Denial>(resp.payload).reason));
  }
  w.u8(resp.envelope ? 1 : 0);
  if (resp.envelope) w.prefixed(serialize(group, *resp.envelope));
  return std::move(w).take();
}

NodeResponse deserialize_response(const Group& group, ByteView bytes) {
  ByteReader r(bytes);
  NodeResponse resp;
  resp.node_id = r.u32();
  switch (r.u8()) {
    case 1:
      resp.payload = EncryptedShare{crypto::deserialize_sealed(group, r.prefixed())};
      break;
    case 2:
      resp.payload = pre::deserialize_cfrag(group, r.prefixed());
      break;
    case 3: {
      auto reason = r.u8();
      if (reason < 1 || reason > 4) throw Error(ErrorCode::kDecodeError, "unknown denial");
      resp.payload = Denial{static_cast<DenialReason>(reason)};
      break;
    }
    default:
      throw Error(ErrorCode::kDecodeError, "unknown payload tag");
  }
  if (r.u8()) resp.envelope = deserialize_envelope(group, r.prefixed());
  r.expect_end();
  return resp;
}

Bytes serialize(const Group& group, const ProvisionMessage& msg) {
  ByteWriter w;
  w.raw(msg.record_id.bytes)
      .u32(msg.node_id)
      .u8(static_cast<std::uint8_t>(msg.kind))
      .u8(msg.consumer_pk ? 1 : 0);
  if (msg.consumer_pk) w.prefixed(msg.consumer_pk->bytes());
  w.prefixed(serialize(group, msg.envelope))
      .prefixed(crypto::serialize(group, msg.sealed_material))
      .prefixed(msg.owner_account_pk.bytes())
      .prefixed(msg.signature.bytes());
  return std::move(w).take();
}

ProvisionMessage deserialize_provision(const Group& group, ByteView bytes) {
  ByteReader r(bytes);
  ProvisionMessage msg;
  msg.record_id.bytes = to_fixed<32>(r.raw(32));
  msg.node_id = r.u32();
  auto kind = r.u8();
  if (kind != 1 && kind != 2) throw Error(ErrorCode::kDecodeError, "unknown material kind");
  msg.kind = static_cast<MaterialKind>(kind);
  if (r.u8()) msg.consumer_pk = group.decode(r.prefixed());
  msg.envelope = deserialize_envelope(group, r.prefixed());
  msg.sealed_material = crypto::deserialize_sealed(group, r.prefixed());
  msg.owner_account_pk = group.decode(r.prefixed());
  msg.signature = read_signature(r);
  r.expect_end();
  return msg;
}

Bytes serialize(const ProvisionAck& ack) {
  ByteWriter w;
  w.u32(ack.node_id).u8(static_cast<std::uint8_t>(ack.status));
  return std::move(w).take();
}

ProvisionAck deserialize_ack(ByteView bytes) {
  ByteReader r(bytes);
  ProvisionAck ack;
  ack.node_id = r.u32();
  auto s = r.u8();
  if (s > 5) throw Error(ErrorCode::kDecodeError, "unknown ack status");
  ack.status = static_cast<AckStatus>(s);
  r.expect_end();
  return ack;
}

}  // namespace pims::authz
