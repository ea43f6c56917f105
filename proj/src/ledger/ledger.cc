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

#include "pims/ledger/ledger.hpp"

#include "json.hpp"
#include <sstream>

#include "pims/common/codec.hpp"
#include "pims/common/error.hpp"

namespace pims::ledger {

Address address_of(const Element& public_key) {
  auto h = sha256(public_key.bytes());
  Address a;
  std::copy(h.end() - 20, h.end(), a.bytes.begin());
  return a;
}

std::string_view scheme_name(Scheme s) {
  return s == Scheme::kSecretSharing ? "SS" : "PRE";
}

Scheme scheme_from_name(std::string_view name) {
  if (name == "SS" || name == "ss") return Scheme::kSecretSharing;
  if (name == "PRE" || name == "pre") return Scheme::kThresholdPre;
  throw Error(ErrorCode::kDecodeError, "unknown scheme '" + std::string(name) + "'");
}

std::string_view event_kind_name(EventKind k) {
  switch (k) {
    case EventKind::kDeploy: return "Deploy";
    case EventKind::kGrant: return "Grant";
    case EventKind::kRevoke: return "Revoke";
  }
  return "?";
}

namespace {

EventKind event_kind_from_name(std::string_view name) {
  if (name == "Deploy") return EventKind::kDeploy;
  if (name == "Grant") return EventKind::kGrant;
  if (name == "Revoke") return EventKind::kRevoke;
  throw Error(ErrorCode::kDecodeError, "unknown event kind '" + std::string(name) + "'");
}

void write_fields(ByteWriter& w, const DeployFields& f) {
  w.raw(f.storage_ref.bytes)
      .raw(f.digest.salt)
      .raw(f.digest.value)
      .u8(static_cast<std::uint8_t>(f.scheme))
      .u32(f.policy.t)
      .u32(f.policy.n)
      .u64(f.nonce);
}

}  // namespace

RecordId derive_record_id(const Address& owner, const StorageRef& ref, std::uint64_t nonce) {
  ByteWriter w;
  w.raw(owner.bytes).raw(ref.bytes).u64(nonce);
  return {sha256(w.bytes())};
}

Bytes record_aad(const Address& owner, std::uint64_t nonce) {
  ByteWriter w;
  w.prefixed(std::string_view("pims/record-aad")).raw(owner.bytes).u64(nonce);
  return std::move(w).take();
}

Bytes signing_payload(const DeployTx& tx) {
  ByteWriter w;
  w.prefixed(std::string_view("pims/ledger/deploy")).prefixed(tx.owner_pk.bytes());
  write_fields(w, tx.fields);
  return std::move(w).take();
}

Bytes signing_payload(const AclTx& tx) {
  ByteWriter w;
  w.prefixed(std::string_view("pims/ledger/acl"))
      .u8(static_cast<std::uint8_t>(tx.kind))
      .raw(tx.record_id.bytes)
      .raw(tx.consumer.bytes)
      .prefixed(tx.signer_pk.bytes());
  return std::move(w).take();
}

DeployTx make_deploy_tx(const Group& group, const KeyPair& owner, DeployFields fields,
                        Rng& rng) {
  DeployTx tx{owner.public_key(), std::move(fields), {}};
  tx.signature = crypto::sign(group, owner.secret_key(), signing_payload(tx), rng);
  return tx;
}

AclTx make_acl_tx(const Group& group, const KeyPair& signer, EventKind kind,
                  const RecordId& record_id, const Address& consumer, Rng& rng) {
  AclTx tx{kind, record_id, consumer, signer.public_key(), {}};
  tx.signature = crypto::sign(group, signer.secret_key(), signing_payload(tx), rng);
  return tx;
}

LedgerState replay(std::span<const LedgerEvent> events) {
  LedgerState state;
  std::uint64_t expected = 1;
  for (const auto& ev : events) {
    if (ev.seq != expected++) {
      throw Error(ErrorCode::kDecodeError, "event log has a gap at seq " + std::to_string(ev.seq));
    }
    if (ev.kind == EventKind::kDeploy) {
      if (!ev.deploy) throw Error(ErrorCode::kDecodeError, "deploy event without fields");
      const auto& f = *ev.deploy;
      DataRecord r{ev.record_id, ev.subject, f.storage_ref, f.digest, f.scheme,
                   f.policy,     f.nonce,    {},            ev.seq};
      if (!state.emplace(ev.record_id, std::move(r)).second) {
        throw Error(ErrorCode::kDecodeError, "duplicate deploy in event log");
      }
      continue;
    }
    auto it = state.find(ev.record_id);
    if (it == state.end()) {
      throw Error(ErrorCode::kDecodeError, "event for unknown record");
    }
    if (ev.kind == EventKind::kGrant) {
      it->second.acl.insert(ev.subject);
    } else {
      it->second.acl.erase(ev.subject);
    }
  }
  return state;
}

std::string export_events(std::span<const LedgerEvent> events) {
  std::string out;
  for (const auto& ev : events) {
    nlohmann::ordered_json j;
    j["seq"] = ev.seq;
    j["kind"] = event_kind_name(ev.kind);
    j["record_id"] = ev.record_id.hex();
    j["subject"] = ev.subject.hex();
    j["tx_signer"] = ev.tx_signer.hex();
    if (ev.deploy) {
      const auto& f = *ev.deploy;
      j["storage_ref"] = f.storage_ref.hex();
      j["digest_salt"] = to_hex(f.digest.salt);
      j["digest_value"] = to_hex(f.digest.value);
      j["scheme"] = scheme_name(f.scheme);
      j["t"] = f.policy.t;
      j["n"] = f.policy.n;
      j["nonce"] = f.nonce;
    }
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<LedgerEvent> import_events(std::string_view text) {
  std::vector<LedgerEvent> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      auto j = nlohmann::json::parse(line);
      LedgerEvent ev;
      ev.seq = j.at("seq").get<std::uint64_t>();
      ev.kind = event_kind_from_name(j.at("kind").get<std::string>());
      ev.record_id.bytes = to_fixed<32>(from_hex(j.at("record_id").get<std::string>()));
      ev.subject.bytes = to_fixed<20>(from_hex(j.at("subject").get<std::string>()));
      ev.tx_signer.bytes = to_fixed<20>(from_hex(j.at("tx_signer").get<std::string>()));
      if (ev.kind == EventKind::kDeploy) {
        DeployFields f;
        f.storage_ref.bytes = to_fixed<32>(from_hex(j.at("storage_ref").get<std::string>()));
        f.digest.salt = to_fixed<16>(from_hex(j.at("digest_salt").get<std::string>()));
        f.digest.value = to_fixed<32>(from_hex(j.at("digest_value").get<std::string>()));
        f.scheme = scheme_from_name(j.at("scheme").get<std::string>());
        f.policy = {j.at("t").get<std::uint32_t>(), j.at("n").get<std::uint32_t>()};
        f.nonce = j.at("nonce").get<std::uint64_t>();
        ev.deploy = f;
      }
      out.push_back(std::move(ev));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kDecodeError, std::string("bad event line: ") + e.what());
    }
  }
  return out;
}

Ledger::Ledger(GroupParams group, Options options)
    : group_(std::move(group)), options_(options) {
  if (!group_) throw Error(ErrorCode::kInvalidParams, "null group parameters");
  writer_ = std::thread([this] { writer_loop(); });
}

Ledger::~Ledger() {
  {
    std::lock_guard lock(queue_mu_);
    stopping_ = true;
  }
  queue_cv_.notify_all();
  writer_.join();
}

void Ledger::enqueue(std::function<void()> job) {
  {
    std::lock_guard lock(queue_mu_);
    queue_.push_back(std::move(job));
  }
  queue_cv_.notify_one();
}

void Ledger::writer_loop() {
  for (;;) {
    std::function<void()> job;
    {
      std::unique_lock lock(queue_mu_);
      queue_cv_.wait(lock, [this] { return stopping_ || !queue_.empty(); });
      if (queue_.empty()) return;
      job = std::move(queue_.front());
      queue_.pop_front();
    }
    if (options_.confirmation_delay.count() > 0) {
      std::this_thread::sleep_for(options_.confirmation_delay);
    }
    job();
  }
}

std::future<RecordId> Ledger::submit_deploy(DeployTx tx) {
  auto promise = std::make_shared<std::promise<RecordId>>();
  auto fut = promise->get_future();
  enqueue([this, promise, tx = std::move(tx)] {
    try {
      promise->set_value(apply_deploy(tx));
    } catch (...) {
      promise->set_exception(std::current_exception());
    }
  });
  return fut;
}

std::future<std::uint64_t> Ledger::submit_acl(AclTx tx) {
  auto promise = std::make_shared<std::promise<std::uint64_t>>();
  auto fut = promise->get_future();
  enqueue([this, promise, tx = std::move(tx)] {
    try {
      promise->set_value(apply_acl(tx));
    } catch (...) {
      promise->set_exception(std::current_exception());
    }
  });
  return fut;
}

std::uint64_t Ledger::grant(AclTx tx) {
  if (tx.kind != EventKind::kGrant) throw Error(ErrorCode::kDecodeError, "not a grant tx");
  return submit_acl(std::move(tx)).get();
}

std::uint64_t Ledger::revoke(AclTx tx) {
  if (tx.kind != EventKind::kRevoke) throw Error(ErrorCode::kDecodeError, "not a revoke tx");
  return submit_acl(std::move(tx)).get();
}

void Ledger::append(LedgerEvent event) { log_.push_back(std::move(event)); }

RecordId Ledger::apply_deploy(const DeployTx& tx) {
  if (!crypto::verify(*group_, tx.owner_pk, signing_payload(tx), tx.signature)) {
    throw Error(ErrorCode::kBadSignature, "deploy transaction signature");
  }
  tx.fields.policy.validate();
  const auto owner = address_of(tx.owner_pk);
  const auto id = derive_record_id(owner, tx.fields.storage_ref, tx.fields.nonce);

  std::unique_lock lock(state_mu_);
  if (records_.count(id)) {
    throw Error(ErrorCode::kDuplicateRecord, "record " + id.hex() + " already deployed");
  }
  const std::uint64_t seq = log_.size() + 1;
  const auto& f = tx.fields;
  records_.emplace(id, DataRecord{id, owner, f.storage_ref, f.digest, f.scheme, f.policy,
                                  f.nonce, {}, seq});
  append({seq, EventKind::kDeploy, id, owner, owner, f});
  return id;
}

std::uint64_t Ledger::apply_acl(const AclTx& tx) {
  if (tx.kind != EventKind::kGrant && tx.kind != EventKind::kRevoke) {
    throw Error(ErrorCode::kDecodeError, "ACL transaction must be a grant or revoke");
  }
  Address owner;
  {
    std::shared_lock lock(state_mu_);
    auto it = records_.find(tx.record_id);
    if (it == records_.end()) {
      throw Error(ErrorCode::kUnknownRecord, "record " + tx.record_id.hex());
    }
    owner = it->second.owner;
  }
  if (!crypto::verify(*group_, tx.signer_pk, signing_payload(tx), tx.signature)) {
    throw Error(ErrorCode::kBadSignature, "ACL transaction signature");
  }
  const auto signer = address_of(tx.signer_pk);
  if (signer != owner) {
    throw Error(ErrorCode::kUnauthorized, "only the record owner may change its ACL");
  }
  // Only this thread writes, so the record found above is still present.
  std::unique_lock lock(state_mu_);
  auto it = records_.find(tx.record_id);
  if (tx.kind == EventKind::kGrant) {
    it->second.acl.insert(tx.consumer);
  } else {
    it->second.acl.erase(tx.consumer);
  }
  const std::uint64_t seq = log_.size() + 1;
  append({seq, tx.kind, tx.record_id, tx.consumer, signer, std::nullopt});
  return seq;
}

bool Ledger::is_authorized(const RecordId& id, const Address& consumer) const {
  std::shared_lock lock(state_mu_);
  auto it = records_.find(id);
  if (it == records_.end()) throw Error(ErrorCode::kUnknownRecord, "record " + id.hex());
  return it->second.acl.count(consumer) > 0;
}

DataRecord Ledger::record(const RecordId& id) const {
  auto r = find_record(id);
  if (!r) throw Error(ErrorCode::kUnknownRecord, "record " + id.hex());
  return std::move(*r);
}

std::optional<DataRecord> Ledger::find_record(const RecordId& id) const {
  std::shared_lock lock(state_mu_);
  auto it = records_.find(id);
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

std::vector<LedgerEvent> Ledger::events(const RecordId& id, std::uint64_t from_seq) const {
  std::shared_lock lock(state_mu_);
  std::vector<LedgerEvent> out;
  for (std::uint64_t s = std::max<std::uint64_t>(from_seq, 1); s <= log_.size(); ++s) {
    if (log_[s - 1].record_id == id) out.push_back(log_[s - 1]);
  }
  return out;
}

std::vector<LedgerEvent> Ledger::all_events(std::uint64_t from_seq) const {
  std::shared_lock lock(state_mu_);
  if (from_seq == 0) from_seq = 1;
  if (from_seq > log_.size()) return {};
  return {log_.begin() + static_cast<std::ptrdiff_t>(from_seq - 1), log_.end()};
}

LedgerState Ledger::state() const {
  std::shared_lock lock(state_mu_);
  return records_;
}

std::uint64_t Ledger::head() const {
  std::shared_lock lock(state_mu_);
  return log_.size();
}

}  // namespace pims::ledger
