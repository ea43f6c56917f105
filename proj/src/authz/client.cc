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

#include "pims/authz/client.hpp"

#include <time.h>

#include <map>
#include <set>

#include "pims/common/error.hpp"
#include "pims/common/hash.hpp"

namespace pims::authz {

namespace {

std::chrono::nanoseconds thread_cpu_now() {
  timespec ts{};
  clock_gettime(CLOCK_THREAD_CPUTIME_ID, &ts);
  return std::chrono::seconds(ts.tv_sec) + std::chrono::nanoseconds(ts.tv_nsec);
}

}  // namespace

// Sorts responses into buckets of mutually compatible payloads: same
// signed envelope and, for fragments, the same re-key set. The first
// bucket to reach t yields the record key.
class DataConsumer::Collector {
 public:
  Collector(const Group& group, const ledger::DataRecord& record, const KeyPair& consumer,
            AccessTrace& trace)
      : g_(group), record_(record), consumer_(consumer), trace_(trace) {}

  // Returns the key once t compatible payloads are in hand.
  std::optional<crypto::SymmetricKey> add(const NodeResponse& resp) {
    ++trace_.responses;
    if (const auto* d = std::get_if<Denial>(&resp.payload)) {
      ++trace_.denials;
      trace_.denial_reasons.push_back(d->reason);
      return std::nullopt;
    }
    if (!resp.envelope || !accept_envelope(*resp.envelope)) return reject(resp.node_id);
    const auto& env = *resp.envelope;
    const auto env_key = sha256(serialize(g_, env));

    try {
      if (const auto* es = std::get_if<EncryptedShare>(&resp.payload)) {
        if (record_.scheme != Scheme::kSecretSharing) return reject(resp.node_id);
        auto plain = crypto::open(g_, consumer_.secret_key(), es->box,
                                  share_aad(record_.record_id, resp.node_id));
        auto share = sharing::deserialize_share(g_.scalars(), plain, env.commitments->id);
        if (share.index != resp.node_id || !sharing::verify_share(g_, share, *env.commitments)) {
          return reject(resp.node_id);
        }
        auto& bucket = buckets_[{env_key, Bytes{}}];
        if (!bucket.indices.insert(share.index).second) return reject(resp.node_id);
        bucket.shares.push_back(std::move(share));
        trace_.accepted_nodes.push_back(resp.node_id);
        if (bucket.shares.size() < record_.policy.t) return std::nullopt;
        auto sk = sharing::reconstruct_secret(g_.scalars(), bucket.shares, record_.policy);
        if (g_.mul_base(sk) != env.kem_pk) {
          throw Error(ErrorCode::kInsufficientShares, "reconstructed key does not match");
        }
        return crypto::kem_decapsulate(g_, sk, env.capsule);
      }

      const auto& cfrag = std::get<pre::CFrag>(resp.payload);
      if (record_.scheme != Scheme::kThresholdPre ||
          !pre::verify_cfrag(g_, cfrag, env.capsule, env.kem_pk, consumer_.public_key())) {
        return reject(resp.node_id);
      }
      auto& bucket = buckets_[{env_key, cfrag.precursor.bytes()}];
      if (!bucket.ids.insert(cfrag.kfrag_id).second) return reject(resp.node_id);
      bucket.cfrags.push_back(cfrag);
      trace_.accepted_nodes.push_back(resp.node_id);
      if (bucket.cfrags.size() < record_.policy.t) return std::nullopt;
      return pre::open_verified(g_, consumer_.secret_key(), env.kem_pk, env.capsule,
                                bucket.cfrags);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kInsufficientShares) throw;
      return reject(resp.node_id);
    }
  }

 private:
  struct Bucket {
    std::vector<sharing::Share> shares;
    std::set<std::uint32_t> indices;
    std::vector<pre::CFrag> cfrags;
    std::set<crypto::Scalar> ids;
  };

  std::optional<crypto::SymmetricKey> reject(std::uint32_t node_id) {
    trace_.rejected_nodes.push_back(node_id);
    return std::nullopt;
  }

  bool accept_envelope(const CapsuleEnvelope& env) {
    for (const auto& known : verified_) {
      if (known == env) return true;
    }
    if (!verify_envelope(g_, env, record_)) return false;
    verified_.push_back(env);
    return true;
  }

  const Group& g_;
  const ledger::DataRecord& record_;
  const KeyPair& consumer_;
  AccessTrace& trace_;
  std::vector<CapsuleEnvelope> verified_;
  std::map<std::pair<Hash256, Bytes>, Bucket> buckets_;
};

DataConsumer::DataConsumer(crypto::GroupParams group, const ledger::Ledger& ledger,
                           const store::BlobStore& store, Bytes pepper, KeyPair key, Rng rng)
    : group_(std::move(group)),
      ledger_(ledger),
      store_(store),
      pepper_(std::move(pepper)),
      key_(std::move(key)),
      rng_(std::move(rng)) {}

Bytes DataConsumer::decrypt_payload(const ledger::DataRecord& record,
                                    const crypto::SymmetricKey& key) const {
  auto ct = store_.get(record.storage_ref);
  if (!store::verify_integrity(ct, record.digest, pepper_)) {
    throw Error(ErrorCode::kIntegrityMismatch, "ciphertext digest mismatch");
  }
  auto aad = ledger::record_aad(record.owner, record.nonce);
  return crypto::dem_decrypt(key, crypto::deserialize_dem(ct), ByteView(aad));
}

Bytes DataConsumer::request_access(Network& network, const RecordId& id, AccessTrace* trace,
                                   const AccessOptions& options) {
  AccessTrace local;
  auto& tr = trace ? *trace : local;
  tr = AccessTrace{};
  const auto wall_start = Clock::now();
  const auto cpu_start = thread_cpu_now();
  auto finish = [&] {
    tr.client_cpu = thread_cpu_now() - cpu_start;
    tr.wall = Clock::now() - wall_start;
  };

  const auto record = ledger_.record(id);
  const auto& g = *group_;
  auto req = make_access_request(g, key_, id, rng_);
  auto queue = network.broadcast(req);
  const auto deadline = wall_start + options.timeout;

  Collector collector(g, record, key_, tr);
  std::optional<crypto::SymmetricKey> key;
  for (std::size_t seen = 0; !key && seen < network.size(); ++seen) {
    auto frame = queue->pop_until(deadline);
    if (!frame) break;
    NodeResponse resp;
    try {
      auto decoded = decode_frame(*frame);
      if (decoded.tag != FrameTag::kNodeResponse) continue;
      resp = deserialize_response(g, decoded.body);
    } catch (const Error&) {
      continue;
    }
    key = collector.add(resp);
  }
  if (!key) {
    finish();
    throw Error(ErrorCode::kInsufficientResponses,
                std::to_string(tr.accepted_nodes.size()) + " valid responses for threshold " +
                    std::to_string(record.policy.t));
  }
  auto plain = decrypt_payload(record, *key);
  finish();
  return plain;
}

Bytes DataConsumer::open_from_responses(const ledger::DataRecord& record,
                                        std::span<const NodeResponse> responses,
                                        AccessTrace* trace) {
  AccessTrace local;
  auto& tr = trace ? *trace : local;
  tr = AccessTrace{};
  Collector collector(*group_, record, key_, tr);
  for (const auto& resp : responses) {
    if (auto key = collector.add(resp)) return decrypt_payload(record, *key);
  }
  throw Error(ErrorCode::kInsufficientResponses,
              std::to_string(tr.accepted_nodes.size()) + " valid responses for threshold " +
                  std::to_string(record.policy.t));
}

}  // namespace pims::authz
