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

#include <algorithm>

#include "pims/authz/config.hpp"
#include "test_util.hpp"
#include "world.hpp"

namespace pims::authz {
namespace {

using namespace std::chrono_literals;
using testing_world::kPepper;
using testing_world::World;

class BothSchemes : public ::testing::TestWithParam<Scheme> {};

INSTANTIATE_TEST_SUITE_P(Schemes, BothSchemes,
                         ::testing::Values(Scheme::kSecretSharing, Scheme::kThresholdPre),
                         [](const auto& info) { return std::string(ledger::scheme_name(info.param)); });

TEST(LatencyModel, Parse) {
  EXPECT_EQ(LatencyModel::parse("none"), LatencyModel::none());
  EXPECT_EQ(LatencyModel::parse("fixed:250"), LatencyModel::fixed(250us));
  EXPECT_EQ(LatencyModel::parse("uniform:10:20"), LatencyModel::uniform(10us, 20us));
  EXPECT_EQ(LatencyModel::parse("uniform:10:20").to_string(), "uniform:10:20");
  EXPECT_PIMS_ERROR(LatencyModel::parse("fixed:-1"), ErrorCode::kConfigInvalid);
  EXPECT_PIMS_ERROR(LatencyModel::parse("uniform:20:10"), ErrorCode::kConfigInvalid);
  EXPECT_PIMS_ERROR(LatencyModel::parse("gauss"), ErrorCode::kConfigInvalid);
  auto rng = Rng::from_seed(1);
  auto m = LatencyModel::uniform(10us, 20us);
  for (int i = 0; i < 200; ++i) {
    auto d = m.sample(rng);
    ASSERT_GE(d, 10us);
    ASSERT_LE(d, 20us);
  }
}

TEST(Config, ParseAndValidate) {
  auto cfg = parse_network_config(
      R"({"nodes": 25, "threshold": 2, "latency": "fixed:100", "timeout_ms": 2000, "seed": 9})");
  EXPECT_EQ(cfg.nodes, 25u);
  EXPECT_EQ(cfg.threshold, 2u);
  EXPECT_EQ(cfg.latency, LatencyModel::fixed(100us));
  EXPECT_EQ(cfg.timeout, 2000ms);
  EXPECT_EQ(cfg.seed, 9u);
  EXPECT_EQ(parse_network_config(to_json(cfg)).nodes, 25u);

  auto minimal = parse_network_config(R"({"nodes": 3, "threshold": 3})");
  EXPECT_EQ(minimal.timeout, 5000ms);
  EXPECT_EQ(minimal.group, "ristretto255");

  EXPECT_PIMS_ERROR(parse_network_config(R"({"nodes": 3, "threshold": 4})"),
                    ErrorCode::kConfigInvalid);
  EXPECT_PIMS_ERROR(parse_network_config(R"({"nodes": 3})"), ErrorCode::kConfigInvalid);
  EXPECT_PIMS_ERROR(parse_network_config(R"({"nodes": 3, "threshold": 1, "x": 1})"),
                    ErrorCode::kConfigInvalid);
  EXPECT_PIMS_ERROR(parse_network_config("not json"), ErrorCode::kConfigInvalid);
  EXPECT_PIMS_ERROR(load_network_config("/nonexistent/pims.json"), ErrorCode::kConfigInvalid);
}

TEST(ReplayCache, EvictsLeastRecentlyUsed) {
  ReplayCache cache(2);
  Hash256 a{}, b{}, c{};
  a[0] = 1;
  b[0] = 2;
  c[0] = 3;
  EXPECT_TRUE(cache.insert(a));
  EXPECT_TRUE(cache.insert(b));
  EXPECT_FALSE(cache.insert(a));  // touch a
  EXPECT_TRUE(cache.insert(c));   // evicts b
  EXPECT_TRUE(cache.contains(a));
  EXPECT_FALSE(cache.contains(b));
  EXPECT_EQ(cache.size(), 2u);
  EXPECT_EQ(AuthNode::kDefaultReplayCapacity, 65536u);
}

TEST(Frames, RoundTripAndRejectMalformed) {
  auto body = to_bytes("payload");
  auto f = encode_frame(FrameTag::kAccessRequest, body);
  EXPECT_EQ(to_hex(f), "03" "00000007" + to_hex(body));
  auto d = decode_frame(f);
  EXPECT_EQ(d.tag, FrameTag::kAccessRequest);
  EXPECT_EQ(d.body, body);
  auto trailing = f;
  trailing.push_back(0);
  EXPECT_PIMS_ERROR(decode_frame(trailing), ErrorCode::kDecodeError);
  auto bad_tag = f;
  bad_tag[0] = 9;
  EXPECT_PIMS_ERROR(decode_frame(bad_tag), ErrorCode::kDecodeError);
  f.pop_back();
  EXPECT_PIMS_ERROR(decode_frame(f), ErrorCode::kDecodeError);
}

TEST_P(BothSchemes, MessagesRoundTrip) {
  World w(3);
  auto consumer = w.make_consumer("c");
  auto id = w.share(to_bytes("hello"), GetParam(), 2, consumer);
  const auto& g = *w.group;

  const auto& env = w.owner.envelope(id);
  EXPECT_EQ(deserialize_envelope(g, serialize(g, env)), env);

  auto req = make_access_request(g, consumer.key(), id, w.rng);
  EXPECT_EQ(deserialize_request(g, serialize(g, req)), req);

  auto resp = w.network.node(1).handle_request(req);
  ASSERT_TRUE(resp);
  EXPECT_EQ(deserialize_response(g, serialize(g, *resp)), *resp);
  NodeResponse denial{2, Denial{DenialReason::kNotInAcl}, std::nullopt};
  EXPECT_EQ(deserialize_response(g, serialize(g, denial)), denial);

  auto keys = w.network.node_keys();
  auto msgs = GetParam() == Scheme::kSecretSharing
                  ? w.owner.prepare_shares(id, keys)
                  : w.owner.prepare_kfrags(id, consumer.key().public_key(), keys);
  auto rt = deserialize_provision(g, serialize(g, msgs[0]));
  EXPECT_EQ(serialize(g, rt), serialize(g, msgs[0]));

  ProvisionAck ack{4, AckStatus::kMisrouted};
  EXPECT_EQ(deserialize_ack(serialize(ack)), ack);
}

TEST_P(BothSchemes, EnvelopeVerification) {
  World w(3);
  auto consumer = w.make_consumer("c");
  auto id = w.share(to_bytes("x"), GetParam(), 2, consumer);
  const auto& g = *w.group;
  auto record = w.ledger.record(id);
  const auto env = w.owner.envelope(id);
  EXPECT_TRUE(verify_envelope(g, env, record));

  auto bad = env;
  bad.capsule.s = g.scalars().add(bad.capsule.s, g.scalars().one());
  EXPECT_FALSE(verify_envelope(g, bad, record));

  bad = env;
  bad.kem_pk = g.generator();
  EXPECT_FALSE(verify_envelope(g, bad, record));

  // Re-signed by a stranger: valid signature, wrong owner.
  auto stranger = crypto::generate_keypair(w.group, w.rng);
  bad = env;
  bad.owner_account_pk = stranger.public_key();
  bad.signature = crypto::sign(g, stranger.secret_key(), envelope_signing_payload(g, bad), w.rng);
  EXPECT_FALSE(verify_envelope(g, bad, record));

  bad = env;
  bad.scheme = GetParam() == Scheme::kSecretSharing ? Scheme::kThresholdPre
                                                     : Scheme::kSecretSharing;
  EXPECT_FALSE(verify_envelope(g, bad, record));
}

TEST_P(BothSchemes, ProvisionTwentyFiveNodes) {
  World w(25);
  auto consumer = w.make_consumer("c");
  auto id = w.owner.publish(to_bytes("data"), GetParam(), {2, 25});
  auto keys = w.network.node_keys();
  auto msgs = GetParam() == Scheme::kSecretSharing
                  ? w.owner.prepare_shares(id, keys)
                  : w.owner.prepare_kfrags(id, consumer.key().public_key(), keys);
  auto acks = w.network.provision(msgs);
  ASSERT_EQ(acks.size(), 25u);
  for (std::uint32_t i = 0; i < 25; ++i) {
    EXPECT_EQ(acks[i].node_id, i + 1);
    EXPECT_EQ(acks[i].status, AckStatus::kOk);
    EXPECT_EQ(w.network.node(i + 1).vault_size(), 1u);
  }
}

TEST_P(BothSchemes, ProvisionCountMismatch) {
  World w(4);
  auto consumer = w.make_consumer("c");
  auto id = w.owner.publish(to_bytes("data"), GetParam(), {2, 4});
  auto keys = w.network.node_keys();
  auto msgs = GetParam() == Scheme::kSecretSharing
                  ? w.owner.prepare_shares(id, keys)
                  : w.owner.prepare_kfrags(id, consumer.key().public_key(), keys);
  msgs.pop_back();
  EXPECT_PIMS_ERROR(w.network.provision(msgs), ErrorCode::kCountMismatch);
  keys.pop_back();
  EXPECT_PIMS_ERROR(w.owner.prepare_shares(id, keys),
                    GetParam() == Scheme::kSecretSharing ? ErrorCode::kCountMismatch
                                                         : ErrorCode::kInvalidParams);
}

TEST_P(BothSchemes, ProvisionByNonOwnerIsUnauthorizedEverywhere) {
  World w(5);
  auto consumer = w.make_consumer("c");
  auto id = w.owner.publish(to_bytes("data"), GetParam(), {2, 5});
  // A second owner instance with its own account replays the material under
  // its own signature.
  DataOwner impostor(w.group, w.ledger, w.store, kPepper, w.rng.fork("impostor"));
  auto keys = w.network.node_keys();
  auto msgs = GetParam() == Scheme::kSecretSharing
                  ? w.owner.prepare_shares(id, keys)
                  : w.owner.prepare_kfrags(id, consumer.key().public_key(), keys);
  const auto& g = *w.group;
  for (auto& m : msgs) {
    m.owner_account_pk = impostor.account().public_key();
    m.signature = crypto::sign(g, impostor.account().secret_key(),
                               provision_signing_payload(g, m), w.rng);
  }
  for (const auto& ack : w.network.provision(msgs)) {
    EXPECT_EQ(ack.status, AckStatus::kUnauthorized);
  }
  for (std::uint32_t i = 1; i <= 5; ++i) EXPECT_EQ(w.network.node(i).vault_size(), 0u);
}

TEST_P(BothSchemes, ProvisionRejectsForgeriesAndMisrouting) {
  World w(3);
  auto consumer = w.make_consumer("c");
  auto id = w.owner.publish(to_bytes("data"), GetParam(), {2, 3});
  auto keys = w.network.node_keys();
  auto msgs = GetParam() == Scheme::kSecretSharing
                  ? w.owner.prepare_shares(id, keys)
                  : w.owner.prepare_kfrags(id, consumer.key().public_key(), keys);
  auto& node1 = w.network.node(1);

  EXPECT_EQ(node1.provision(msgs[1]).status, AckStatus::kMisrouted);

  auto forged = msgs[0];
  forged.consumer_pk = crypto::generate_keypair(w.group, w.rng).public_key();
  EXPECT_EQ(node1.provision(forged).status, AckStatus::kBadSignature);

  // Node 2's material relabeled for node 1 and correctly re-signed by the
  // owner still fails: it is sealed to node 2's key.
  auto swapped = msgs[1];
  swapped.node_id = 1;
  const auto& g = *w.group;
  swapped.signature = crypto::sign(g, w.owner.account().secret_key(),
                                   provision_signing_payload(g, swapped), w.rng);
  EXPECT_EQ(node1.provision(swapped).status, AckStatus::kInvalidMaterial);

  auto ghost = msgs[0];
  ghost.record_id.bytes.fill(0x5a);
  ghost.signature = crypto::sign(g, w.owner.account().secret_key(),
                                 provision_signing_payload(g, ghost), w.rng);
  EXPECT_EQ(node1.provision(ghost).status, AckStatus::kUnknownRecord);

  EXPECT_EQ(node1.vault_size(), 0u);
  EXPECT_EQ(node1.provision(msgs[0]).status, AckStatus::kOk);
  EXPECT_EQ(node1.vault_size(), 1u);
}

TEST_P(BothSchemes, NodeRequestChecks) {
  World w(3);
  auto consumer = w.make_consumer("c");
  auto outsider = w.make_consumer("outsider");
  auto id = w.share(to_bytes("data"), GetParam(), 2, consumer);
  const auto& g = *w.group;
  auto& node = w.network.node(2);

  auto req = make_access_request(g, consumer.key(), id, w.rng);
  auto resp = node.handle_request(req);
  ASSERT_TRUE(resp);
  EXPECT_FALSE(std::holds_alternative<Denial>(resp->payload));
  EXPECT_TRUE(resp->envelope.has_value());

  auto reason = [&](const AccessRequest& r) {
    auto out = node.handle_request(r);
    EXPECT_TRUE(out.has_value());
    EXPECT_FALSE(out->envelope.has_value());
    return std::get<Denial>(out->payload).reason;
  };
  EXPECT_EQ(reason(req), DenialReason::kBadSignature);  // replay

  auto forged = make_access_request(g, consumer.key(), id, w.rng);
  forged.nonce[0] ^= 1;
  EXPECT_EQ(reason(forged), DenialReason::kBadSignature);

  EXPECT_EQ(reason(make_access_request(g, outsider.key(), id, w.rng)),
            DenialReason::kNotInAcl);

  RecordId ghost;
  ghost.bytes.fill(1);
  EXPECT_EQ(reason(make_access_request(g, consumer.key(), ghost, w.rng)),
            DenialReason::kUnknownRecord);

  auto unprovisioned = w.owner.publish(to_bytes("other"), GetParam(), {2, 3});
  w.owner.grant(unprovisioned, consumer.address());
  EXPECT_EQ(reason(make_access_request(g, consumer.key(), unprovisioned, w.rng)),
            DenialReason::kNotProvisioned);

  node.set_behavior(NodeBehavior::kOffline);
  EXPECT_FALSE(node.handle_request(make_access_request(g, consumer.key(), id, w.rng)));
}

TEST(Node, KFragsAreHeldPerConsumer) {
  World w(3);
  auto alice = w.make_consumer("alice");
  auto bob = w.make_consumer("bob");
  auto id = w.share(to_bytes("data"), Scheme::kThresholdPre, 2, alice);
  w.owner.grant(id, bob.address());
  const auto& g = *w.group;
  auto denied = w.network.node(1).handle_request(make_access_request(g, bob.key(), id, w.rng));
  EXPECT_EQ(std::get<Denial>(denied->payload).reason, DenialReason::kNotProvisioned);
  w.provision_for(id, Scheme::kThresholdPre, bob);
  EXPECT_EQ(w.network.node(1).vault_size(), 2u);
  EXPECT_EQ(bob.request_access(w.network, id), to_bytes("data"));
  EXPECT_EQ(alice.request_access(w.network, id), to_bytes("data"));
}

TEST_P(BothSchemes, HappyPathTwentyFiveNodesThirtyBytes) {
  World w(25);
  auto consumer = w.make_consumer("c");
  auto plaintext = w.rng.bytes(30);
  auto id = w.share(plaintext, GetParam(), 2, consumer);
  AccessTrace trace;
  EXPECT_EQ(consumer.request_access(w.network, id, &trace), plaintext);
  EXPECT_EQ(trace.accepted_nodes.size(), 2u);
  EXPECT_TRUE(trace.rejected_nodes.empty());
  EXPECT_GT(trace.client_cpu.count(), 0);
  EXPECT_GE(trace.wall, trace.client_cpu / 2);
}

TEST_P(BothSchemes, OnlyThresholdMinusOneOnline) {
  World w(5);
  auto consumer = w.make_consumer("c");
  auto id = w.share(to_bytes("secret"), GetParam(), 3, consumer);
  for (std::uint32_t i = 3; i <= 5; ++i) w.network.node(i).set_behavior(NodeBehavior::kOffline);
  AccessTrace trace;
  auto start = Clock::now();
  EXPECT_PIMS_ERROR(consumer.request_access(w.network, id, &trace, {200ms}),
                    ErrorCode::kInsufficientResponses);
  EXPECT_GE(Clock::now() - start, 200ms);
  EXPECT_EQ(trace.accepted_nodes.size(), 2u);
  w.network.node(3).set_behavior(NodeBehavior::kHonest);
  EXPECT_EQ(consumer.request_access(w.network, id, nullptr, {2000ms}), to_bytes("secret"));
}

TEST_P(BothSchemes, CorruptNodeIsDetectedAndSkipped) {
  World w(5);
  auto consumer = w.make_consumer("c");
  auto id = w.share(to_bytes("payload"), GetParam(), 2, consumer);
  w.network.node(1).set_behavior(NodeBehavior::kCorrupt);
  // Only the corrupt node and two honest ones answer.
  for (std::uint32_t i = 4; i <= 5; ++i) w.network.node(i).set_behavior(NodeBehavior::kOffline);
  AccessTrace trace;
  EXPECT_EQ(consumer.request_access(w.network, id, &trace, {2000ms}), to_bytes("payload"));
  EXPECT_EQ(trace.accepted_nodes.size(), 2u);
  EXPECT_EQ(std::count(trace.accepted_nodes.begin(), trace.accepted_nodes.end(), 1u), 0);
  EXPECT_LE(trace.rejected_nodes.size(), 1u);

  const auto& g = *w.group;
  std::vector<NodeResponse> responses;
  for (std::uint32_t i = 1; i <= 3; ++i) {
    responses.push_back(
        *w.network.node(i).handle_request(make_access_request(g, consumer.key(), id, w.rng)));
  }
  AccessTrace direct;
  EXPECT_EQ(consumer.open_from_responses(w.ledger.record(id), responses, &direct),
            to_bytes("payload"));
  EXPECT_EQ(direct.rejected_nodes, std::vector<std::uint32_t>{1});
}

TEST_P(BothSchemes, OutsiderOnlyGetsDenials) {
  World w(4);
  auto consumer = w.make_consumer("c");
  auto outsider = w.make_consumer("outsider");
  auto id = w.share(to_bytes("payload"), GetParam(), 2, consumer);
  AccessTrace trace;
  EXPECT_PIMS_ERROR(outsider.request_access(w.network, id, &trace, {1000ms}),
                    ErrorCode::kInsufficientResponses);
  EXPECT_EQ(trace.denials, 4u);
  EXPECT_TRUE(trace.accepted_nodes.empty());
  for (auto r : trace.denial_reasons) EXPECT_EQ(r, DenialReason::kNotInAcl);
}

TEST_P(BothSchemes, RevocationStopsNewReleases) {
  World w(4);
  auto consumer = w.make_consumer("c");
  auto id = w.share(to_bytes("payload"), GetParam(), 2, consumer);
  EXPECT_EQ(consumer.request_access(w.network, id), to_bytes("payload"));
  w.owner.revoke(id, consumer.address());
  AccessTrace trace;
  EXPECT_PIMS_ERROR(consumer.request_access(w.network, id, &trace, {1000ms}),
                    ErrorCode::kInsufficientResponses);
  EXPECT_EQ(trace.denials, 4u);
}

TEST_P(BothSchemes, ResponseOrderDoesNotMatter) {
  World w(5);
  auto consumer = w.make_consumer("c");
  auto plaintext = w.rng.bytes(100);
  auto id = w.share(plaintext, GetParam(), 3, consumer);
  w.network.node(2).set_behavior(NodeBehavior::kCorrupt);
  const auto& g = *w.group;
  std::vector<NodeResponse> responses;
  for (std::uint32_t i = 1; i <= 5; ++i) {
    auto r = w.network.node(i).handle_request(make_access_request(g, consumer.key(), id, w.rng));
    ASSERT_TRUE(r);
    responses.push_back(*r);
  }
  auto record = w.ledger.record(id);
  std::vector<std::size_t> order{0, 1, 2, 3, 4};
  std::size_t permutations = 0;
  do {
    std::vector<NodeResponse> arranged;
    for (auto i : order) arranged.push_back(responses[i]);
    ASSERT_EQ(consumer.open_from_responses(record, arranged), plaintext);
    ++permutations;
  } while (std::next_permutation(order.begin(), order.end()));
  EXPECT_EQ(permutations, 120u);
}

TEST_P(BothSchemes, StoreTamperingIsCaught) {
  World w(3);
  auto consumer = w.make_consumer("c");
  auto id = w.share(to_bytes("payload"), GetParam(), 2, consumer);
  auto record = w.ledger.record(id);
  w.store.backend().write(record.storage_ref, to_bytes("garbage"));
  EXPECT_PIMS_ERROR(consumer.request_access(w.network, id), ErrorCode::kIntegrityMismatch);

  World w2(3);
  auto c2 = w2.make_consumer("c");
  auto id2 = w2.share(to_bytes("payload"), GetParam(), 2, c2);
  DataConsumer c2_wrong(w2.group, w2.ledger, w2.store, to_bytes("other"), c2.key(),
                        Rng::from_seed(6));
  EXPECT_PIMS_ERROR(c2_wrong.request_access(w2.network, id2), ErrorCode::kIntegrityMismatch);
}

TEST(Client, UnknownRecord) {
  World w(2);
  auto consumer = w.make_consumer("c");
  RecordId ghost;
  EXPECT_PIMS_ERROR(consumer.request_access(w.network, ghost), ErrorCode::kUnknownRecord);
}

TEST(Client, SecretSharingReSplitInvalidatesOldMixes) {
  World w(4);
  auto consumer = w.make_consumer("c");
  auto id = w.share(to_bytes("payload"), Scheme::kSecretSharing, 2, consumer);
  // Re-provision only node 1 with a fresh split: its share belongs to a new
  // commitment set and cannot combine with the others.
  auto keys = w.network.node_keys();
  auto fresh = w.owner.prepare_shares(id, keys);
  EXPECT_EQ(w.network.node(1).provision(fresh[0]).status, AckStatus::kOk);
  EXPECT_EQ(consumer.request_access(w.network, id), to_bytes("payload"));
}

TEST(Network, LatencyIsInjectedBothWays) {
  NetworkOptions net;
  net.latency = LatencyModel::fixed(20ms);
  World w(3, 1, net);
  auto consumer = w.make_consumer("c");
  auto id = w.share(to_bytes("x"), Scheme::kThresholdPre, 1, consumer);
  AccessTrace trace;
  consumer.request_access(w.network, id, &trace);
  EXPECT_GE(trace.wall, 40ms);
}

TEST(Network, ServiceSamplesCoverEveryRequest) {
  World w(4);
  auto consumer = w.make_consumer("c");
  auto id = w.share(to_bytes("x"), Scheme::kThresholdPre, 2, consumer);
  w.network.take_service_samples();
  consumer.request_access(w.network, id);
  w.network.quiesce();
  auto samples = w.network.take_service_samples();
  ASSERT_EQ(samples.size(), 4u);
  for (const auto& s : samples) {
    EXPECT_EQ(s.tag, FrameTag::kAccessRequest);
    EXPECT_GT(s.cpu.count(), 0);
  }
}

std::vector<TranscriptEntry> run_transcript(std::uint64_t seed) {
  NetworkOptions net;
  net.record_transcript = true;
  World w(5, seed, net);
  auto consumer = w.make_consumer("c");
  for (auto scheme : {Scheme::kSecretSharing, Scheme::kThresholdPre}) {
    auto id = w.share(to_bytes("same workload"), scheme, 2, consumer);
    consumer.request_access(w.network, id);
  }
  w.network.quiesce();
  return w.network.transcript();
}

TEST(Network, SeededRunsProduceIdenticalTranscripts) {
  auto a = run_transcript(77);
  auto b = run_transcript(77);
  ASSERT_FALSE(a.empty());
  EXPECT_EQ(a, b);
  EXPECT_NE(a, run_transcript(78));
}

}  // namespace
}  // namespace pims::authz
