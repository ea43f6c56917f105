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
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "pims/authz/node.hpp"

namespace pims::authz {

using Clock = std::chrono::steady_clock;

// One-way delay applied to every message on every link.
struct LatencyModel {
  enum class Kind { kNone, kFixed, kUniform };

  Kind kind = Kind::kNone;
  std::chrono::microseconds min{0};
  std::chrono::microseconds max{0};

  static LatencyModel none() { return {}; }
  static LatencyModel fixed(std::chrono::microseconds d) { return {Kind::kFixed, d, d}; }
  static LatencyModel uniform(std::chrono::microseconds lo, std::chrono::microseconds hi);

  // "none", "fixed:<us>" or "uniform:<min_us>:<max_us>".
  // Throws Error(kConfigInvalid) for anything else.
  static LatencyModel parse(std::string_view text);
  std::string to_string() const;

  std::chrono::microseconds sample(Rng& rng) const;

  friend bool operator==(const LatencyModel&, const LatencyModel&) = default;
};

struct NetworkOptions {
  LatencyModel latency;
  // Fixes node identities and every node-side random choice.
  std::optional<std::uint64_t> seed;
  std::size_t replay_capacity = AuthNode::kDefaultReplayCapacity;
  bool record_transcript = false;
};

// Replies addressed to one caller. A reply becomes visible once its
// simulated return-path delay has elapsed.
class ResponseQueue {
 public:
  void push(Bytes frame, Clock::time_point visible_at);
  // Next visible reply, or nullopt once the deadline passes with none.
  std::optional<Bytes> pop_until(Clock::time_point deadline);

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<std::pair<Clock::time_point, Bytes>> items_;  // ordered by visibility
};

struct TranscriptEntry {
  std::uint32_t node_id = 0;
  bool inbound = true;
  Bytes frame;

  friend bool operator==(const TranscriptEntry&, const TranscriptEntry&) = default;
};

// CPU time a node thread spent on one inbound frame.
struct ServiceSample {
  std::uint32_t node_id = 0;
  FrameTag tag = FrameTag::kAccessRequest;
  std::chrono::nanoseconds cpu{0};
};

// n AuthNodes (ids 1..n), each on its own thread with a mailbox. All
// traffic crosses the mailboxes as encoded frames.
class Network {
 public:
  Network(crypto::GroupParams group, const ledger::Ledger& ledger, std::uint32_t n,
          NetworkOptions options = {});
  ~Network();

  Network(const Network&) = delete;
  Network& operator=(const Network&) = delete;

  std::uint32_t size() const { return static_cast<std::uint32_t>(actors_.size()); }
  const crypto::GroupParams& group() const { return group_; }
  const NetworkOptions& options() const { return options_; }

  // 1-based.
  AuthNode& node(std::uint32_t id);
  const AuthNode& node(std::uint32_t id) const;
  // Element i is node i+1's identity key.
  std::vector<Element> node_keys() const;

  // msgs[i] goes to node i+1. Blocks for every ack; acks come back in node
  // order. Throws Error(kCountMismatch) unless there is exactly one message
  // per node.
  std::vector<ProvisionAck> provision(std::span<const ProvisionMessage> msgs);

  // Posts the request to every node and returns the queue its replies
  // arrive on.
  std::shared_ptr<ResponseQueue> broadcast(const AccessRequest& req);
  // Same, restricted to the given node ids.
  std::shared_ptr<ResponseQueue> send(std::span<const std::uint32_t> node_ids,
                                      const AccessRequest& req);

  // Waits until every mailbox is drained and every node idle.
  void quiesce();

  // Per node in id order, each node's frames in processing order.
  std::vector<TranscriptEntry> transcript() const;
  void clear_transcript();

  std::vector<ServiceSample> take_service_samples();

 private:
  struct Job {
    Clock::time_point deliver_at;
    Bytes frame;
    std::shared_ptr<ResponseQueue> reply;
  };

  struct Actor {
    explicit Actor(Rng rng) : link_rng(std::move(rng)) {}

    std::unique_ptr<AuthNode> node;
    Rng link_rng;
    std::mutex mu;
    std::condition_variable cv;
    std::deque<Job> mailbox;
    bool busy = false;
    bool stopping = false;
    std::vector<TranscriptEntry> transcript;
    std::vector<ServiceSample> samples;
    std::thread thread;
  };

  void post(Actor& actor, Bytes frame, std::shared_ptr<ResponseQueue> reply);
  void run(Actor& actor);

  crypto::GroupParams group_;
  NetworkOptions options_;
  std::vector<std::unique_ptr<Actor>> actors_;
  Rng rng_;
  std::mutex rng_mu_;
};

}  // namespace pims::authz
