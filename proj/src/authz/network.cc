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

#include "pims/authz/network.hpp"

#include <time.h>

#include <charconv>

#include "pims/common/error.hpp"

namespace pims::authz {

namespace {

std::chrono::nanoseconds thread_cpu_now() {
  timespec ts{};
  clock_gettime(CLOCK_THREAD_CPUTIME_ID, &ts);
  return std::chrono::seconds(ts.tv_sec) + std::chrono::nanoseconds(ts.tv_nsec);
}

std::int64_t parse_micros(std::string_view s) {
  std::int64_t v = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size() || v < 0) {
    throw Error(ErrorCode::kConfigInvalid, "bad latency value: " + std::string(s));
  }
  return v;
}

}  // namespace

LatencyModel LatencyModel::uniform(std::chrono::microseconds lo, std::chrono::microseconds hi) {
  if (lo > hi || lo.count() < 0) {
    throw Error(ErrorCode::kConfigInvalid, "uniform latency needs 0 <= min <= max");
  }
  return {Kind::kUniform, lo, hi};
}

LatencyModel LatencyModel::parse(std::string_view text) {
  using std::chrono::microseconds;
  if (text == "none") return none();
  if (text.starts_with("fixed:")) return fixed(microseconds(parse_micros(text.substr(6))));
  if (text.starts_with("uniform:")) {
    auto rest = text.substr(8);
    auto colon = rest.find(':');
    if (colon == std::string_view::npos) {
      throw Error(ErrorCode::kConfigInvalid, "uniform latency needs min and max");
    }
    return uniform(microseconds(parse_micros(rest.substr(0, colon))),
                   microseconds(parse_micros(rest.substr(colon + 1))));
  }
  throw Error(ErrorCode::kConfigInvalid, "unknown latency model: " + std::string(text));
}

std::string LatencyModel::to_string() const {
  switch (kind) {
    case Kind::kNone: return "none";
    case Kind::kFixed: return "fixed:" + std::to_string(min.count());
    case Kind::kUniform:
      return "uniform:" + std::to_string(min.count()) + ":" + std::to_string(max.count());
  }
  return "none";
}

std::chrono::microseconds LatencyModel::sample(Rng& rng) const {
  switch (kind) {
    case Kind::kNone: return std::chrono::microseconds(0);
    case Kind::kFixed: return min;
    case Kind::kUniform: {
      auto span = static_cast<std::uint64_t>((max - min).count()) + 1;
      return min + std::chrono::microseconds(rng.uniform(span));
    }
  }
  return std::chrono::microseconds(0);
}

void ResponseQueue::push(Bytes frame, Clock::time_point visible_at) {
  {
    std::lock_guard lock(mu_);
    auto it = items_.end();
    while (it != items_.begin() && std::prev(it)->first > visible_at) --it;
    items_.emplace(it, visible_at, std::move(frame));
  }
  cv_.notify_all();
}

std::optional<Bytes> ResponseQueue::pop_until(Clock::time_point deadline) {
  std::unique_lock lock(mu_);
  for (;;) {
    auto now = Clock::now();
    if (!items_.empty() && items_.front().first <= now) {
      auto frame = std::move(items_.front().second);
      items_.pop_front();
      return frame;
    }
    if (now >= deadline) return std::nullopt;
    auto wake = deadline;
    if (!items_.empty() && items_.front().first < wake) wake = items_.front().first;
    cv_.wait_until(lock, wake);
  }
}

Network::Network(crypto::GroupParams group, const ledger::Ledger& ledger, std::uint32_t n,
                 NetworkOptions options)
    : group_(std::move(group)),
      options_(std::move(options)),
      rng_(options_.seed ? Rng::from_seed(*options_.seed) : Rng::system()) {
  if (!group_) throw Error(ErrorCode::kInvalidParams, "null group");
  if (n == 0) throw Error(ErrorCode::kInvalidParams, "network needs at least one node");
  actors_.reserve(n);
  for (std::uint32_t id = 1; id <= n; ++id) {
    auto tag = std::to_string(id);
    auto key_rng = rng_.fork("identity/" + tag);
    auto identity = crypto::generate_keypair(group_, key_rng, crypto::KeyRole::kNodeIdentity);
    auto actor = std::make_unique<Actor>(rng_.fork("link/" + tag));
    actor->node = std::make_unique<AuthNode>(group_, id, std::move(identity), ledger,
                                             rng_.fork("node/" + tag),
                                             options_.replay_capacity);
    actors_.push_back(std::move(actor));
  }
  for (auto& a : actors_) a->thread = std::thread([this, p = a.get()] { run(*p); });
}

Network::~Network() {
  for (auto& a : actors_) {
    {
      std::lock_guard lock(a->mu);
      a->stopping = true;
    }
    a->cv.notify_all();
  }
  for (auto& a : actors_) {
    if (a->thread.joinable()) a->thread.join();
  }
}

AuthNode& Network::node(std::uint32_t id) {
  if (id == 0 || id > size()) throw Error(ErrorCode::kInvalidParams, "no such node");
  return *actors_[id - 1]->node;
}

const AuthNode& Network::node(std::uint32_t id) const {
  if (id == 0 || id > size()) throw Error(ErrorCode::kInvalidParams, "no such node");
  return *actors_[id - 1]->node;
}

std::vector<Element> Network::node_keys() const {
  std::vector<Element> keys;
  keys.reserve(actors_.size());
  for (const auto& a : actors_) keys.push_back(a->node->public_key());
  return keys;
}

void Network::post(Actor& actor, Bytes frame, std::shared_ptr<ResponseQueue> reply) {
  std::chrono::microseconds delay;
  {
    std::lock_guard lock(rng_mu_);
    delay = options_.latency.sample(rng_);
  }
  {
    std::lock_guard lock(actor.mu);
    actor.mailbox.push_back(Job{Clock::now() + delay, std::move(frame), std::move(reply)});
  }
  actor.cv.notify_all();
}

void Network::run(Actor& actor) {
  for (;;) {
    Job job;
    {
      std::unique_lock lock(actor.mu);
      actor.cv.wait(lock, [&] { return actor.stopping || !actor.mailbox.empty(); });
      if (actor.stopping) return;
      job = std::move(actor.mailbox.front());
      actor.mailbox.pop_front();
      actor.busy = true;
    }
    std::this_thread::sleep_until(job.deliver_at);

    auto tag = job.frame.empty() ? FrameTag::kAccessRequest : FrameTag{job.frame.front()};
    auto start = thread_cpu_now();
    auto out = actor.node->handle_frame(job.frame);
    auto cpu = thread_cpu_now() - start;
    auto back = options_.latency.sample(actor.link_rng);

    {
      std::lock_guard lock(actor.mu);
      actor.samples.push_back(ServiceSample{actor.node->id(), tag, cpu});
      if (options_.record_transcript) {
        actor.transcript.push_back({actor.node->id(), true, job.frame});
        if (out) actor.transcript.push_back({actor.node->id(), false, *out});
      }
    }
    if (out && job.reply) job.reply->push(std::move(*out), Clock::now() + back);
    {
      std::lock_guard lock(actor.mu);
      actor.busy = false;
    }
    actor.cv.notify_all();
  }
}

std::vector<ProvisionAck> Network::provision(std::span<const ProvisionMessage> msgs) {
  if (msgs.size() != actors_.size()) {
    throw Error(ErrorCode::kCountMismatch, std::to_string(msgs.size()) +
                                               " materials for " +
                                               std::to_string(actors_.size()) + " nodes");
  }
  auto queue = std::make_shared<ResponseQueue>();
  for (std::size_t i = 0; i < msgs.size(); ++i) {
    post(*actors_[i], encode_frame(FrameTag::kProvision, serialize(*group_, msgs[i])), queue);
  }
  std::vector<ProvisionAck> acks(actors_.size());
  std::vector<bool> seen(actors_.size(), false);
  for (std::size_t got = 0; got < actors_.size();) {
    // Provisioning always answers; the far deadline only guards against a
    // node thread that died.
    auto frame = queue->pop_until(Clock::now() + std::chrono::minutes(5));
    if (!frame) throw Error(ErrorCode::kInsufficientResponses, "provisioning stalled");
    auto decoded = decode_frame(*frame);
    auto ack = deserialize_ack(decoded.body);
    if (ack.node_id == 0 || ack.node_id > actors_.size() || seen[ack.node_id - 1]) continue;
    seen[ack.node_id - 1] = true;
    acks[ack.node_id - 1] = ack;
    ++got;
  }
  return acks;
}

std::shared_ptr<ResponseQueue> Network::broadcast(const AccessRequest& req) {
  std::vector<std::uint32_t> ids(actors_.size());
  for (std::uint32_t i = 0; i < ids.size(); ++i) ids[i] = i + 1;
  return send(ids, req);
}

std::shared_ptr<ResponseQueue> Network::send(std::span<const std::uint32_t> node_ids,
                                             const AccessRequest& req) {
  auto queue = std::make_shared<ResponseQueue>();
  auto frame = encode_frame(FrameTag::kAccessRequest, serialize(*group_, req));
  for (auto id : node_ids) {
    if (id == 0 || id > size()) throw Error(ErrorCode::kInvalidParams, "no such node");
    post(*actors_[id - 1], frame, queue);
  }
  return queue;
}

void Network::quiesce() {
  for (auto& a : actors_) {
    std::unique_lock lock(a->mu);
    a->cv.wait(lock, [&] { return a->mailbox.empty() && !a->busy; });
  }
}

std::vector<TranscriptEntry> Network::transcript() const {
  std::vector<TranscriptEntry> out;
  for (const auto& a : actors_) {
    std::lock_guard lock(a->mu);
    out.insert(out.end(), a->transcript.begin(), a->transcript.end());
  }
  return out;
}

void Network::clear_transcript() {
  for (auto& a : actors_) {
    std::lock_guard lock(a->mu);
    a->transcript.clear();
  }
}

std::vector<ServiceSample> Network::take_service_samples() {
  std::vector<ServiceSample> out;
  for (auto& a : actors_) {
    std::lock_guard lock(a->mu);
    out.insert(out.end(), a->samples.begin(), a->samples.end());
    a->samples.clear();
  }
  return out;
}

}  // namespace pims::authz
