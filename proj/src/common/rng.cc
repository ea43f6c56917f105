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

#include "pims/common/rng.hpp"

#include <sodium.h>

#include <stdexcept>

#include "pims/common/hash.hpp"

namespace pims {

namespace {

void ensure_sodium() {
  static const bool ready = [] {
    if (sodium_init() < 0) throw std::runtime_error("libsodium init failed");
    return true;
  }();
  (void)ready;
}

}  // namespace

Rng Rng::system() {
  ensure_sodium();
  return Rng(false, {});
}

Rng Rng::from_seed(std::uint64_t seed) {
  std::uint8_t b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<std::uint8_t>(seed >> (56 - 8 * i));
  return from_seed(ByteView(b, 8));
}

Rng Rng::from_seed(ByteView seed) {
  ensure_sodium();
  return Rng(true, tagged_sha256("pims/rng/seed", {seed}));
}

Rng Rng::from_optional_seed(std::optional<ByteView> seed) {
  return seed ? from_seed(*seed) : system();
}

void Rng::fill(std::span<std::uint8_t> out) {
  if (out.empty()) return;
  if (!seeded_) {
    randombytes_buf(out.data(), out.size());
    return;
  }
  // One fresh ChaCha20 nonce per call keeps the stream position implicit.
  std::uint8_t nonce[crypto_stream_chacha20_NONCEBYTES];
  for (int i = 0; i < 8; ++i) {
    nonce[i] = static_cast<std::uint8_t>(counter_ >> (56 - 8 * i));
  }
  ++counter_;
  crypto_stream_chacha20(out.data(), out.size(), nonce, key_.data());
}

Bytes Rng::bytes(std::size_t n) {
  Bytes out(n);
  fill(out);
  return out;
}

std::uint64_t Rng::next_u64() {
  std::uint8_t b[8];
  fill(b);
  std::uint64_t v = 0;
  for (auto x : b) v = (v << 8) | x;
  return v;
}

std::uint64_t Rng::uniform(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::uniform bound must be > 0");
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
  for (;;) {
    auto v = next_u64();
    if (v < limit) return v % bound;
  }
}

Rng Rng::fork(std::string_view label) {
  if (!seeded_) return system();
  std::uint8_t ctr[8];
  for (int i = 0; i < 8; ++i) ctr[i] = static_cast<std::uint8_t>(counter_ >> (56 - 8 * i));
  ++counter_;
  return Rng(true, tagged_sha256("pims/rng/fork", {key_, ctr, as_view(label)}));
}

}  // namespace pims
