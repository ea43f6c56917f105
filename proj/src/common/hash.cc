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

#include "pims/common/hash.hpp"

#include <sodium.h>

#include "pims/common/codec.hpp"

namespace pims {

namespace {

void absorb_prefixed(crypto_hash_sha256_state* st, ByteView part) {
  std::uint8_t len[4] = {
      static_cast<std::uint8_t>(part.size() >> 24),
      static_cast<std::uint8_t>(part.size() >> 16),
      static_cast<std::uint8_t>(part.size() >> 8),
      static_cast<std::uint8_t>(part.size())};
  crypto_hash_sha256_update(st, len, 4);
  crypto_hash_sha256_update(st, part.data(), part.size());
}

void absorb_prefixed(crypto_hash_sha512_state* st, ByteView part) {
  std::uint8_t len[4] = {
      static_cast<std::uint8_t>(part.size() >> 24),
      static_cast<std::uint8_t>(part.size() >> 16),
      static_cast<std::uint8_t>(part.size() >> 8),
      static_cast<std::uint8_t>(part.size())};
  crypto_hash_sha512_update(st, len, 4);
  crypto_hash_sha512_update(st, part.data(), part.size());
}

}  // namespace

Hash256 sha256(ByteView data) {
  Hash256 out;
  crypto_hash_sha256(out.data(), data.data(), data.size());
  return out;
}

Hash512 sha512(ByteView data) {
  Hash512 out;
  crypto_hash_sha512(out.data(), data.data(), data.size());
  return out;
}

Hash256 tagged_sha256(std::string_view label,
                      std::initializer_list<ByteView> parts) {
  crypto_hash_sha256_state st;
  crypto_hash_sha256_init(&st);
  absorb_prefixed(&st, as_view(label));
  for (auto p : parts) absorb_prefixed(&st, p);
  Hash256 out;
  crypto_hash_sha256_final(&st, out.data());
  return out;
}

Hash512 tagged_sha512(std::string_view label,
                      std::initializer_list<ByteView> parts) {
  crypto_hash_sha512_state st;
  crypto_hash_sha512_init(&st);
  absorb_prefixed(&st, as_view(label));
  for (auto p : parts) absorb_prefixed(&st, p);
  Hash512 out;
  crypto_hash_sha512_final(&st, out.data());
  return out;
}

}  // namespace pims
