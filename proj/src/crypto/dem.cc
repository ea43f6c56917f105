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

#include "pims/crypto/dem.hpp"

#include <sodium.h>

#include "pims/common/codec.hpp"
#include "pims/common/error.hpp"

namespace pims::crypto {

static_assert(DemCiphertext::kNonceSize == crypto_aead_xchacha20poly1305_ietf_NPUBBYTES);
static_assert(DemCiphertext::kTagSize == crypto_aead_xchacha20poly1305_ietf_ABYTES);
static_assert(SymmetricKey::kSize == crypto_aead_xchacha20poly1305_ietf_KEYBYTES);

SymmetricKey SymmetricKey::from_bytes(ByteView bytes) {
  return SymmetricKey(to_fixed<kSize>(bytes));
}

SymmetricKey SymmetricKey::random(Rng& rng) {
  FixedBytes<kSize> b;
  rng.fill(b);
  return SymmetricKey(b);
}

DemCiphertext dem_encrypt(const SymmetricKey& key, ByteView plaintext,
                          std::optional<ByteView> aad, Rng& rng) {
  DemCiphertext ct;
  rng.fill(ct.nonce);
  ct.body.resize(plaintext.size());
  unsigned long long tag_len = 0;
  const auto* ad = aad ? aad->data() : nullptr;
  const auto ad_len = aad ? aad->size() : 0;
  crypto_aead_xchacha20poly1305_ietf_encrypt_detached(
      ct.body.data(), ct.tag.data(), &tag_len, plaintext.data(), plaintext.size(), ad,
      ad_len, nullptr, ct.nonce.data(), key.bytes().data());
  return ct;
}

Bytes dem_decrypt(const SymmetricKey& key, const DemCiphertext& ct,
                  std::optional<ByteView> aad) {
  Bytes out(ct.body.size());
  const auto* ad = aad ? aad->data() : nullptr;
  const auto ad_len = aad ? aad->size() : 0;
  if (crypto_aead_xchacha20poly1305_ietf_decrypt_detached(
          out.data(), nullptr, ct.body.data(), ct.body.size(), ct.tag.data(), ad, ad_len,
          ct.nonce.data(), key.bytes().data()) != 0) {
    throw Error(ErrorCode::kAuthenticationFailure, "DEM tag mismatch");
  }
  return out;
}

Bytes serialize(const DemCiphertext& ct) {
  ByteWriter w;
  w.prefixed(ct.nonce).prefixed(ct.body).prefixed(ct.tag);
  return std::move(w).take();
}

DemCiphertext deserialize_dem(ByteView bytes) {
  ByteReader r(bytes);
  DemCiphertext ct;
  ct.nonce = to_fixed<DemCiphertext::kNonceSize>(r.prefixed());
  ct.body = r.prefixed();
  ct.tag = to_fixed<DemCiphertext::kTagSize>(r.prefixed());
  r.expect_end();
  return ct;
}

}  // namespace pims::crypto
