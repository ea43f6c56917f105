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

#include "pims/crypto/sealed.hpp"

#include "pims/common/codec.hpp"

namespace pims::crypto {

namespace {

// The DEM associated data also binds the capsule, so a box cannot be
// re-wrapped under a different capsule for the same key.
Bytes box_aad(const Group& group, const Capsule& capsule, ByteView aad) {
  ByteWriter w;
  w.prefixed(serialize(group, capsule)).prefixed(aad);
  return std::move(w).take();
}

}  // namespace

SealedBox seal(const Group& group, const Element& recipient_pk, ByteView plaintext,
               ByteView aad, Rng& rng) {
  auto enc = kem_encapsulate(group, recipient_pk, rng);
  auto full_aad = box_aad(group, enc.capsule, aad);
  auto ct = dem_encrypt(enc.key, plaintext, ByteView(full_aad), rng);
  return {std::move(enc.capsule), std::move(ct)};
}

Bytes open(const Group& group, const Scalar& recipient_sk, const SealedBox& box,
           ByteView aad) {
  auto key = kem_decapsulate(group, recipient_sk, box.capsule);
  auto full_aad = box_aad(group, box.capsule, aad);
  return dem_decrypt(key, box.ciphertext, ByteView(full_aad));
}

Bytes serialize(const Group& group, const SealedBox& box) {
  ByteWriter w;
  w.prefixed(serialize(group, box.capsule)).prefixed(serialize(box.ciphertext));
  return std::move(w).take();
}

SealedBox deserialize_sealed(const Group& group, ByteView bytes) {
  ByteReader r(bytes);
  SealedBox box;
  box.capsule = deserialize_capsule(group, r.prefixed());
  box.ciphertext = deserialize_dem(r.prefixed());
  r.expect_end();
  return box;
}

}  // namespace pims::crypto
