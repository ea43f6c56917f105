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

#include <optional>

#include "pims/crypto/dem.hpp"
#include "pims/crypto/kem.hpp"

namespace pims::crypto {

// Hybrid public-key encryption of a short message (KEM capsule + DEM body).
// Used to hand shares and key fragments to a single recipient.
struct SealedBox {
  Capsule capsule;
  DemCiphertext ciphertext;

  friend bool operator==(const SealedBox&, const SealedBox&) = default;
};

SealedBox seal(const Group& group, const Element& recipient_pk, ByteView plaintext,
               ByteView aad, Rng& rng);
Bytes open(const Group& group, const Scalar& recipient_sk, const SealedBox& box,
           ByteView aad);

Bytes serialize(const Group& group, const SealedBox& box);
SealedBox deserialize_sealed(const Group& group, ByteView bytes);

}  // namespace pims::crypto
