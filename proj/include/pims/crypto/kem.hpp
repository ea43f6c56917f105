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

#include "pims/common/rng.hpp"
#include "pims/crypto/dem.hpp"
#include "pims/crypto/group.hpp"

namespace pims::crypto {

// KEM output. Holds E = g^r, V = g^u and s = u + r * H(E, V), so anyone can
// check g^s == V * E^H(E, V). The same capsule is opened directly with the
// owner key, after Shamir reconstruction of that key, or through threshold
// re-encryption fragments.
struct Capsule {
  Element e;
  Element v;
  Scalar s;

  friend bool operator==(const Capsule&, const Capsule&) = default;
};

struct Encapsulation {
  SymmetricKey key;
  Capsule capsule;
};

// H(E, V) binding the two capsule points.
Scalar capsule_challenge(const Group& group, const Element& e, const Element& v);

bool verify_capsule(const Group& group, const Capsule& capsule);

// KDF over the shared group element.
SymmetricKey derive_key(const Group& group, const Element& shared);

// Throws Error(kInvalidKey) if pk is not a non-identity group element.
Encapsulation kem_encapsulate(const Group& group, const Element& pk, Rng& rng);

// Throws Error(kCapsuleCheckFailure) if the capsule fails its self-check.
// A wrong sk yields a different key; detection is left to the DEM.
SymmetricKey kem_decapsulate(const Group& group, const Scalar& sk, const Capsule& capsule);

Bytes serialize(const Group& group, const Capsule& capsule);
// Throws Error(kDecodeError) on malformed input. Does not run the self-check.
Capsule deserialize_capsule(const Group& group, ByteView bytes);

}  // namespace pims::crypto
