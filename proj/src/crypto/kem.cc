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

#include "pims/crypto/kem.hpp"

#include "pims/common/codec.hpp"
#include "pims/common/error.hpp"
#include "pims/common/hash.hpp"
#include "pims/crypto/keys.hpp"

namespace pims::crypto {

Scalar capsule_challenge(const Group& group, const Element& e, const Element& v) {
  return group.scalars().hash("pims/capsule/challenge", {e.bytes(), v.bytes()});
}

bool verify_capsule(const Group& group, const Capsule& c) {
  if (!group.is_valid(c.e) || !group.is_valid(c.v) || !group.scalars().contains(c.s)) {
    return false;
  }
  auto h = capsule_challenge(group, c.e, c.v);
  return group.mul_base(c.s) == group.add(c.v, group.mul(c.e, h));
}

SymmetricKey derive_key(const Group& group, const Element& shared) {
  return SymmetricKey(
      tagged_sha256("pims/kem/kdf", {as_view(group.id()), shared.bytes()}));
}

Encapsulation kem_encapsulate(const Group& group, const Element& pk, Rng& rng) {
  if (!is_valid_public_key(group, pk)) {
    throw Error(ErrorCode::kInvalidKey, "KEM public key is not a valid group element");
  }
  const auto& f = group.scalars();
  auto r = f.random_nonzero(rng);
  auto u = f.random_nonzero(rng);
  Capsule c{group.mul_base(r), group.mul_base(u), Scalar()};
  c.s = f.add(u, f.mul(r, capsule_challenge(group, c.e, c.v)));
  auto shared = group.mul(pk, f.add(r, u));
  return {derive_key(group, shared), std::move(c)};
}

SymmetricKey kem_decapsulate(const Group& group, const Scalar& sk, const Capsule& capsule) {
  if (!verify_capsule(group, capsule)) {
    throw Error(ErrorCode::kCapsuleCheckFailure, "capsule self-check failed");
  }
  return derive_key(group, group.mul(group.add(capsule.e, capsule.v), sk));
}

Bytes serialize(const Group& group, const Capsule& capsule) {
  ByteWriter w;
  w.prefixed(capsule.e.bytes())
      .prefixed(capsule.v.bytes())
      .prefixed(group.scalars().encode(capsule.s));
  return std::move(w).take();
}

Capsule deserialize_capsule(const Group& group, ByteView bytes) {
  ByteReader r(bytes);
  Capsule c;
  c.e = group.decode(r.prefixed());
  c.v = group.decode(r.prefixed());
  c.s = group.scalars().decode(r.prefixed());
  r.expect_end();
  return c;
}

}  // namespace pims::crypto
