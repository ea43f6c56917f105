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

#include "pims/crypto/keys.hpp"

#include "pims/common/error.hpp"

namespace pims::crypto {

KeyPair KeyPair::from_secret(const Group& group, Scalar sk, KeyRole role) {
  if (sk.is_zero() || !group.scalars().contains(sk)) {
    throw Error(ErrorCode::kInvalidKey, "secret key outside [1, q-1]");
  }
  auto pk = group.mul_base(sk);
  return KeyPair(std::move(sk), std::move(pk), role);
}

KeyPair generate_keypair(const GroupParams& params, Rng& rng, KeyRole role) {
  if (!params) throw Error(ErrorCode::kInvalidParams, "null group parameters");
  return KeyPair::from_secret(*params, params->scalars().random_nonzero(rng), role);
}

KeyPair generate_keypair(const GroupParams& params, std::optional<ByteView> seed,
                         KeyRole role) {
  auto rng = Rng::from_optional_seed(seed);
  return generate_keypair(params, rng, role);
}

bool is_valid_public_key(const Group& group, const Element& pk) {
  return group.is_valid(pk) && pk != group.identity();
}

}  // namespace pims::crypto
