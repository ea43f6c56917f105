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

#include "pims/common/rng.hpp"
#include "pims/crypto/group.hpp"

namespace pims::crypto {

enum class KeyRole { kOwnerKem, kConsumer, kNodeIdentity };

// Invariant: public_key() == generator^secret_key(). Only constructible
// through from_secret() / generate_keypair(), which establish it.
class KeyPair {
 public:
  // Throws Error(kInvalidKey) unless sk is in [1, q-1].
  static KeyPair from_secret(const Group& group, Scalar sk, KeyRole role);

  const Scalar& secret_key() const { return sk_; }
  const Element& public_key() const { return pk_; }
  KeyRole role() const { return role_; }

  friend bool operator==(const KeyPair&, const KeyPair&) = default;

 private:
  KeyPair(Scalar sk, Element pk, KeyRole role)
      : sk_(std::move(sk)), pk_(std::move(pk)), role_(role) {}

  Scalar sk_;
  Element pk_;
  KeyRole role_;
};

// Throws Error(kInvalidParams) for null params.
KeyPair generate_keypair(const GroupParams& params, Rng& rng,
                         KeyRole role = KeyRole::kConsumer);
// Deterministic when a seed is supplied, OS randomness otherwise.
KeyPair generate_keypair(const GroupParams& params, std::optional<ByteView> seed,
                         KeyRole role = KeyRole::kConsumer);

// Rejects malformed encodings and the identity.
bool is_valid_public_key(const Group& group, const Element& pk);

}  // namespace pims::crypto
