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
#include "pims/crypto/group.hpp"

namespace pims::crypto {

// Schnorr signature (challenge, response), two fixed-width scalars.
class Signature {
 public:
  Signature() = default;
  explicit Signature(Bytes bytes) : bytes_(std::move(bytes)) {}

  const Bytes& bytes() const { return bytes_; }

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  Bytes bytes_;
};

// Nonce is hedged: derived from sk, the message and fresh rng output.
Signature sign(const Group& group, const Scalar& sk, ByteView message, Rng& rng);

// Never throws; malformed keys or signatures verify as false.
bool verify(const Group& group, const Element& pk, ByteView message, const Signature& sig);

}  // namespace pims::crypto
