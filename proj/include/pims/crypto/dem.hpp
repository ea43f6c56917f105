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

#include "pims/common/bytes.hpp"
#include "pims/common/rng.hpp"

namespace pims::crypto {

class SymmetricKey {
 public:
  static constexpr std::size_t kSize = 32;

  explicit SymmetricKey(FixedBytes<kSize> bytes) : bytes_(bytes) {}
  // Throws Error(kDecodeError) unless exactly 32 bytes.
  static SymmetricKey from_bytes(ByteView bytes);
  static SymmetricKey random(Rng& rng);

  const FixedBytes<kSize>& bytes() const { return bytes_; }

  friend bool operator==(const SymmetricKey&, const SymmetricKey&) = default;

 private:
  FixedBytes<kSize> bytes_;
};

// XChaCha20-Poly1305 output in detached form: body has the plaintext length.
struct DemCiphertext {
  static constexpr std::size_t kNonceSize = 24;
  static constexpr std::size_t kTagSize = 16;

  FixedBytes<kNonceSize> nonce{};
  Bytes body;
  FixedBytes<kTagSize> tag{};

  friend bool operator==(const DemCiphertext&, const DemCiphertext&) = default;
};

DemCiphertext dem_encrypt(const SymmetricKey& key, ByteView plaintext,
                          std::optional<ByteView> aad, Rng& rng);

// Throws Error(kAuthenticationFailure) on wrong key, wrong aad or tampering.
Bytes dem_decrypt(const SymmetricKey& key, const DemCiphertext& ct,
                  std::optional<ByteView> aad);

Bytes serialize(const DemCiphertext& ct);
DemCiphertext deserialize_dem(ByteView bytes);

}  // namespace pims::crypto
