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

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>

#include "pims/common/bytes.hpp"
#include "pims/common/hash.hpp"
#include "pims/common/rng.hpp"

namespace pims::store {

// SHA-256 of the stored ciphertext.
struct StorageRef {
  Hash256 bytes{};

  std::string hex() const { return to_hex(bytes); }
  friend auto operator<=>(const StorageRef&, const StorageRef&) = default;
};

// Salted and peppered integrity digest: value = SHA-256(pepper || salt || ciphertext).
// The salt is per record and lives on the ledger; the pepper is a
// deployment-wide secret that never leaves configuration.
struct Digest {
  static constexpr std::size_t kSaltSize = 16;

  FixedBytes<kSaltSize> salt{};
  Hash256 value{};

  friend bool operator==(const Digest&, const Digest&) = default;
};

StorageRef content_ref(ByteView ciphertext);

Digest make_digest(ByteView ciphertext, ByteView pepper, Rng& rng);
Digest make_digest_with_salt(ByteView ciphertext, ByteView pepper,
                             const FixedBytes<Digest::kSaltSize>& salt);
bool verify_integrity(ByteView ciphertext, const Digest& digest, ByteView pepper);

class BlobBackend {
 public:
  virtual ~BlobBackend() = default;
  virtual std::optional<Bytes> read(const StorageRef& ref) const = 0;
  // Throws Error(kStorageFailure) on I/O errors.
  virtual void write(const StorageRef& ref, ByteView data) = 0;
};

class MemoryBackend final : public BlobBackend {
 public:
  std::optional<Bytes> read(const StorageRef& ref) const override;
  void write(const StorageRef& ref, ByteView data) override;

 private:
  mutable std::shared_mutex mu_;
  std::map<StorageRef, Bytes> blobs_;
};

// <root>/<first two hex chars>/<full hex ref>, raw ciphertext content.
class FilesystemBackend final : public BlobBackend {
 public:
  explicit FilesystemBackend(std::filesystem::path root);

  std::optional<Bytes> read(const StorageRef& ref) const override;
  void write(const StorageRef& ref, ByteView data) override;

  std::filesystem::path path_for(const StorageRef& ref) const;

 private:
  std::filesystem::path root_;
};

// Content-addressed store for encrypted payloads. Never sees keys.
class BlobStore {
 public:
  explicit BlobStore(std::shared_ptr<BlobBackend> backend);

  // Idempotent for identical content.
  StorageRef put(ByteView ciphertext);
  // Throws Error(kNotFound) for an unknown ref and Error(kIntegrityMismatch)
  // if the backend returns bytes that no longer hash to the ref.
  Bytes get(const StorageRef& ref) const;
  bool contains(const StorageRef& ref) const;

  BlobBackend& backend() { return *backend_; }

 private:
  std::shared_ptr<BlobBackend> backend_;
};

}  // namespace pims::store
