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

#include "pims/store/blob_store.hpp"

#include <fstream>
#include <iterator>
#include <mutex>
#include <system_error>

#include "pims/common/error.hpp"

namespace pims::store {

StorageRef content_ref(ByteView ciphertext) { return {sha256(ciphertext)}; }

Digest make_digest(ByteView ciphertext, ByteView pepper, Rng& rng) {
  FixedBytes<Digest::kSaltSize> salt;
  rng.fill(salt);
  return make_digest_with_salt(ciphertext, pepper, salt);
}

Digest make_digest_with_salt(ByteView ciphertext, ByteView pepper,
                             const FixedBytes<Digest::kSaltSize>& salt) {
  Bytes buf;
  buf.reserve(pepper.size() + salt.size() + ciphertext.size());
  buf.insert(buf.end(), pepper.begin(), pepper.end());
  buf.insert(buf.end(), salt.begin(), salt.end());
  buf.insert(buf.end(), ciphertext.begin(), ciphertext.end());
  return {salt, sha256(buf)};
}

bool verify_integrity(ByteView ciphertext, const Digest& digest, ByteView pepper) {
  return make_digest_with_salt(ciphertext, pepper, digest.salt).value == digest.value;
}

std::optional<Bytes> MemoryBackend::read(const StorageRef& ref) const {
  std::shared_lock lock(mu_);
  auto it = blobs_.find(ref);
  if (it == blobs_.end()) return std::nullopt;
  return it->second;
}

void MemoryBackend::write(const StorageRef& ref, ByteView data) {
  std::unique_lock lock(mu_);
  blobs_[ref] = Bytes(data.begin(), data.end());
}

FilesystemBackend::FilesystemBackend(std::filesystem::path root) : root_(std::move(root)) {
  std::error_code ec;
  std::filesystem::create_directories(root_, ec);
  if (ec) throw Error(ErrorCode::kStorageFailure, "cannot create " + root_.string());
}

std::filesystem::path FilesystemBackend::path_for(const StorageRef& ref) const {
  auto hex = ref.hex();
  return root_ / hex.substr(0, 2) / hex;
}

std::optional<Bytes> FilesystemBackend::read(const StorageRef& ref) const {
  std::ifstream in(path_for(ref), std::ios::binary);
  if (!in) return std::nullopt;
  Bytes out((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return out;
}

void FilesystemBackend::write(const StorageRef& ref, ByteView data) {
  auto path = path_for(ref);
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw Error(ErrorCode::kStorageFailure, "cannot create " + path.parent_path().string());
  // Write-then-rename so concurrent readers never see a partial blob.
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size()));
    if (!out) throw Error(ErrorCode::kStorageFailure, "write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::kStorageFailure, "rename failed: " + path.string());
}

BlobStore::BlobStore(std::shared_ptr<BlobBackend> backend) : backend_(std::move(backend)) {
  if (!backend_) throw Error(ErrorCode::kStorageFailure, "null backend");
}

StorageRef BlobStore::put(ByteView ciphertext) {
  auto ref = content_ref(ciphertext);
  auto existing = backend_->read(ref);
  if (!existing || content_ref(*existing) != ref) backend_->write(ref, ciphertext);
  return ref;
}

Bytes BlobStore::get(const StorageRef& ref) const {
  auto data = backend_->read(ref);
  if (!data) throw Error(ErrorCode::kNotFound, "no blob " + ref.hex());
  if (content_ref(*data) != ref) {
    throw Error(ErrorCode::kIntegrityMismatch, "blob " + ref.hex() + " fails its content hash");
  }
  return std::move(*data);
}

bool BlobStore::contains(const StorageRef& ref) const { return backend_->read(ref).has_value(); }

}  // namespace pims::store
