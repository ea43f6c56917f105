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

#include <filesystem>
#include <fstream>
#include <set>
#include <thread>

#include "pims/store/blob_store.hpp"
#include "test_util.hpp"

namespace pims::store {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    auto rng = Rng::system();
    path_ = fs::temp_directory_path() / ("pims-store-" + to_hex(rng.bytes(8)));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

TEST(ContentRef, IsSha256OfCiphertext) {
  EXPECT_EQ(content_ref({}).hex(),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(content_ref(as_view("abc")).bytes, sha256(as_view("abc")));
}

TEST(Digest, PepperAndSaltArePrepended) {
  FixedBytes<16> salt{};
  salt[0] = 0xaa;
  auto pepper = to_bytes("pepper");
  auto ct = to_bytes("ciphertext");
  auto d = make_digest_with_salt(ct, pepper, salt);
  auto oracle = sha256(concat({pepper, salt, ct}));
  EXPECT_EQ(d.value, oracle);
  EXPECT_EQ(d.salt, salt);
}

TEST(Digest, VerifiesOnlyExactInputs) {
  auto rng = Rng::from_seed(300);
  auto pepper = to_bytes("pepper");
  auto ct = rng.bytes(64);
  auto d = make_digest(ct, pepper, rng);
  EXPECT_TRUE(verify_integrity(ct, d, pepper));
  EXPECT_FALSE(verify_integrity(ct, d, to_bytes("peppeR")));
  for (std::size_t i = 0; i < ct.size(); ++i) {
    auto bad = ct;
    bad[i] ^= 0x01;
    EXPECT_FALSE(verify_integrity(bad, d, pepper));
  }
  auto bad_salt = d;
  bad_salt.salt[3] ^= 1;
  EXPECT_FALSE(verify_integrity(ct, bad_salt, pepper));
}

TEST(Digest, SaltsMakeDigestsOfIdenticalDataDiffer) {
  auto rng = Rng::from_seed(301);
  auto pepper = to_bytes("p");
  auto ct = to_bytes("same content");
  std::set<Hash256> values;
  for (int i = 0; i < 50; ++i) values.insert(make_digest(ct, pepper, rng).value);
  EXPECT_EQ(values.size(), 50u);
}

void exercise_store(BlobStore& store) {
  auto rng = Rng::from_seed(302);
  auto a = rng.bytes(1000);
  auto ref = store.put(a);
  EXPECT_EQ(ref, content_ref(a));
  EXPECT_EQ(store.get(ref), a);
  EXPECT_TRUE(store.contains(ref));
  EXPECT_EQ(store.put(a), ref);

  auto empty_ref = store.put({});
  EXPECT_EQ(empty_ref, content_ref({}));
  EXPECT_TRUE(store.get(empty_ref).empty());

  auto b = rng.bytes(1000);
  EXPECT_NE(store.put(b), ref);

  StorageRef unknown;
  unknown.bytes.fill(0x42);
  EXPECT_FALSE(store.contains(unknown));
  EXPECT_PIMS_ERROR(store.get(unknown), ErrorCode::kNotFound);
}

TEST(MemoryStore, PutGet) {
  BlobStore store(std::make_shared<MemoryBackend>());
  exercise_store(store);
}

TEST(FilesystemStore, PutGetAndLayout) {
  TempDir dir;
  auto backend = std::make_shared<FilesystemBackend>(dir.path());
  BlobStore store(backend);
  exercise_store(store);

  auto data = to_bytes("layout");
  auto ref = store.put(data);
  auto hex = ref.hex();
  auto expected = dir.path() / hex.substr(0, 2) / hex;
  EXPECT_EQ(backend->path_for(ref), expected);
  ASSERT_TRUE(fs::exists(expected));
  std::ifstream in(expected, std::ios::binary);
  std::string raw((std::istreambuf_iterator<char>(in)), {});
  EXPECT_EQ(raw, "layout");
}

TEST(FilesystemStore, CorruptionIsDetectedAndRepairedByPut) {
  TempDir dir;
  auto backend = std::make_shared<FilesystemBackend>(dir.path());
  BlobStore store(backend);
  auto data = to_bytes("precious ciphertext");
  auto ref = store.put(data);
  {
    std::ofstream out(backend->path_for(ref), std::ios::binary | std::ios::trunc);
    out << "tampered";
  }
  EXPECT_PIMS_ERROR(store.get(ref), ErrorCode::kIntegrityMismatch);
  EXPECT_EQ(store.put(data), ref);
  EXPECT_EQ(store.get(ref), data);
}

TEST(FilesystemStore, SurvivesReopen) {
  TempDir dir;
  auto data = to_bytes("persisted");
  StorageRef ref;
  {
    BlobStore store(std::make_shared<FilesystemBackend>(dir.path()));
    ref = store.put(data);
  }
  BlobStore reopened(std::make_shared<FilesystemBackend>(dir.path()));
  EXPECT_EQ(reopened.get(ref), data);
}

TEST(MemoryStore, ConcurrentPutGet) {
  BlobStore store(std::make_shared<MemoryBackend>());
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&store, t] {
      auto rng = Rng::from_seed(400 + t);
      for (int i = 0; i < 200; ++i) {
        auto data = rng.bytes(64);
        auto ref = store.put(data);
        ASSERT_EQ(store.get(ref), data);
      }
    });
  }
  for (auto& th : threads) th.join();
}

}  // namespace
}  // namespace pims::store
