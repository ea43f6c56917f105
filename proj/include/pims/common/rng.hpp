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

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "pims/common/bytes.hpp"

namespace pims {

// Byte source for all key, nonce and coefficient sampling.
//
// A system Rng draws from the OS CSPRNG. A seeded Rng expands its seed with
// ChaCha20 and is fully deterministic, which the tests and the benchmark
// rely on for reproducible workloads. Not thread-safe; fork() one per thread.
class Rng {
 public:
  static Rng system();
  static Rng from_seed(std::uint64_t seed);
  static Rng from_seed(ByteView seed);
  static Rng from_optional_seed(std::optional<ByteView> seed);

  void fill(std::span<std::uint8_t> out);
  Bytes bytes(std::size_t n);
  std::uint64_t next_u64();
  // Uniform in [0, bound). bound must be > 0.
  std::uint64_t uniform(std::uint64_t bound);

  // Independent child stream. Deterministic for seeded parents.
  Rng fork(std::string_view label);

  bool seeded() const { return seeded_; }

 private:
  Rng(bool seeded, FixedBytes<32> key) : seeded_(seeded), key_(key) {}

  bool seeded_;
  FixedBytes<32> key_{};
  std::uint64_t counter_ = 0;
};

}  // namespace pims
