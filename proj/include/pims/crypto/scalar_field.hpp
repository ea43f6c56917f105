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

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

#include "pims/common/bytes.hpp"
#include "pims/common/rng.hpp"

namespace pims::crypto {

// Wide enough for the product of two 256-bit residues and for a reduced
// 512-bit hash output.
using BigUint = boost::multiprecision::uint512_t;

// A residue modulo some ScalarField's modulus. Carries no modulus of its own;
// arithmetic goes through the owning field.
class Scalar {
 public:
  Scalar() = default;
  explicit Scalar(BigUint v) : v_(std::move(v)) {}

  const BigUint& value() const { return v_; }
  bool is_zero() const { return v_.is_zero(); }

  friend bool operator==(const Scalar&, const Scalar&) = default;
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
    if (a.v_ < b.v_) return std::strong_ordering::less;
    if (a.v_ > b.v_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  BigUint v_;
};

// Prime field Z_q. The same code serves the 253-bit ristretto255 group order
// and the q = 257 test field, so golden vectors computed by hand in the small
// field exercise the production arithmetic.
class ScalarField {
 public:
  // Throws Error(kInvalidParams) unless modulus is a prime > 2 below 2^256.
  explicit ScalarField(BigUint modulus);

  const BigUint& modulus() const { return q_; }
  // Fixed big-endian serialization width.
  std::size_t byte_width() const { return width_; }

  Scalar zero() const { return Scalar(); }
  Scalar one() const { return Scalar(BigUint(1)); }
  Scalar from_u64(std::uint64_t v) const { return reduce(BigUint(v)); }
  Scalar reduce(const BigUint& v) const { return Scalar(v % q_); }

  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  Scalar neg(const Scalar& a) const;
  // Throws Error(kInvalidParams) for zero.
  Scalar inv(const Scalar& a) const;
  Scalar pow(const Scalar& base, const BigUint& exp) const;

  // Evaluates sum coeffs[j] * x^j (Horner).
  Scalar eval_poly(std::span<const Scalar> coeffs, const Scalar& x) const;

  // Uniform in [0, q) / [1, q).
  Scalar random(Rng& rng) const;
  Scalar random_nonzero(Rng& rng) const;

  // 512-bit domain-separated hash reduced mod q.
  Scalar hash(std::string_view label, std::initializer_list<ByteView> parts) const;

  Bytes encode(const Scalar& s) const;
  // Throws Error(kDecodeError) on wrong width or non-canonical value.
  Scalar decode(ByteView bytes) const;

  bool contains(const Scalar& s) const { return s.value() < q_; }

  friend bool operator==(const ScalarField& a, const ScalarField& b) {
    return a.q_ == b.q_;
  }

 private:
  BigUint q_;
  std::size_t width_;
};

BigUint big_from_bytes(ByteView be);
// Big-endian, left-padded to width. Throws if the value does not fit.
Bytes big_to_bytes(const BigUint& v, std::size_t width);
bool is_probable_prime(const BigUint& v);

}  // namespace pims::crypto
