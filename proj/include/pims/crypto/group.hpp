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

#include <memory>
#include <string>
#include <string_view>

#include "pims/common/bytes.hpp"
#include "pims/crypto/scalar_field.hpp"

namespace pims::crypto {

// A group element held in its canonical fixed-width encoding. Equality of
// encodings is equality of elements for every backend.
class Element {
 public:
  Element() = default;
  explicit Element(Bytes encoding) : enc_(std::move(encoding)) {}

  const Bytes& bytes() const { return enc_; }
  bool empty() const { return enc_.empty(); }

  friend bool operator==(const Element&, const Element&) = default;
  friend auto operator<=>(const Element&, const Element&) = default;

 private:
  Bytes enc_;
};

// Prime-order cyclic group written multiplicatively in the API names that
// matter here: add() is the group operation, mul() is exponentiation by a
// scalar.
class Group {
 public:
  virtual ~Group() = default;

  virtual std::string_view id() const = 0;
  const ScalarField& scalars() const { return field_; }
  virtual std::size_t element_size() const = 0;

  const Element& generator() const { return generator_; }
  virtual Element identity() const = 0;

  virtual Element add(const Element& a, const Element& b) const = 0;
  virtual Element mul(const Element& p, const Scalar& k) const = 0;
  virtual Element mul_base(const Scalar& k) const { return mul(generator_, k); }

  // Deterministic map onto a non-identity element with unknown discrete log.
  virtual Element hash_to_element(std::string_view label, ByteView msg) const = 0;

  virtual bool is_valid(const Element& e) const = 0;

  // Throws Error(kDecodeError) unless bytes encode a valid element.
  Element decode(ByteView bytes) const;

 protected:
  Group(ScalarField field) : field_(std::move(field)) {}
  void set_generator(Element g) { generator_ = std::move(g); }

 private:
  ScalarField field_;
  Element generator_;
};

using GroupParams = std::shared_ptr<const Group>;

// ristretto255 (prime order 2^252 + 277423...493), via libsodium.
GroupParams ristretto255();

// Order-257 subgroup of Z_1543^* generated by 64. Hand-checkable; insecure.
GroupParams tiny_test_group();

// Schnorr subgroup of Z_p^* of prime order q generated by g.
// Throws Error(kInvalidParams) unless q is prime, q | p-1, g != 1, g^q == 1.
GroupParams make_schnorr_group(BigUint p, BigUint q, BigUint g);

// Resolves "ristretto255" or "tiny"; throws Error(kInvalidParams) otherwise.
GroupParams group_by_name(std::string_view name);

}  // namespace pims::crypto
