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

#include "pims/crypto/group.hpp"

#include <sodium.h>

#include <algorithm>

#include "pims/common/error.hpp"
#include "pims/common/hash.hpp"
#include "pims/common/rng.hpp"

namespace pims::crypto {

namespace mp = boost::multiprecision;

Element Group::decode(ByteView bytes) const {
  if (bytes.size() != element_size()) {
    throw Error(ErrorCode::kDecodeError, "group element has wrong width");
  }
  Element e(Bytes(bytes.begin(), bytes.end()));
  if (!is_valid(e)) {
    throw Error(ErrorCode::kDecodeError, "not a valid group element");
  }
  return e;
}

namespace {

// 2^252 + 27742317777372353535851937790883648493
const BigUint kRistrettoOrder(
    "7237005577332262213973186563042994240857116359379907606001950938285454250989");

class Ristretto255 final : public Group {
 public:
  Ristretto255() : Group(ScalarField(kRistrettoOrder)) {
    // Rng::system() also performs sodium_init().
    (void)Rng::system();
    FixedBytes<32> one{};
    one[0] = 1;
    Bytes g(crypto_core_ristretto255_BYTES);
    if (crypto_scalarmult_ristretto255_base(g.data(), one.data()) != 0) {
      throw Error(ErrorCode::kInvalidParams, "ristretto255 base point");
    }
    set_generator(Element(std::move(g)));
  }

  std::string_view id() const override { return "ristretto255"; }
  std::size_t element_size() const override { return crypto_core_ristretto255_BYTES; }

  Element identity() const override { return Element(Bytes(32, 0)); }

  Element add(const Element& a, const Element& b) const override {
    Bytes out(32);
    if (crypto_core_ristretto255_add(out.data(), a.bytes().data(), b.bytes().data()) != 0) {
      throw Error(ErrorCode::kInvalidKey, "ristretto255 add on invalid element");
    }
    return Element(std::move(out));
  }

  Element mul(const Element& p, const Scalar& k) const override {
    check(p);
    auto le = little_endian(k);
    Bytes out(32);
    // -1 means the result is the identity, which libsodium leaves zeroed.
    if (crypto_scalarmult_ristretto255(out.data(), le.data(), p.bytes().data()) != 0) {
      std::fill(out.begin(), out.end(), 0);
    }
    return Element(std::move(out));
  }

  Element mul_base(const Scalar& k) const override {
    auto le = little_endian(k);
    Bytes out(32);
    if (crypto_scalarmult_ristretto255_base(out.data(), le.data()) != 0) {
      std::fill(out.begin(), out.end(), 0);
    }
    return Element(std::move(out));
  }

  Element hash_to_element(std::string_view label, ByteView msg) const override {
    auto h = tagged_sha512(label, {msg});
    Bytes out(32);
    crypto_core_ristretto255_from_hash(out.data(), h.data());
    return Element(std::move(out));
  }

  bool is_valid(const Element& e) const override {
    return e.bytes().size() == 32 &&
           crypto_core_ristretto255_is_valid_point(e.bytes().data()) == 1;
  }

 private:
  void check(const Element& e) const {
    if (!is_valid(e)) throw Error(ErrorCode::kInvalidKey, "invalid ristretto255 element");
  }

  FixedBytes<32> little_endian(const Scalar& k) const {
    auto be = scalars().encode(k);
    FixedBytes<32> le;
    std::reverse_copy(be.begin(), be.end(), le.begin());
    return le;
  }
};

class SchnorrGroup final : public Group {
 public:
  SchnorrGroup(BigUint p, BigUint q, BigUint g)
      : Group(ScalarField(q)), p_(std::move(p)), q_(std::move(q)) {
    if (p_ <= 3 || mp::msb(p_) >= 256 || !is_probable_prime(p_)) {
      throw Error(ErrorCode::kInvalidParams, "p must be a prime below 2^256");
    }
    if ((p_ - 1) % q_ != 0) {
      throw Error(ErrorCode::kInvalidParams, "q must divide p - 1");
    }
    g %= p_;
    if (g <= 1 || mp::powm(g, q_, p_) != 1) {
      throw Error(ErrorCode::kInvalidParams, "generator must have order q");
    }
    width_ = mp::msb(BigUint(p_ - 1)) / 8 + 1;
    cofactor_ = (p_ - 1) / q_;
    id_ = "schnorr-" + p_.str() + "-" + q_.str() + "-" + g.str();
    set_generator(to_element(g));
  }

  std::string_view id() const override { return id_; }
  std::size_t element_size() const override { return width_; }

  Element identity() const override { return to_element(BigUint(1)); }

  Element add(const Element& a, const Element& b) const override {
    return to_element((value(a) * value(b)) % p_);
  }

  Element mul(const Element& e, const Scalar& k) const override {
    return to_element(mp::powm(value(e), k.value(), p_));
  }

  Element hash_to_element(std::string_view label, ByteView msg) const override {
    for (std::uint32_t ctr = 0;; ++ctr) {
      std::uint8_t c[4] = {static_cast<std::uint8_t>(ctr >> 24),
                           static_cast<std::uint8_t>(ctr >> 16),
                           static_cast<std::uint8_t>(ctr >> 8),
                           static_cast<std::uint8_t>(ctr)};
      BigUint h = big_from_bytes(tagged_sha512(label, {msg, c})) % p_;
      if (h.is_zero()) continue;
      BigUint e = mp::powm(h, cofactor_, p_);
      if (e != 1) return to_element(e);
    }
  }

  bool is_valid(const Element& e) const override {
    if (e.bytes().size() != width_) return false;
    BigUint v = big_from_bytes(e.bytes());
    return v >= 1 && v < p_ && mp::powm(v, q_, p_) == 1;
  }

 private:
  BigUint value(const Element& e) const {
    if (!is_valid(e)) throw Error(ErrorCode::kInvalidKey, "invalid subgroup element");
    return big_from_bytes(e.bytes());
  }
  Element to_element(const BigUint& v) const { return Element(big_to_bytes(v, width_)); }

  BigUint p_;
  BigUint q_;
  BigUint cofactor_;
  std::size_t width_ = 0;
  std::string id_;
};

}  // namespace

GroupParams ristretto255() {
  static const GroupParams g = std::make_shared<Ristretto255>();
  return g;
}

GroupParams tiny_test_group() {
  static const GroupParams g = make_schnorr_group(BigUint(1543), BigUint(257), BigUint(64));
  return g;
}

GroupParams make_schnorr_group(BigUint p, BigUint q, BigUint g) {
  return std::make_shared<SchnorrGroup>(std::move(p), std::move(q), std::move(g));
}

GroupParams group_by_name(std::string_view name) {
  if (name == "ristretto255") return ristretto255();
  if (name == "tiny") return tiny_test_group();
  throw Error(ErrorCode::kInvalidParams, "unknown group '" + std::string(name) + "'");
}

}  // namespace pims::crypto
