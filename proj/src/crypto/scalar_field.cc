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

#include "pims/crypto/scalar_field.hpp"

#include <boost/multiprecision/miller_rabin.hpp>
#include <random>

#include "pims/common/error.hpp"
#include "pims/common/hash.hpp"

namespace pims::crypto {

namespace mp = boost::multiprecision;

BigUint big_from_bytes(ByteView be) {
  BigUint v;
  if (be.empty()) return v;
  mp::import_bits(v, be.begin(), be.end(), 8, true);
  return v;
}

Bytes big_to_bytes(const BigUint& v, std::size_t width) {
  Bytes raw;
  if (!v.is_zero()) mp::export_bits(v, std::back_inserter(raw), 8, true);
  if (raw.size() > width) {
    throw Error(ErrorCode::kDecodeError, "integer does not fit fixed width");
  }
  Bytes out(width - raw.size(), 0);
  out.insert(out.end(), raw.begin(), raw.end());
  return out;
}

bool is_probable_prime(const BigUint& v) {
  if (v < 2) return false;
  // Fixed seed: parameter validation must be reproducible.
  std::mt19937_64 gen(0x5eed);
  mp::cpp_int n(v);
  return mp::miller_rabin_test(n, 32, gen);
}

ScalarField::ScalarField(BigUint modulus) : q_(std::move(modulus)) {
  if (q_ <= 2 || mp::msb(q_) >= 256 || !is_probable_prime(q_)) {
    throw Error(ErrorCode::kInvalidParams, "scalar modulus must be an odd prime below 2^256");
  }
  width_ = mp::msb(BigUint(q_ - 1)) / 8 + 1;
}

Scalar ScalarField::add(const Scalar& a, const Scalar& b) const {
  BigUint s = a.value() + b.value();
  if (s >= q_) s -= q_;
  return Scalar(std::move(s));
}

Scalar ScalarField::sub(const Scalar& a, const Scalar& b) const {
  if (a.value() >= b.value()) return Scalar(a.value() - b.value());
  return Scalar(q_ - (b.value() - a.value()));
}

Scalar ScalarField::mul(const Scalar& a, const Scalar& b) const {
  return Scalar((a.value() * b.value()) % q_);
}

Scalar ScalarField::neg(const Scalar& a) const {
  if (a.is_zero()) return a;
  return Scalar(q_ - a.value());
}

Scalar ScalarField::inv(const Scalar& a) const {
  if (a.is_zero()) {
    throw Error(ErrorCode::kInvalidParams, "inverse of zero scalar");
  }
  return Scalar(mp::powm(a.value(), BigUint(q_ - 2), q_));
}

Scalar ScalarField::pow(const Scalar& base, const BigUint& exp) const {
  return Scalar(mp::powm(base.value(), exp, q_));
}

Scalar ScalarField::eval_poly(std::span<const Scalar> coeffs, const Scalar& x) const {
  Scalar acc;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = add(mul(acc, x), *it);
  }
  return acc;
}

Scalar ScalarField::random(Rng& rng) const {
  // 512 random bits reduced mod q < 2^256: bias below 2^-256.
  FixedBytes<64> buf;
  rng.fill(buf);
  return reduce(big_from_bytes(buf));
}

Scalar ScalarField::random_nonzero(Rng& rng) const {
  for (;;) {
    auto s = random(rng);
    if (!s.is_zero()) return s;
  }
}

Scalar ScalarField::hash(std::string_view label,
                         std::initializer_list<ByteView> parts) const {
  return reduce(big_from_bytes(tagged_sha512(label, parts)));
}

Bytes ScalarField::encode(const Scalar& s) const { return big_to_bytes(s.value(), width_); }

Scalar ScalarField::decode(ByteView bytes) const {
  if (bytes.size() != width_) {
    throw Error(ErrorCode::kDecodeError, "scalar has wrong width");
  }
  Scalar s(big_from_bytes(bytes));
  if (!contains(s)) {
    throw Error(ErrorCode::kDecodeError, "scalar not reduced");
  }
  return s;
}

}  // namespace pims::crypto
