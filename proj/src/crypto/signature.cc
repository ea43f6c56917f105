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

#include "pims/crypto/signature.hpp"

#include "pims/common/error.hpp"
#include "pims/crypto/keys.hpp"

namespace pims::crypto {

namespace {

Scalar challenge(const Group& group, const Element& r, const Element& pk, ByteView msg) {
  return group.scalars().hash("pims/sig/challenge", {r.bytes(), pk.bytes(), msg});
}

}  // namespace

Signature sign(const Group& group, const Scalar& sk, ByteView message, Rng& rng) {
  const auto& f = group.scalars();
  auto pk = group.mul_base(sk);
  auto fresh = rng.bytes(32);
  auto k = f.hash("pims/sig/nonce", {f.encode(sk), message, fresh});
  if (k.is_zero()) k = f.one();
  auto e = challenge(group, group.mul_base(k), pk, message);
  auto s = f.add(k, f.mul(e, sk));
  auto out = f.encode(e);
  auto sb = f.encode(s);
  out.insert(out.end(), sb.begin(), sb.end());
  return Signature(std::move(out));
}

bool verify(const Group& group, const Element& pk, ByteView message, const Signature& sig) {
  const auto& f = group.scalars();
  const auto w = f.byte_width();
  if (sig.bytes().size() != 2 * w || !is_valid_public_key(group, pk)) return false;
  try {
    auto e = f.decode(ByteView(sig.bytes()).first(w));
    auto s = f.decode(ByteView(sig.bytes()).subspan(w));
    auto r = group.add(group.mul_base(s), group.mul(pk, f.neg(e)));
    return challenge(group, r, pk, message) == e;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace pims::crypto
