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

#include "pims/sharing/shamir.hpp"

#include <set>

#include "pims/common/codec.hpp"
#include "pims/common/error.hpp"

namespace pims::sharing {

void ThresholdPolicy::validate() const {
  if (t == 0 || n == 0 || t > n) {
    throw Error(ErrorCode::kInvalidPolicy,
                "threshold (" + std::to_string(t) + ", " + std::to_string(n) + ")");
  }
}

CommitmentSetId commitment_set_id(const Group& group, std::span<const Element> commitments) {
  ByteWriter w;
  w.prefixed(as_view(group.id()));
  for (const auto& c : commitments) w.prefixed(c.bytes());
  return tagged_sha256("pims/feldman/set-id", {w.bytes()});
}

SplitResult split_secret(const Group& group, const Scalar& secret,
                         const ThresholdPolicy& policy, Rng& rng) {
  policy.validate();
  std::vector<Scalar> coeffs;
  coeffs.reserve(policy.t - 1);
  for (std::uint32_t j = 1; j < policy.t; ++j) {
    coeffs.push_back(group.scalars().random(rng));
  }
  return split_secret_with_coefficients(group, secret, policy, coeffs);
}

SplitResult split_secret_with_coefficients(const Group& group, const Scalar& secret,
                                           const ThresholdPolicy& policy,
                                           std::span<const Scalar> coefficients) {
  policy.validate();
  const auto& f = group.scalars();
  if (!f.contains(secret)) {
    throw Error(ErrorCode::kInvalidParams, "secret not reduced mod q");
  }
  if (coefficients.size() != policy.t - 1) {
    throw Error(ErrorCode::kInvalidParams, "expected t - 1 coefficients");
  }
  std::vector<Scalar> poly{secret};
  poly.insert(poly.end(), coefficients.begin(), coefficients.end());

  SplitResult out;
  out.commitments.commitments.reserve(poly.size());
  for (const auto& a : poly) {
    out.commitments.commitments.push_back(group.mul_base(a));
  }
  out.commitments.id = commitment_set_id(group, out.commitments.commitments);

  out.shares.reserve(policy.n);
  for (std::uint32_t i = 1; i <= policy.n; ++i) {
    out.shares.push_back({i, f.eval_poly(poly, f.from_u64(i)), out.commitments.id});
  }
  return out;
}

std::vector<Scalar> lagrange_at_zero(const ScalarField& field, std::span<const Scalar> xs) {
  std::set<Scalar> seen;
  for (const auto& x : xs) {
    if (x.is_zero() || !seen.insert(x).second) {
      throw Error(ErrorCode::kDuplicateIndex, "interpolation points must be distinct and nonzero");
    }
  }
  // lambda_i = prod_{j != i} x_j / (x_j - x_i)
  std::vector<Scalar> out;
  out.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Scalar num = field.one();
    Scalar den = field.one();
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (i == j) continue;
      num = field.mul(num, xs[j]);
      den = field.mul(den, field.sub(xs[j], xs[i]));
    }
    out.push_back(field.mul(num, field.inv(den)));
  }
  return out;
}

Scalar reconstruct_secret(const ScalarField& field, std::span<const Share> shares,
                          const ThresholdPolicy& policy) {
  policy.validate();
  if (shares.size() < policy.t) {
    throw Error(ErrorCode::kInsufficientShares,
                std::to_string(shares.size()) + " shares for threshold " +
                    std::to_string(policy.t));
  }
  std::vector<Scalar> xs;
  xs.reserve(shares.size());
  for (const auto& s : shares) {
    if (s.index == 0) throw Error(ErrorCode::kDuplicateIndex, "share index 0");
    xs.push_back(field.from_u64(s.index));
  }
  auto lambdas = lagrange_at_zero(field, xs);
  Scalar acc;
  for (std::size_t i = 0; i < shares.size(); ++i) {
    acc = field.add(acc, field.mul(lambdas[i], shares[i].value));
  }
  return acc;
}

bool verify_share(const Group& group, const Share& share, const CommitmentSet& set) {
  if (share.commitment_set_id != set.id || set.commitments.empty() || share.index == 0) {
    return false;
  }
  const auto& f = group.scalars();
  if (!f.contains(share.value)) return false;
  try {
    // Horner in the exponent: C_{t-1}^x ... * C_1)^x * C_0.
    const auto x = f.from_u64(share.index);
    Element acc = set.commitments.back();
    for (auto it = set.commitments.rbegin() + 1; it != set.commitments.rend(); ++it) {
      acc = group.add(group.mul(acc, x), *it);
    }
    return acc == group.mul_base(share.value);
  } catch (const Error&) {
    return false;
  }
}

Bytes serialize(const ScalarField& field, const Share& share) {
  ByteWriter w;
  w.u32(share.index).raw(field.encode(share.value));
  return std::move(w).take();
}

Share deserialize_share(const ScalarField& field, ByteView bytes,
                        const CommitmentSetId& set_id) {
  ByteReader r(bytes);
  Share s;
  s.index = r.u32();
  s.value = field.decode(r.raw(field.byte_width()));
  s.commitment_set_id = set_id;
  r.expect_end();
  return s;
}

Bytes serialize(const CommitmentSet& set) {
  ByteWriter w;
  w.raw(set.id).u32(static_cast<std::uint32_t>(set.commitments.size()));
  for (const auto& c : set.commitments) w.prefixed(c.bytes());
  return std::move(w).take();
}

CommitmentSet deserialize_commitments(const Group& group, ByteView bytes) {
  ByteReader r(bytes);
  CommitmentSet set;
  set.id = to_fixed<32>(r.raw(32));
  auto count = r.u32();
  if (count > 4096) throw Error(ErrorCode::kDecodeError, "commitment set too large");
  for (std::uint32_t i = 0; i < count; ++i) {
    set.commitments.push_back(group.decode(r.prefixed()));
  }
  r.expect_end();
  if (set.id != commitment_set_id(group, set.commitments)) {
    throw Error(ErrorCode::kDecodeError, "commitment set id mismatch");
  }
  return set;
}

}  // namespace pims::sharing
