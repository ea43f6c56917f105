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

#include <span>
#include <vector>

#include "pims/common/hash.hpp"
#include "pims/common/rng.hpp"
#include "pims/crypto/group.hpp"
#include "pims/sharing/policy.hpp"

namespace pims::sharing {

using crypto::Element;
using crypto::Group;
using crypto::Scalar;
using crypto::ScalarField;

using CommitmentSetId = Hash256;

// Feldman commitments g^a_j to the sharing polynomial's coefficients.
// commitments[0] is g^secret.
struct CommitmentSet {
  CommitmentSetId id{};
  std::vector<Element> commitments;

  friend bool operator==(const CommitmentSet&, const CommitmentSet&) = default;
};

struct Share {
  std::uint32_t index = 0;  // 1..n; f(0) is the secret
  Scalar value;
  CommitmentSetId commitment_set_id{};

  friend bool operator==(const Share&, const Share&) = default;
};

struct SplitResult {
  std::vector<Share> shares;
  CommitmentSet commitments;
};

// Shares f(1..n) of a random degree t-1 polynomial with f(0) = secret.
// Throws Error(kInvalidPolicy) for a bad policy, Error(kInvalidParams) if
// secret is not reduced.
SplitResult split_secret(const Group& group, const Scalar& secret,
                         const ThresholdPolicy& policy, Rng& rng);

// Same, with the t - 1 non-constant coefficients supplied by the caller.
SplitResult split_secret_with_coefficients(const Group& group, const Scalar& secret,
                                           const ThresholdPolicy& policy,
                                           std::span<const Scalar> coefficients);

// Lagrange interpolation at x = 0 over all supplied shares.
// Throws Error(kInsufficientShares) for fewer than policy.t shares and
// Error(kDuplicateIndex) for a repeated index.
Scalar reconstruct_secret(const ScalarField& field, std::span<const Share> shares,
                          const ThresholdPolicy& policy);

// Lagrange basis coefficients lambda_i with sum lambda_i f(x_i) = f(0).
// Throws Error(kDuplicateIndex) if two xs coincide or any x is zero.
std::vector<Scalar> lagrange_at_zero(const ScalarField& field, std::span<const Scalar> xs);

// g^value == prod_j commitments[j]^(index^j), and the share names this set.
bool verify_share(const Group& group, const Share& share, const CommitmentSet& commitments);

CommitmentSetId commitment_set_id(const Group& group, std::span<const Element> commitments);

// index (4-byte big-endian) || fixed-width scalar.
Bytes serialize(const ScalarField& field, const Share& share);
Share deserialize_share(const ScalarField& field, ByteView bytes,
                        const CommitmentSetId& set_id);

Bytes serialize(const CommitmentSet& set);
CommitmentSet deserialize_commitments(const Group& group, ByteView bytes);

}  // namespace pims::sharing
