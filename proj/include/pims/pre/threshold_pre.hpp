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

#include "pims/common/rng.hpp"
#include "pims/crypto/dem.hpp"
#include "pims/crypto/group.hpp"
#include "pims/crypto/kem.hpp"
#include "pims/sharing/policy.hpp"

// Split-key, uni-directional, single-use threshold proxy re-encryption in
// the style of Umbral. The delegator's key sk_O is blinded by
// d = H(X, pk_C, pk_C^x) for an ephemeral precursor X = g^x, and
// sk_O / d is Shamir-shared at points H(id_i, D) where D is a
// delegator/receiver Diffie-Hellman tag. Each proxy raises the capsule
// points to its fragment; the receiver interpolates in the exponent and
// unblinds with d, which only it (and the delegator) can recompute.
namespace pims::pre {

using crypto::Capsule;
using crypto::Element;
using crypto::Group;
using crypto::Scalar;
using crypto::SymmetricKey;
using sharing::ThresholdPolicy;

// Schnorr proof by the delegator binding a fragment to (pk_O, pk_C).
struct KFragProof {
  Scalar challenge;
  Scalar response;

  friend bool operator==(const KFragProof&, const KFragProof&) = default;
};

struct KFrag {
  Scalar id;
  Scalar fragment_value;
  Element precursor;   // X = g^x
  Element commitment;  // U^fragment_value
  KFragProof proof;

  friend bool operator==(const KFrag&, const KFrag&) = default;
};

// Chaum-Pedersen style proof that E1, V1 and the kfrag commitment share the
// same exponent.
struct CFragProof {
  Element e2;
  Element v2;
  Element u2;
  Element kfrag_commitment;
  Scalar z3;
  KFragProof kfrag_proof;

  friend bool operator==(const CFragProof&, const CFragProof&) = default;
};

struct CFrag {
  Element e1;
  Element v1;
  Scalar kfrag_id;
  Element precursor;
  CFragProof proof;

  friend bool operator==(const CFrag&, const CFrag&) = default;
};

// Second generator U with unknown discrete log relative to g.
Element commitment_base(const Group& group);

// Throws Error(kInvalidPolicy) for a bad policy, Error(kInvalidKey) for a
// bad pk_C.
std::vector<KFrag> generate_kfrags(const Group& group, const Scalar& sk_owner,
                                   const Element& pk_consumer, const ThresholdPolicy& policy,
                                   Rng& rng);

bool verify_kfrag(const Group& group, const KFrag& kfrag, const Element& pk_owner,
                  const Element& pk_consumer);

// Touches only the capsule. Throws Error(kCapsuleCheckFailure) for a bad
// capsule and Error(kInvalidKFrag) if the fragment disagrees with its own
// commitment.
CFrag reencrypt(const Group& group, const KFrag& kfrag, const Capsule& capsule, Rng& rng);

bool verify_cfrag(const Group& group, const CFrag& cfrag, const Capsule& capsule,
                  const Element& pk_owner, const Element& pk_consumer);

// Verifies every fragment, then opens the capsule from the first
// `threshold` of them.
// Errors: kInsufficientFragments (fewer than threshold), kDuplicateFragment
// (repeated kfrag id), kInvalidCFrag (failed proof or mixed precursors),
// kCapsuleCheckFailure, kOpeningCheckFailure (interpolated capsule does not
// match the delegator key).
SymmetricKey combine_and_decapsulate(const Group& group, const Scalar& sk_consumer,
                                     const Element& pk_owner, const Capsule& capsule,
                                     std::span<const CFrag> cfrags, std::uint32_t threshold);

// Interpolates whatever fragments it is given, without count or proof
// checks, and still runs the final opening check. For callers that already
// verified each fragment; with fewer than t fragments it fails the check.
// Throws Error(kDuplicateFragment) or Error(kOpeningCheckFailure).
SymmetricKey open_verified(const Group& group, const Scalar& sk_consumer,
                           const Element& pk_owner, const Capsule& capsule,
                           std::span<const CFrag> cfrags);

Bytes serialize(const Group& group, const KFrag& kfrag);
KFrag deserialize_kfrag(const Group& group, ByteView bytes);
Bytes serialize(const Group& group, const CFrag& cfrag);
CFrag deserialize_cfrag(const Group& group, ByteView bytes);

}  // namespace pims::pre
