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

#include "pims/pre/threshold_pre.hpp"

#include <set>

#include "pims/common/codec.hpp"
#include "pims/common/error.hpp"
#include "pims/common/hash.hpp"
#include "pims/crypto/keys.hpp"
#include "pims/sharing/shamir.hpp"

namespace pims::pre {

namespace {

// Tag shared by delegator and receiver: H(pk_O, pk_C, pk_C^sk_O).
Hash256 dh_tag(const Element& pk_owner, const Element& pk_consumer, const Element& shared) {
  return tagged_sha256("pims/pre/dh-tag",
                       {pk_owner.bytes(), pk_consumer.bytes(), shared.bytes()});
}

Scalar share_point(const Group& group, const Scalar& id, const Hash256& tag) {
  return group.scalars().hash("pims/pre/share-point", {group.scalars().encode(id), tag});
}

Scalar blinding(const Group& group, const Element& precursor, const Element& pk_consumer,
                const Element& dh) {
  return group.scalars().hash("pims/pre/blinding",
                              {precursor.bytes(), pk_consumer.bytes(), dh.bytes()});
}

Scalar kfrag_challenge(const Group& group, const Element& y, const Scalar& id,
                       const Element& pk_owner, const Element& pk_consumer,
                       const Element& commitment, const Element& precursor) {
  const auto id_bytes = group.scalars().encode(id);
  return group.scalars().hash("pims/pre/kfrag-proof",
                              {y.bytes(), id_bytes, pk_owner.bytes(), pk_consumer.bytes(),
                               commitment.bytes(), precursor.bytes()});
}

bool check_kfrag_proof(const Group& group, const Scalar& id, const Element& precursor,
                       const Element& commitment, const KFragProof& proof,
                       const Element& pk_owner, const Element& pk_consumer) {
  const auto& f = group.scalars();
  if (!f.contains(proof.challenge) || !f.contains(proof.response)) return false;
  auto y = group.add(group.mul_base(proof.response), group.mul(pk_owner, proof.challenge));
  return kfrag_challenge(group, y, id, pk_owner, pk_consumer, commitment, precursor) ==
         proof.challenge;
}

Scalar cfrag_challenge(const Group& group, const Capsule& capsule, const CFrag& c,
                       const Element& u) {
  const auto& p = c.proof;
  return group.scalars().hash(
      "pims/pre/cfrag-proof",
      {capsule.e.bytes(), c.e1.bytes(), p.e2.bytes(), capsule.v.bytes(), c.v1.bytes(),
       p.v2.bytes(), u.bytes(), p.kfrag_commitment.bytes(), p.u2.bytes()});
}

}  // namespace

Element commitment_base(const Group& group) {
  return group.hash_to_element("pims/pre/commitment-base", as_view(group.id()));
}

std::vector<KFrag> generate_kfrags(const Group& group, const Scalar& sk_owner,
                                   const Element& pk_consumer, const ThresholdPolicy& policy,
                                   Rng& rng) {
  policy.validate();
  if (!crypto::is_valid_public_key(group, pk_consumer)) {
    throw Error(ErrorCode::kInvalidKey, "receiving key is not a valid group element");
  }
  const auto& f = group.scalars();
  const auto pk_owner = group.mul_base(sk_owner);

  Scalar x;
  Element precursor;
  Scalar d;
  do {
    x = f.random_nonzero(rng);
    precursor = group.mul_base(x);
    d = blinding(group, precursor, pk_consumer, group.mul(pk_consumer, x));
  } while (d.is_zero());

  std::vector<Scalar> coeffs{f.mul(sk_owner, f.inv(d))};
  for (std::uint32_t j = 1; j < policy.t; ++j) coeffs.push_back(f.random(rng));

  const auto tag = dh_tag(pk_owner, pk_consumer, group.mul(pk_consumer, sk_owner));
  const auto u = commitment_base(group);

  std::vector<KFrag> out;
  std::set<Scalar> used_points;
  out.reserve(policy.n);
  while (out.size() < policy.n) {
    auto id = f.random_nonzero(rng);
    auto point = share_point(group, id, tag);
    // Interpolation needs distinct nonzero points; only reachable in tiny groups.
    if (point.is_zero() || !used_points.insert(point).second) continue;

    KFrag k;
    k.id = std::move(id);
    k.fragment_value = f.eval_poly(coeffs, point);
    k.precursor = precursor;
    k.commitment = group.mul(u, k.fragment_value);
    auto y = f.random_nonzero(rng);
    k.proof.challenge = kfrag_challenge(group, group.mul_base(y), k.id, pk_owner, pk_consumer,
                                        k.commitment, k.precursor);
    k.proof.response = f.sub(y, f.mul(sk_owner, k.proof.challenge));
    out.push_back(std::move(k));
  }
  return out;
}

bool verify_kfrag(const Group& group, const KFrag& k, const Element& pk_owner,
                  const Element& pk_consumer) {
  try {
    if (!crypto::is_valid_public_key(group, pk_owner) ||
        !crypto::is_valid_public_key(group, pk_consumer) || !group.is_valid(k.precursor) ||
        !group.is_valid(k.commitment) || !group.scalars().contains(k.fragment_value)) {
      return false;
    }
    if (group.mul(commitment_base(group), k.fragment_value) != k.commitment) return false;
    return check_kfrag_proof(group, k.id, k.precursor, k.commitment, k.proof, pk_owner,
                             pk_consumer);
  } catch (const Error&) {
    return false;
  }
}

CFrag reencrypt(const Group& group, const KFrag& kfrag, const Capsule& capsule, Rng& rng) {
  if (!crypto::verify_capsule(group, capsule)) {
    throw Error(ErrorCode::kCapsuleCheckFailure, "capsule self-check failed");
  }
  const auto u = commitment_base(group);
  if (!group.scalars().contains(kfrag.fragment_value) ||
      group.mul(u, kfrag.fragment_value) != kfrag.commitment) {
    throw Error(ErrorCode::kInvalidKFrag, "fragment does not match its commitment");
  }
  const auto& f = group.scalars();
  const auto& rk = kfrag.fragment_value;

  CFrag c;
  c.e1 = group.mul(capsule.e, rk);
  c.v1 = group.mul(capsule.v, rk);
  c.kfrag_id = kfrag.id;
  c.precursor = kfrag.precursor;

  auto t = f.random_nonzero(rng);
  c.proof.e2 = group.mul(capsule.e, t);
  c.proof.v2 = group.mul(capsule.v, t);
  c.proof.u2 = group.mul(u, t);
  c.proof.kfrag_commitment = kfrag.commitment;
  c.proof.kfrag_proof = kfrag.proof;
  auto h = cfrag_challenge(group, capsule, c, u);
  c.proof.z3 = f.add(t, f.mul(h, rk));
  return c;
}

bool verify_cfrag(const Group& group, const CFrag& c, const Capsule& capsule,
                  const Element& pk_owner, const Element& pk_consumer) {
  try {
    if (!crypto::verify_capsule(group, capsule)) return false;
    if (!crypto::is_valid_public_key(group, pk_owner) ||
        !crypto::is_valid_public_key(group, pk_consumer)) {
      return false;
    }
    for (const auto* e : {&c.e1, &c.v1, &c.precursor, &c.proof.e2, &c.proof.v2, &c.proof.u2,
                          &c.proof.kfrag_commitment}) {
      if (!group.is_valid(*e)) return false;
    }
    if (!group.scalars().contains(c.proof.z3)) return false;
    if (!check_kfrag_proof(group, c.kfrag_id, c.precursor, c.proof.kfrag_commitment,
                           c.proof.kfrag_proof, pk_owner, pk_consumer)) {
      return false;
    }
    const auto u = commitment_base(group);
    const auto h = cfrag_challenge(group, capsule, c, u);
    const auto& z = c.proof.z3;
    return group.mul(capsule.e, z) == group.add(c.proof.e2, group.mul(c.e1, h)) &&
           group.mul(capsule.v, z) == group.add(c.proof.v2, group.mul(c.v1, h)) &&
           group.mul(u, z) == group.add(c.proof.u2, group.mul(c.proof.kfrag_commitment, h));
  } catch (const Error&) {
    return false;
  }
}

SymmetricKey open_verified(const Group& group, const Scalar& sk_consumer,
                           const Element& pk_owner, const Capsule& capsule,
                           std::span<const CFrag> cfrags) {
  if (cfrags.empty()) {
    throw Error(ErrorCode::kInsufficientFragments, "no fragments");
  }
  if (!crypto::verify_capsule(group, capsule)) {
    throw Error(ErrorCode::kCapsuleCheckFailure, "capsule self-check failed");
  }
  const auto& f = group.scalars();
  const auto pk_consumer = group.mul_base(sk_consumer);
  const auto tag = dh_tag(pk_owner, pk_consumer, group.mul(pk_owner, sk_consumer));

  std::vector<Scalar> xs;
  xs.reserve(cfrags.size());
  for (const auto& c : cfrags) xs.push_back(share_point(group, c.kfrag_id, tag));
  auto lambdas = sharing::lagrange_at_zero(f, xs);

  Element e_prime = group.identity();
  Element v_prime = group.identity();
  for (std::size_t i = 0; i < cfrags.size(); ++i) {
    e_prime = group.add(e_prime, group.mul(cfrags[i].e1, lambdas[i]));
    v_prime = group.add(v_prime, group.mul(cfrags[i].v1, lambdas[i]));
  }

  const auto& precursor = cfrags.front().precursor;
  const auto d = blinding(group, precursor, pk_consumer, group.mul(precursor, sk_consumer));
  if (d.is_zero()) {
    throw Error(ErrorCode::kOpeningCheckFailure, "degenerate blinding factor");
  }
  // E' = E^(sk_O/d), V' = V^(sk_O/d), hence E'^h V' == pk_O^(s/d).
  const auto h = crypto::capsule_challenge(group, capsule.e, capsule.v);
  if (group.mul(pk_owner, f.mul(capsule.s, f.inv(d))) !=
      group.add(group.mul(e_prime, h), v_prime)) {
    throw Error(ErrorCode::kOpeningCheckFailure,
                "re-encrypted capsule does not open under the delegating key");
  }
  return crypto::derive_key(group, group.mul(group.add(e_prime, v_prime), d));
}


SymmetricKey combine_and_decapsulate(const Group& group, const Scalar& sk_consumer,
                                     const Element& pk_owner, const Capsule& capsule,
                                     std::span<const CFrag> cfrags, std::uint32_t threshold) {
  if (threshold == 0) throw Error(ErrorCode::kInvalidPolicy, "threshold 0");
  if (cfrags.size() < threshold) {
    throw Error(ErrorCode::kInsufficientFragments,
                std::to_string(cfrags.size()) + " fragments for threshold " +
                    std::to_string(threshold));
  }
  std::set<Scalar> ids;
  for (const auto& c : cfrags) {
    if (!ids.insert(c.kfrag_id).second) {
      throw Error(ErrorCode::kDuplicateFragment, "two fragments from one kfrag");
    }
  }
  if (!crypto::verify_capsule(group, capsule)) {
    throw Error(ErrorCode::kCapsuleCheckFailure, "capsule self-check failed");
  }
  const auto pk_consumer = group.mul_base(sk_consumer);
  for (const auto& c : cfrags) {
    if (c.precursor != cfrags.front().precursor) {
      throw Error(ErrorCode::kInvalidCFrag, "fragments from different re-key sets");
    }
    if (!verify_cfrag(group, c, capsule, pk_owner, pk_consumer)) {
      throw Error(ErrorCode::kInvalidCFrag, "fragment proof failed");
    }
  }
  return open_verified(group, sk_consumer, pk_owner, capsule,
                                cfrags.first(threshold));
}

Bytes serialize(const Group& group, const KFrag& k) {
  const auto& f = group.scalars();
  ByteWriter w;
  w.prefixed(f.encode(k.id))
      .prefixed(f.encode(k.fragment_value))
      .prefixed(k.precursor.bytes())
      .prefixed(k.commitment.bytes())
      .prefixed(f.encode(k.proof.challenge))
      .prefixed(f.encode(k.proof.response));
  return std::move(w).take();
}

KFrag deserialize_kfrag(const Group& group, ByteView bytes) {
  const auto& f = group.scalars();
  ByteReader r(bytes);
  KFrag k;
  k.id = f.decode(r.prefixed());
  k.fragment_value = f.decode(r.prefixed());
  k.precursor = group.decode(r.prefixed());
  k.commitment = group.decode(r.prefixed());
  k.proof.challenge = f.decode(r.prefixed());
  k.proof.response = f.decode(r.prefixed());
  r.expect_end();
  return k;
}

Bytes serialize(const Group& group, const CFrag& c) {
  const auto& f = group.scalars();
  ByteWriter w;
  w.prefixed(c.e1.bytes())
      .prefixed(c.v1.bytes())
      .prefixed(f.encode(c.kfrag_id))
      .prefixed(c.precursor.bytes())
      .prefixed(c.proof.e2.bytes())
      .prefixed(c.proof.v2.bytes())
      .prefixed(c.proof.u2.bytes())
      .prefixed(c.proof.kfrag_commitment.bytes())
      .prefixed(f.encode(c.proof.z3))
      .prefixed(f.encode(c.proof.kfrag_proof.challenge))
      .prefixed(f.encode(c.proof.kfrag_proof.response));
  return std::move(w).take();
}

CFrag deserialize_cfrag(const Group& group, ByteView bytes) {
  const auto& f = group.scalars();
  ByteReader r(bytes);
  CFrag c;
  c.e1 = group.decode(r.prefixed());
  c.v1 = group.decode(r.prefixed());
  c.kfrag_id = f.decode(r.prefixed());
  c.precursor = group.decode(r.prefixed());
  c.proof.e2 = group.decode(r.prefixed());
  c.proof.v2 = group.decode(r.prefixed());
  c.proof.u2 = group.decode(r.prefixed());
  c.proof.kfrag_commitment = group.decode(r.prefixed());
  c.proof.z3 = f.decode(r.prefixed());
  c.proof.kfrag_proof.challenge = f.decode(r.prefixed());
  c.proof.kfrag_proof.response = f.decode(r.prefixed());
  r.expect_end();
  return c;
}

}  // namespace pims::pre
