#pragma once

/**
 * @file protocol.hpp
 * @brief The pure algebra shared by the key centre, the members, and the
 *        attacker: Vandermonde vectors, inner products, shares, masks, key
 *        recovery, and the authentication tag.
 */

#include <string>
#include <vector>

#include "hhmzz/field.hpp"
#include "hhmzz/hash.hpp"

namespace hhmzz {

/// r = (r_0, r_1, ..., r_t); index 0 is the centre's own challenge.
using ChallengeVector = std::vector<FieldElement>;

struct VariantFlags {
    bool kgc_relays_challenges = false;
    bool h1_only_evaluation_point = false;
};

/// (1, x, x^2, ..., x^m); m >= 2.
inline std::vector<FieldElement> vandermonde_vector(const FieldElement& x, std::size_t m) {
    if (m < 2) throw Error(Errc::degree_too_small, "vandermonde degree must be >= 2");
    std::vector<FieldElement> out;
    out.reserve(m + 1);
    out.emplace_back(x.params(), 1ul);
    for (std::size_t k = 1; k <= m; ++k) out.push_back(out.back() * x);
    return out;
}

inline FieldElement inner_product(const std::vector<FieldElement>& a,
                                  const std::vector<FieldElement>& b) {
    if (a.size() != b.size() || a.empty())
        throw Error(Errc::length_mismatch, "inner product over unequal or empty vectors");
    FieldElement acc = a[0] * b[0];
    for (std::size_t k = 1; k < a.size(); ++k) acc = acc + a[k] * b[k];
    return acc;
}

/// Evaluation point for the share polynomial: x + h1(x||r_i||r_0), or just
/// the hash under the h1-only variant. Concatenation is fixed-width.
inline FieldElement evaluation_point(const HashSuite& suite, const FieldElement& x,
                                     const FieldElement& r_i, const FieldElement& r_0,
                                     const VariantFlags& flags) {
    Bytes msg = encode_fe(x);
    Bytes part = encode_fe(r_i);
    msg.insert(msg.end(), part.begin(), part.end());
    part = encode_fe(r_0);
    msg.insert(msg.end(), part.begin(), part.end());
    FieldElement hashed = h1(suite, msg);
    return flags.h1_only_evaluation_point ? hashed : x + hashed;
}

/// s = <v_t(eval point), r> with t = len(r) - 1. Identical on the centre
/// side and the member side.
inline FieldElement compute_share(const HashSuite& suite, const FieldElement& x,
                                  const FieldElement& r_i, const ChallengeVector& r,
                                  const VariantFlags& flags) {
    if (r.size() < 3) throw Error(Errc::length_mismatch, "challenge vector needs t >= 2");
    if (r.size() > 4097) throw Error(Errc::length_mismatch, "group size capped at 4096");
    const std::size_t t = r.size() - 1;
    FieldElement e = evaluation_point(suite, x, r_i, r[0], flags);
    return inner_product(vandermonde_vector(e, t), r);
}

inline FieldElement compute_mask(const FieldElement& key, const FieldElement& share) {
    return key - share;
}

inline FieldElement recover_key(const FieldElement& mask, const FieldElement& share) {
    return mask + share;
}

/// Identifiers are length-prefixed (2-byte big-endian) so the tag input is
/// an injective framing of (S, ids, r, masks).
inline Bytes auth_input(const FieldElement& key, const std::vector<std::string>& ids,
                        const ChallengeVector& r, const std::vector<FieldElement>& masks) {
    if (ids.size() != masks.size() || r.size() != ids.size() + 1)
        throw Error(Errc::length_mismatch, "auth input arity mismatch");
    Bytes msg = encode_fe(key);
    for (const auto& id : ids) {
        if (id.size() > 0xffff) throw Error(Errc::length_mismatch, "identifier too long");
        msg.push_back(static_cast<std::uint8_t>(id.size() >> 8));
        msg.push_back(static_cast<std::uint8_t>(id.size() & 0xff));
        msg.insert(msg.end(), id.begin(), id.end());
    }
    for (const auto& challenge : r) {
        Bytes part = encode_fe(challenge);
        msg.insert(msg.end(), part.begin(), part.end());
    }
    for (const auto& mask : masks) {
        Bytes part = encode_fe(mask);
        msg.insert(msg.end(), part.begin(), part.end());
    }
    return msg;
}

inline FieldElement compute_auth(const HashSuite& suite, const FieldElement& key,
                                 const std::vector<std::string>& ids, const ChallengeVector& r,
                                 const std::vector<FieldElement>& masks) {
    return h2(suite, auth_input(key, ids, r, masks));
}

inline bool verify_auth(const HashSuite& suite, const FieldElement& tag, const FieldElement& key,
                        const std::vector<std::string>& ids, const ChallengeVector& r,
                        const std::vector<FieldElement>& masks) {
    return compute_auth(suite, key, ids, r, masks) == tag;
}

}  // namespace hhmzz
