#pragma once

/**
 * @file attacks.hpp
 * @brief Insider key forgery: a legitimate member recovers the distributed
 *        key from its own share, then rewrites the victim's copy of the
 *        final broadcast so the victim accepts an attacker-chosen key while
 *        its tag check still passes.
 */

#include <string>
#include <vector>

#include "hhmzz/messages.hpp"
#include "hhmzz/protocol.hpp"

namespace hhmzz {

struct AttackPlan {
    std::string malicious_id;
    std::string victim_id;
    FieldElement forged_key;  // S*
};

/// The honest step-5 computation, run by the insider on its own credential:
/// S = u_m + <v_t(x_m + h1(x_m||r_m||r_0)), r>.
inline FieldElement insider_recover_key(const HashSuite& suite, const FieldElement& x_m,
                                        std::size_t m_index, const ChallengeVector& r,
                                        const FieldElement& u_m, const VariantFlags& flags) {
    if (m_index + 1 >= r.size())
        throw Error(Errc::length_mismatch, "attacker index outside challenge vector");
    return recover_key(u_m, compute_share(suite, x_m, r[m_index + 1], r, flags));
}

/// u*_v = u_v - S + S*; the victim's recovery then yields S* instead of S.
inline FieldElement forge_mask(const FieldElement& u_v, const FieldElement& key,
                               const FieldElement& forged_key) {
    return u_v - key + forged_key;
}

/// Replacement for the victim's copy of the final broadcast: only the tag
/// and the victim's mask change.
inline KeyDistribution forge_broadcast(const HashSuite& suite, const KeyDistribution& original,
                                       const FieldElement& recovered_key, const AttackPlan& plan,
                                       const std::vector<std::string>& ids,
                                       const ChallengeVector& r) {
    auto it = std::find(ids.begin(), ids.end(), plan.victim_id);
    if (it == ids.end())
        throw Error(Errc::victim_not_in_group, "'" + plan.victim_id + "' is not in the session");
    const std::size_t v = static_cast<std::size_t>(it - ids.begin());

    KeyDistribution forged = original;
    forged.masks[v] = forge_mask(original.masks[v], recovered_key, plan.forged_key);
    forged.auth = compute_auth(suite, plan.forged_key, ids, r, forged.masks);
    return forged;
}

/// Negative control: resample exactly one field among {auth, r0, one mask}
/// until it differs from the original.
inline KeyDistribution random_tamper(const FieldParamsPtr& field, const KeyDistribution& original,
                                     SeededRng& rng) {
    KeyDistribution out = original;
    const std::size_t slots = 2 + original.masks.size();
    const std::size_t pick = rng.next_u64() % slots;
    FieldElement* target = pick == 0 ? &out.auth
                         : pick == 1 ? &out.r0
                                     : &out.masks[pick - 2];
    FieldElement fresh = sample_fe(field, rng);
    while (fresh == *target) fresh = sample_fe(field, rng);
    *target = fresh;
    return out;
}

}  // namespace hhmzz
