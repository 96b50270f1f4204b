#pragma once

/**
 * @file actors.hpp
 * @brief Deterministic state machines for the key generation centre, the
 *        group members, and the initiator.
 */

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hhmzz/messages.hpp"
#include "hhmzz/protocol.hpp"

namespace hhmzz {

struct UserCredential {
    std::string id;
    FieldElement x;  // long-term secret shared with the centre
};

struct Outcome {
    enum class Status { accepted, rejected };

    Status status;
    /// Candidate key recovered in step 5b; recorded even on rejection so an
    /// offline verifier can replay the tag check without any secrets.
    std::optional<FieldElement> key;
    std::string reason;

    bool accepted() const { return status == Status::accepted; }
};

/// Step 1: canonical-ordered request. The initiator may or may not be a
/// group member.
inline KeyGenRequest initiator_request(const std::string& initiator,
                                       std::vector<std::string> member_ids,
                                       const std::map<std::string, FieldElement>& registry) {
    if (member_ids.size() < 2)
        throw Error(Errc::group_too_small, "a group needs at least two members");
    std::sort(member_ids.begin(), member_ids.end());
    if (std::adjacent_find(member_ids.begin(), member_ids.end()) != member_ids.end())
        throw Error(Errc::duplicate_id, "duplicate member identifier");
    for (const auto& id : member_ids)
        if (!registry.count(id)) throw Error(Errc::unknown_id, "'" + id + "' is not registered");
    return KeyGenRequest{initiator, std::move(member_ids)};
}

class Kgc {
public:
    enum class Phase { await_request, await_challenges, done };

    Kgc(std::map<std::string, FieldElement> registry, HashSuite suite, VariantFlags flags)
        : registry_(std::move(registry)), suite_(std::move(suite)), flags_(flags) {}

    Phase phase() const { return phase_; }
    const FieldElement& session_key() const { return session_key_; }
    const std::vector<std::string>& member_ids() const { return member_ids_; }

    /// Step 2: echo the identifier set as a broadcast.
    IdentifierBroadcast on_request(const KeyGenRequest& msg) {
        if (phase_ != Phase::await_request)
            throw Error(Errc::wrong_phase, "request outside AwaitRequest phase");
        for (const auto& id : msg.member_ids)
            if (!registry_.count(id))
                throw Error(Errc::unknown_id, "'" + id + "' is not registered");
        member_ids_ = msg.member_ids;
        phase_ = Phase::await_challenges;
        return IdentifierBroadcast{member_ids_};
    }

    /// Step 4: sample S and r_0, compute every share and mask, tag, broadcast.
    KeyDistribution on_challenges(const std::vector<Challenge>& challenges, SeededRng& rng) {
        if (phase_ != Phase::await_challenges)
            throw Error(Errc::wrong_phase, "challenges outside AwaitChallenges phase");
        std::map<std::string, FieldElement> by_sender;
        for (const auto& c : challenges) {
            if (!by_sender.emplace(c.sender, c.r).second)
                throw Error(Errc::duplicate_challenge_sender,
                            "two challenges from '" + c.sender + "'");
        }
        ChallengeVector r;
        r.reserve(member_ids_.size() + 1);
        const auto& field = suite_.field;
        session_key_ = sample_fe(field, rng);
        r.push_back(sample_fe(field, rng));  // r_0
        for (const auto& id : member_ids_) {
            auto it = by_sender.find(id);
            if (it == by_sender.end())
                throw Error(Errc::missing_challenge, "no challenge from '" + id + "'");
            r.push_back(it->second);
            by_sender.erase(it);
        }
        if (!by_sender.empty())
            throw Error(Errc::unknown_id, "challenge from non-member '" +
                                              by_sender.begin()->first + "'");

        std::vector<FieldElement> masks;
        masks.reserve(member_ids_.size());
        for (std::size_t i = 0; i < member_ids_.size(); ++i) {
            FieldElement share =
                compute_share(suite_, registry_.at(member_ids_[i]), r[i + 1], r, flags_);
            masks.push_back(compute_mask(session_key_, share));
        }
        FieldElement auth = compute_auth(suite_, session_key_, member_ids_, r, masks);
        phase_ = Phase::done;
        KeyDistribution out{auth, r[0], std::move(masks), std::nullopt};
        if (flags_.kgc_relays_challenges)
            out.relayed_challenges = std::vector<FieldElement>(r.begin() + 1, r.end());
        return out;
    }

private:
    std::map<std::string, FieldElement> registry_;
    HashSuite suite_;
    VariantFlags flags_;
    Phase phase_ = Phase::await_request;
    std::vector<std::string> member_ids_;
    FieldElement session_key_;
};

class Member {
public:
    Member(UserCredential credential, HashSuite suite, VariantFlags flags)
        : credential_(std::move(credential)), suite_(std::move(suite)), flags_(flags) {}

    const std::string& id() const { return credential_.id; }
    const std::optional<Outcome>& outcome() const { return outcome_; }

    /// Step 3: if listed, record the session order and emit a fresh challenge.
    std::optional<Challenge> on_identifier_broadcast(const IdentifierBroadcast& msg,
                                                     SeededRng& rng) {
        auto it = std::find(msg.member_ids.begin(), msg.member_ids.end(), credential_.id);
        if (it == msg.member_ids.end()) return std::nullopt;
        session_ids_ = msg.member_ids;
        index_ = static_cast<std::size_t>(it - msg.member_ids.begin());
        own_challenge_ = sample_fe(suite_.field, rng);
        observed_[credential_.id] = *own_challenge_;
        return Challenge{credential_.id, *own_challenge_};
    }

    /// Base mode: challenges travel on an observable broadcast medium.
    void observe_challenge(const Challenge& msg) { observed_.emplace(msg.sender, msg.r); }

    /// Step 5: recompute the share, recover the key, replay the tag check.
    Outcome on_key_distribution(const KeyDistribution& msg) {
        if (outcome_) throw Error(Errc::wrong_phase, "outcome already recorded");
        if (session_ids_.empty())
            throw Error(Errc::wrong_phase, "key distribution before identifier broadcast");
        ChallengeVector r = assemble_challenges(msg);
        FieldElement share =
            compute_share(suite_, credential_.x, r[index_ + 1], r, flags_);
        FieldElement key = recover_key(msg.masks.at(index_), share);
        Outcome out;
        out.key = key;
        if (verify_auth(suite_, msg.auth, key, session_ids_, r, msg.masks)) {
            out.status = Outcome::Status::accepted;
        } else {
            out.status = Outcome::Status::rejected;
            out.reason = "auth_mismatch";
        }
        outcome_ = out;
        return out;
    }

private:
    ChallengeVector assemble_challenges(const KeyDistribution& msg) const {
        ChallengeVector r;
        r.reserve(session_ids_.size() + 1);
        r.push_back(msg.r0);
        if (msg.relayed_challenges) {
            if (msg.relayed_challenges->size() != session_ids_.size())
                throw Error(Errc::length_mismatch, "relayed challenge count mismatch");
            r.insert(r.end(), msg.relayed_challenges->begin(), msg.relayed_challenges->end());
            return r;
        }
        for (const auto& id : session_ids_) {
            auto it = observed_.find(id);
            if (it == observed_.end())
                throw Error(Errc::missing_challenge_knowledge,
                            "never observed the challenge of '" + id + "'");
            r.push_back(it->second);
        }
        return r;
    }

    UserCredential credential_;
    HashSuite suite_;
    VariantFlags flags_;
    std::vector<std::string> session_ids_;
    std::size_t index_ = 0;
    std::optional<FieldElement> own_challenge_;
    std::map<std::string, FieldElement> observed_;
    std::optional<Outcome> outcome_;
};

}  // namespace hhmzz
