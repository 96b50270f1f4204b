#pragma once

/**
 * @file netsim.hpp
 * @brief Synchronous broadcast-network simulator. Broadcasts expand to one
 *        delivery event per recipient, and every delivery passes through
 *        the adversary hook, so per-recipient tampering is expressible.
 *
 * The adversary sees only an explicitly constructed knowledge view: its own
 * credential (when it is an insider) plus the deliveries it legitimately
 * observed. It never reads other members' secrets or the centre's state.
 */

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "hhmzz/actors.hpp"
#include "hhmzz/attacks.hpp"
#include "hhmzz/config.hpp"
#include "hhmzz/transcript.hpp"

namespace hhmzz {

inline constexpr const char* kKgcId = "KGC";

struct AttackerKnowledge {
    std::optional<UserCredential> credential;
    std::vector<DeliveryEvent> observed;
};

struct AdversaryAction {
    enum class Kind { deliver, drop, replace };

    Kind kind = Kind::deliver;
    std::optional<ProtocolMessage> replacement;
    std::optional<FieldElement> forged_key_used;

    static AdversaryAction deliver() { return {}; }
};

namespace detail {

inline std::vector<std::string> session_ids_from(const AttackerKnowledge& knowledge) {
    for (const auto& e : knowledge.observed)
        if (const auto* ib = std::get_if<IdentifierBroadcast>(&e.message)) return ib->member_ids;
    throw Error(Errc::missing_challenge_knowledge, "attacker never saw the identifier broadcast");
}

inline ChallengeVector assemble_attacker_challenges(const AttackerKnowledge& knowledge,
                                                    const std::vector<std::string>& ids,
                                                    const KeyDistribution& kd) {
    ChallengeVector r;
    r.push_back(kd.r0);
    if (kd.relayed_challenges) {
        r.insert(r.end(), kd.relayed_challenges->begin(), kd.relayed_challenges->end());
        return r;
    }
    std::map<std::string, FieldElement> seen;
    for (const auto& e : knowledge.observed)
        if (const auto* c = std::get_if<Challenge>(&e.message)) seen.emplace(c->sender, c->r);
    for (const auto& id : ids) {
        auto it = seen.find(id);
        if (it == seen.end())
            throw Error(Errc::missing_challenge_knowledge,
                        "attacker never observed the challenge of '" + id + "'");
        r.push_back(it->second);
    }
    return r;
}

}  // namespace detail

/// Per-delivery adversary decision. The insider-forge script touches only
/// the final-broadcast copy addressed to the victim; everything else is
/// delivered unmodified.
inline AdversaryAction adversary_decide(const AdversaryScript& script, const DeliveryEvent& event,
                                        const AttackerKnowledge& knowledge, const HashSuite& suite,
                                        const VariantFlags& flags, SeededRng& rng) {
    if (script.name == "none") return AdversaryAction::deliver();

    const auto* kd = std::get_if<KeyDistribution>(&event.message);
    if (!kd || event.to != script.victim_id) return AdversaryAction::deliver();

    if (script.name == "random-tamper") {
        AdversaryAction action;
        action.kind = AdversaryAction::Kind::replace;
        action.replacement = random_tamper(suite.field, *kd, rng);
        return action;
    }

    if (script.name == "insider-forge") {
        if (!knowledge.credential)
            throw Error(Errc::config_invalid, "insider-forge needs an insider credential");
        std::vector<std::string> ids = detail::session_ids_from(knowledge);
        auto mit = std::find(ids.begin(), ids.end(), script.malicious_id);
        if (mit == ids.end())
            throw Error(Errc::config_invalid, "malicious user is not in the session");
        const std::size_t m = static_cast<std::size_t>(mit - ids.begin());

        ChallengeVector r = detail::assemble_attacker_challenges(knowledge, ids, *kd);
        FieldElement recovered =
            insider_recover_key(suite, knowledge.credential->x, m, r, kd->masks.at(m), flags);

        FieldElement forged_key = script.forged_key_hex
                                      ? fe_from_hex(suite.field, *script.forged_key_hex)
                                      : sample_fe(suite.field, rng);
        AttackPlan plan{script.malicious_id, script.victim_id, forged_key};

        AdversaryAction action;
        action.kind = AdversaryAction::Kind::replace;
        action.replacement = forge_broadcast(suite, *kd, recovered, plan, ids, r);
        action.forged_key_used = forged_key;
        return action;
    }

    throw Error(Errc::config_invalid, "unknown adversary script '" + script.name + "'");
}

inline void validate_adversary(const SessionConfig& config, const AdversaryScript& script) {
    if (script.name == "none") return;
    if (script.name != "insider-forge" && script.name != "random-tamper")
        throw Error(Errc::config_invalid, "unknown adversary script '" + script.name + "'");
    auto in_group = [&](const std::string& id) {
        return std::find(config.members.begin(), config.members.end(), id) !=
               config.members.end();
    };
    if (!in_group(script.victim_id))
        throw Error(Errc::victim_not_in_group, "victim '" + script.victim_id + "'");
    if (script.name == "insider-forge") {
        if (!in_group(script.malicious_id))
            throw Error(Errc::config_invalid, "malicious user must be a group member");
        if (script.malicious_id == script.victim_id)
            throw Error(Errc::config_invalid, "malicious user cannot be its own victim");
    }
}

/// Runs one full session: request, identifier broadcast, challenges, key
/// distribution, member outcomes. Deterministic in (config, adversary, seed).
inline Transcript run_session(const SessionConfig& config, const AdversaryScript& adversary) {
    validate_config(config);
    validate_adversary(config, adversary);

    FieldParamsPtr field = resolve_field(config);
    HashSuite suite = resolve_suite(config, field);
    auto registry = derive_registry(field, config);

    Transcript transcript;
    transcript.config = config;
    transcript.adversary = adversary;
    if (adversary.name == "insider-forge" && adversary.forged_key_hex)
        transcript.forged_key_used_hex = fe_hex(fe_from_hex(field, *adversary.forged_key_hex));

    Kgc kgc(registry, suite, config.flags);
    std::vector<Member> members;
    std::vector<SeededRng> member_rngs;
    for (const auto& id : config.members) {
        members.emplace_back(UserCredential{id, registry.at(id)}, suite, config.flags);
        member_rngs.emplace_back(derive_seed(config.seed, "member:" + id));
    }
    SeededRng kgc_rng(derive_seed(config.seed, "kgc"));
    SeededRng adversary_rng(derive_seed(config.seed, "adversary"));

    AttackerKnowledge knowledge;
    if (adversary.name == "insider-forge")
        knowledge.credential =
            UserCredential{adversary.malicious_id, registry.at(adversary.malicious_id)};

    auto member_index = [&](const std::string& id) {
        for (std::size_t i = 0; i < members.size(); ++i)
            if (members[i].id() == id) return i;
        throw Error(Errc::unknown_id, "'" + id + "' is not a session actor");
    };

    // Delivers one copy through the adversary hook; returns the message as
    // delivered, or nullopt when dropped.
    auto deliver = [&](int round, const std::string& from, const std::string& to,
                       const ProtocolMessage& msg) -> std::optional<ProtocolMessage> {
        DeliveryEvent event{round, from, to, msg, false};
        AdversaryAction action =
            adversary_decide(adversary, event, knowledge, suite, config.flags, adversary_rng);
        if (action.kind == AdversaryAction::Kind::drop) return std::nullopt;
        if (action.kind == AdversaryAction::Kind::replace) {
            event.message = *action.replacement;
            event.tampered = !(event.message == msg);
            if (action.forged_key_used)
                transcript.forged_key_used_hex = fe_hex(*action.forged_key_used);
        }
        if (to == adversary.malicious_id ||
            (adversary.name == "insider-forge" && to == adversary.victim_id))
            knowledge.observed.push_back(event);
        transcript.events.push_back(event);
        return event.message;
    };

    {
        // Round 1: key generation request.
        KeyGenRequest request = initiator_request(config.initiator, config.members, registry);
        auto delivered = deliver(1, config.initiator, kKgcId, request);
        IdentifierBroadcast broadcast = kgc.on_request(std::get<KeyGenRequest>(*delivered));
        transcript.session_ids = broadcast.member_ids;

        // Round 2: identifier broadcast, one copy per member.
        std::vector<Challenge> challenges;
        for (const auto& id : broadcast.member_ids) {
            auto copy = deliver(2, kKgcId, id, broadcast);
            std::size_t i = member_index(id);
            if (auto c = members[i].on_identifier_broadcast(std::get<IdentifierBroadcast>(*copy),
                                                            member_rngs[i]))
                challenges.push_back(std::move(*c));
        }

        // Round 3: challenges to the centre; observable by every other
        // member unless the relay variant is on.
        std::vector<Challenge> received;
        for (const auto& c : challenges) {
            auto copy = deliver(3, c.sender, kKgcId, c);
            received.push_back(std::get<Challenge>(*copy));
            if (!config.flags.kgc_relays_challenges) {
                for (const auto& id : broadcast.member_ids) {
                    if (id == c.sender) continue;
                    auto observed = deliver(3, c.sender, id, c);
                    members[member_index(id)].observe_challenge(std::get<Challenge>(*observed));
                }
            }
        }

        // Round 4: key distribution, one copy per member through the hook.
        KeyDistribution kd = kgc.on_challenges(received, kgc_rng);
        for (const auto& id : broadcast.member_ids) {
            auto copy = deliver(4, kKgcId, id, kd);
            std::size_t i = member_index(id);
            transcript.outcomes.emplace(
                id, members[i].on_key_distribution(std::get<KeyDistribution>(*copy)));
        }
        transcript.kgc_key = kgc.session_key();
    }
    return transcript;
}

}  // namespace hhmzz
