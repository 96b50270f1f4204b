#pragma once

/**
 * @file transcript.hpp
 * @brief Ordered, tamper-annotated record of a session, with a canonical
 *        JSON form (fixed key order, no insignificant whitespace) and an
 *        offline verifier that replays every member's tag check without
 *        access to any secrets.
 */

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hhmzz/actors.hpp"
#include "hhmzz/config.hpp"
#include "hhmzz/messages.hpp"

namespace hhmzz {

using Json = nlohmann::ordered_json;

struct DeliveryEvent {
    int round = 0;
    std::string from;
    std::string to;
    ProtocolMessage message;
    bool tampered = false;
};

struct AdversaryScript {
    std::string name = "none";  // "none" | "insider-forge" | "random-tamper"
    std::string malicious_id;
    std::string victim_id;
    std::optional<std::string> forged_key_hex;  // absent means "random"
};

struct Transcript {
    SessionConfig config;
    AdversaryScript adversary;
    std::optional<std::string> forged_key_used_hex;  // actual S*, for reproducibility
    std::vector<std::string> session_ids;            // canonical member order
    std::vector<DeliveryEvent> events;
    std::map<std::string, Outcome> outcomes;
    FieldElement kgc_key;

    std::string canonical_json() const;
    static Transcript from_json(const std::string& text);
};

namespace detail {

inline Json payload_to_json(const ProtocolMessage& m) {
    Json j;
    if (const auto* req = std::get_if<KeyGenRequest>(&m)) {
        j["initiator"] = req->initiator;
        j["member_ids"] = req->member_ids;
    } else if (const auto* ib = std::get_if<IdentifierBroadcast>(&m)) {
        j["member_ids"] = ib->member_ids;
    } else if (const auto* c = std::get_if<Challenge>(&m)) {
        j["sender"] = c->sender;
        j["r"] = fe_hex(c->r);
    } else {
        const auto& kd = std::get<KeyDistribution>(m);
        j["auth"] = fe_hex(kd.auth);
        j["r0"] = fe_hex(kd.r0);
        Json masks = Json::array();
        for (const auto& u : kd.masks) masks.push_back(fe_hex(u));
        j["masks"] = std::move(masks);
        if (kd.relayed_challenges) {
            Json relayed = Json::array();
            for (const auto& r : *kd.relayed_challenges) relayed.push_back(fe_hex(r));
            j["relayed"] = std::move(relayed);
        } else {
            j["relayed"] = nullptr;
        }
    }
    return j;
}

inline ProtocolMessage payload_from_json(const std::string& type, const Json& j,
                                         const FieldParamsPtr& field) {
    auto fe = [&](const Json& v) { return fe_from_hex(field, v.get<std::string>()); };
    if (type == "key_gen_request")
        return KeyGenRequest{j.at("initiator").get<std::string>(),
                             j.at("member_ids").get<std::vector<std::string>>()};
    if (type == "identifier_broadcast")
        return IdentifierBroadcast{j.at("member_ids").get<std::vector<std::string>>()};
    if (type == "challenge") return Challenge{j.at("sender").get<std::string>(), fe(j.at("r"))};
    if (type == "key_distribution") {
        KeyDistribution kd;
        kd.auth = fe(j.at("auth"));
        kd.r0 = fe(j.at("r0"));
        for (const auto& u : j.at("masks")) kd.masks.push_back(fe(u));
        if (!j.at("relayed").is_null()) {
            kd.relayed_challenges.emplace();
            for (const auto& r : j.at("relayed")) kd.relayed_challenges->push_back(fe(r));
        }
        return kd;
    }
    throw Error(Errc::malformed_transcript, "unknown event type '" + type + "'");
}

}  // namespace detail

inline std::string Transcript::canonical_json() const {
    Json session;
    session["prime"] = config.prime;
    session["prime_hex"] = resolve_field(config)->p_hex();
    session["suite"] = config.suite;
    session["relay_challenges"] = config.flags.kgc_relays_challenges;
    session["h1_only"] = config.flags.h1_only_evaluation_point;
    session["seed"] = config.seed;
    session["insecure_ok"] = config.insecure_ok;
    session["initiator"] = config.initiator;
    session["members"] = session_ids;

    Json adv;
    adv["name"] = adversary.name;
    adv["malicious"] = adversary.name == "none" ? Json(nullptr) : Json(adversary.malicious_id);
    adv["victim"] = adversary.name == "none" ? Json(nullptr) : Json(adversary.victim_id);
    adv["forged_key"] = forged_key_used_hex ? Json(*forged_key_used_hex) : Json(nullptr);
    session["adversary"] = std::move(adv);

    Json evs = Json::array();
    for (const auto& e : events) {
        Json je;
        je["round"] = e.round;
        je["type"] = message_type_name(e.message);
        je["from"] = e.from;
        je["to"] = e.to;
        je["payload"] = detail::payload_to_json(e.message);
        je["tampered"] = e.tampered;
        evs.push_back(std::move(je));
    }

    Json outs;
    for (const auto& id : session_ids) {
        const Outcome& o = outcomes.at(id);
        Json jo;
        jo["status"] = o.accepted() ? "accepted" : "rejected";
        jo["key"] = o.key ? Json(fe_hex(*o.key)) : Json(nullptr);
        if (!o.accepted()) jo["reason"] = o.reason;
        outs[id] = std::move(jo);
    }

    Json root;
    root["session"] = std::move(session);
    root["events"] = std::move(evs);
    root["outcomes"] = std::move(outs);
    root["kgc_key"] = fe_hex(kgc_key);
    return root.dump();
}

inline Transcript Transcript::from_json(const std::string& text) {
    try {
        Json root = Json::parse(text);
        Transcript t;
        const Json& session = root.at("session");
        t.config.prime = session.at("prime").get<std::string>();
        t.config.suite = session.at("suite").get<std::string>();
        t.config.flags.kgc_relays_challenges = session.at("relay_challenges").get<bool>();
        t.config.flags.h1_only_evaluation_point = session.at("h1_only").get<bool>();
        t.config.seed = session.at("seed").get<std::uint64_t>();
        t.config.insecure_ok = session.at("insecure_ok").get<bool>();
        t.config.initiator = session.at("initiator").get<std::string>();
        t.session_ids = session.at("members").get<std::vector<std::string>>();
        t.config.members = t.session_ids;

        FieldParamsPtr field = resolve_field(t.config);
        if (field->p_hex() != session.at("prime_hex").get<std::string>())
            throw Error(Errc::malformed_transcript, "prime_hex does not match prime");

        const Json& adv = session.at("adversary");
        t.adversary.name = adv.at("name").get<std::string>();
        if (!adv.at("malicious").is_null())
            t.adversary.malicious_id = adv.at("malicious").get<std::string>();
        if (!adv.at("victim").is_null())
            t.adversary.victim_id = adv.at("victim").get<std::string>();
        if (!adv.at("forged_key").is_null())
            t.forged_key_used_hex = adv.at("forged_key").get<std::string>();

        for (const Json& je : root.at("events")) {
            DeliveryEvent e;
            e.round = je.at("round").get<int>();
            e.from = je.at("from").get<std::string>();
            e.to = je.at("to").get<std::string>();
            e.tampered = je.at("tampered").get<bool>();
            e.message =
                detail::payload_from_json(je.at("type").get<std::string>(), je.at("payload"), field);
            t.events.push_back(std::move(e));
        }

        for (const auto& [id, jo] : root.at("outcomes").items()) {
            Outcome o;
            o.status = jo.at("status").get<std::string>() == "accepted"
                           ? Outcome::Status::accepted
                           : Outcome::Status::rejected;
            if (!jo.at("key").is_null())
                o.key = fe_from_hex(field, jo.at("key").get<std::string>());
            if (jo.contains("reason")) o.reason = jo.at("reason").get<std::string>();
            t.outcomes.emplace(id, std::move(o));
        }

        t.kgc_key = fe_from_hex(field, root.at("kgc_key").get<std::string>());
        return t;
    } catch (const Error& e) {
        if (e.code() == Errc::malformed_transcript) throw;
        throw Error(Errc::malformed_transcript, e.what());
    } catch (const std::exception& e) {
        throw Error(Errc::malformed_transcript, e.what());
    }
}

struct MemberReport {
    std::string id;
    bool accepted = false;
    bool reproducible = false;      // recorded outcome replays from the member's view
    bool matches_kgc_key = false;   // accepted key equals the centre's key
};

struct ForgeryWitness {
    std::string victim_id;
    std::string accepted_key_hex;
};

struct Report {
    std::vector<MemberReport> members;
    std::vector<ForgeryWitness> witnesses;

    bool all_reproducible() const {
        for (const auto& m : members)
            if (!m.reproducible) return false;
        return true;
    }
    bool has_forgery() const { return !witnesses.empty(); }
};

/// Offline re-execution of the step-5 tag check per member, using only
/// public transcript data plus the recorded candidate keys.
inline Report verify_transcript(const Transcript& t) {
    FieldParamsPtr field = resolve_field(t.config);
    HashSuite suite = HashSuite::make(t.config.suite, field, /*insecure_ok=*/true);

    Report report;
    for (std::size_t i = 0; i < t.session_ids.size(); ++i) {
        const std::string& id = t.session_ids[i];
        MemberReport mr;
        mr.id = id;

        auto oit = t.outcomes.find(id);
        if (oit == t.outcomes.end())
            throw Error(Errc::malformed_transcript, "no outcome for member '" + id + "'");
        const Outcome& outcome = oit->second;
        mr.accepted = outcome.accepted();

        const KeyDistribution* kd = nullptr;
        std::map<std::string, FieldElement> challenges;
        for (const auto& e : t.events) {
            if (e.round == 4 && e.to == id) kd = std::get_if<KeyDistribution>(&e.message);
            if (e.round == 3 && (e.to == id || e.from == id)) {
                if (const auto* c = std::get_if<Challenge>(&e.message))
                    challenges.emplace(c->sender, c->r);
            }
        }
        if (!kd) throw Error(Errc::malformed_transcript, "no key distribution for '" + id + "'");
        if (kd->masks.size() != t.session_ids.size())
            throw Error(Errc::malformed_transcript, "mask count mismatch");

        ChallengeVector r;
        r.push_back(kd->r0);
        if (kd->relayed_challenges) {
            r.insert(r.end(), kd->relayed_challenges->begin(), kd->relayed_challenges->end());
        } else {
            for (const auto& mid : t.session_ids) {
                auto cit = challenges.find(mid);
                if (cit == challenges.end())
                    throw Error(Errc::malformed_transcript,
                                "member '" + id + "' view lacks challenge of '" + mid + "'");
                r.push_back(cit->second);
            }
        }
        if (r.size() != t.session_ids.size() + 1)
            throw Error(Errc::malformed_transcript, "challenge vector arity mismatch");

        if (outcome.key) {
            bool auth_ok = verify_auth(suite, kd->auth, *outcome.key, t.session_ids, r, kd->masks);
            mr.reproducible = auth_ok == outcome.accepted();
            mr.matches_kgc_key = outcome.accepted() && *outcome.key == t.kgc_key;
            if (outcome.accepted() && auth_ok && *outcome.key != t.kgc_key)
                report.witnesses.push_back({id, fe_hex(*outcome.key)});
        }
        report.members.push_back(std::move(mr));
    }
    return report;
}

}  // namespace hhmzz
