#pragma once

/**
 * @file oracle.hpp
 * @brief Independent straight-line recomputation of the key distribution
 *        and recovery steps for tiny toy-suite sessions. Deliberately
 *        duplicates the math (inline, no shared code with the protocol
 *        algebra beyond the field layer) so it can serve as an oracle in
 *        equivalence tests.
 */

#include <string>
#include <vector>

#include "hhmzz/config.hpp"
#include "hhmzz/transcript.hpp"

namespace hhmzz {

struct OracleResult {
    bool preconditions_ok = false;
    std::vector<std::string> diffs;

    bool ok() const { return preconditions_ok && diffs.empty(); }
};

inline OracleResult oracle_check(const Transcript& t) {
    OracleResult result;
    FieldParamsPtr field = resolve_field(t.config);
    if (t.config.suite != "toy" || field->bits() > 16) return result;  // guard: exit 2 upstream
    result.preconditions_ok = true;

    const mpz_class& p = field->p();
    auto toy_hash = [&](const Bytes& msg, unsigned tag) {
        mpz_class acc = tag;
        for (auto b : msg) acc += b;
        return mpz_class(acc % p);
    };
    auto append = [](Bytes& msg, const Bytes& part) {
        msg.insert(msg.end(), part.begin(), part.end());
    };

    const std::vector<std::string>& ids = t.session_ids;
    const std::size_t t_count = ids.size();
    const mpz_class key = t.kgc_key.value();

    // Ground-truth challenges: what the centre received in round 3.
    std::map<std::string, mpz_class> challenges;
    for (const auto& e : t.events)
        if (e.round == 3 && e.to == "KGC")
            if (const auto* c = std::get_if<Challenge>(&e.message))
                challenges[c->sender] = c->r.value();

    for (std::size_t i = 0; i < t_count; ++i) {
        const std::string& id = ids[i];
        const KeyDistribution* kd = nullptr;
        for (const auto& e : t.events)
            if (e.round == 4 && e.to == id) kd = std::get_if<KeyDistribution>(&e.message);
        if (!kd) {
            result.diffs.push_back("no key distribution copy for " + id);
            continue;
        }

        std::vector<mpz_class> r;
        r.push_back(kd->r0.value());
        for (const auto& mid : ids) {
            auto it = challenges.find(mid);
            if (it == challenges.end()) {
                result.diffs.push_back("missing round-3 challenge of " + mid);
                return result;
            }
            r.push_back(it->second);
        }

        // Step 4b / 5a, straight line: evaluation point, powers, share.
        mpz_class x = derive_long_term_secret(field, t.config.seed, id).value();
        Bytes h1_input;
        append(h1_input, encode_fe(FieldElement(field, x)));
        append(h1_input, encode_fe(FieldElement(field, r[i + 1])));
        append(h1_input, encode_fe(FieldElement(field, r[0])));
        mpz_class e = toy_hash(h1_input, 1);
        if (!t.config.flags.h1_only_evaluation_point) e = (e + x) % p;

        mpz_class share = 0;
        mpz_class power = 1;
        for (std::size_t k = 0; k <= t_count; ++k) {
            share = (share + power * r[k]) % p;
            power = (power * e) % p;
        }

        mpz_class mask = ((key - share) % p + p) % p;
        if (mask != kd->masks.at(i).value())
            result.diffs.push_back("mask mismatch for " + id);

        mpz_class recovered = (kd->masks.at(i).value() + share) % p;
        auto oit = t.outcomes.find(id);
        if (oit == t.outcomes.end() || !oit->second.key) {
            result.diffs.push_back("no recorded key for " + id);
        } else if (recovered != oit->second.key->value()) {
            result.diffs.push_back("recovered key mismatch for " + id);
        }
        if (recovered != key) result.diffs.push_back("key disagreement for " + id);

        // Step 4c, straight line: tag over S || ids || r || masks.
        Bytes tag_input = encode_fe(FieldElement(field, key));
        for (const auto& mid : ids) {
            tag_input.push_back(static_cast<std::uint8_t>(mid.size() >> 8));
            tag_input.push_back(static_cast<std::uint8_t>(mid.size() & 0xff));
            tag_input.insert(tag_input.end(), mid.begin(), mid.end());
        }
        for (const auto& rv : r) append(tag_input, encode_fe(FieldElement(field, rv)));
        for (const auto& u : kd->masks) append(tag_input, encode_fe(u));
        if (toy_hash(tag_input, 2) != kd->auth.value())
            result.diffs.push_back("auth tag mismatch for " + id);
    }
    return result;
}

}  // namespace hhmzz
