#include <catch2/catch_amalgamated.hpp>

#include "hhmzz/attacks.hpp"
#include "hhmzz/netsim.hpp"
#include "test_util.hpp"

using namespace hhmzz;
using testutil::expect_errc;

namespace {

const KeyDistribution& final_broadcast_to(const Transcript& t, const std::string& id) {
    for (const auto& e : t.events)
        if (e.round == 4 && e.to == id) return std::get<KeyDistribution>(e.message);
    throw std::logic_error("no final broadcast for " + id);
}

ChallengeVector challenges_of(const Transcript& t, const FieldElement& r0) {
    std::map<std::string, FieldElement> seen;
    for (const auto& e : t.events)
        if (e.round == 3 && e.to == kKgcId)
            if (const auto* c = std::get_if<Challenge>(&e.message)) seen.emplace(c->sender, c->r);
    ChallengeVector r{r0};
    for (const auto& id : t.session_ids) r.push_back(seen.at(id));
    return r;
}

}  // namespace

TEST_CASE("forge_mask algebra") {
    auto f = FieldParams::named("p23");
    FieldElement u(f, 6ul), key(f, 10ul);
    REQUIRE(forge_mask(u, key, key) == u);
    REQUIRE(forge_mask(u, key, key + FieldElement(f, 1ul)) == u + FieldElement(f, 1ul));

    SeededRng rng(17);
    auto big = FieldParams::named("modp2048");
    for (int i = 0; i < 1000; ++i) {
        auto share = sample_fe(big, rng);
        auto true_key = sample_fe(big, rng);
        auto forged_key = sample_fe(big, rng);
        auto mask = compute_mask(true_key, share);
        REQUIRE(recover_key(forge_mask(mask, true_key, forged_key), share) == forged_key);
    }
}

TEST_CASE("an insider recovers the centre's key from public values") {
    SessionConfig config;
    config.prime = "modp2048";
    config.suite = "standard";
    config.members = {"A", "B", "C"};
    config.seed = 91;
    auto t = run_session(config, AdversaryScript{});

    const auto& kd = final_broadcast_to(t, "C");
    auto r = challenges_of(t, kd.r0);
    auto field = resolve_field(config);
    auto suite = resolve_suite(config, field);
    auto x_c = derive_long_term_secret(field, config.seed, "C");

    REQUIRE(insider_recover_key(suite, x_c, 2, r, kd.masks[2], config.flags) == t.kgc_key);

    // withholding the real long-term secret defeats the recovery
    SeededRng rng(23);
    int hits = 0;
    for (int i = 0; i < 1000; ++i) {
        auto wrong_x = sample_fe(field, rng);
        if (insider_recover_key(suite, wrong_x, 2, r, kd.masks[2], config.flags) == t.kgc_key)
            ++hits;
    }
    REQUIRE(hits == 0);
}

TEST_CASE("insider recovery in a p=23 toy micro-session matches the oracle key") {
    SessionConfig config;
    config.members = {"A", "B"};
    config.seed = 12;
    auto t = run_session(config, AdversaryScript{});

    const auto& kd = final_broadcast_to(t, "B");
    auto r = challenges_of(t, kd.r0);
    auto field = resolve_field(config);
    auto suite = resolve_suite(config, field);
    auto x_b = derive_long_term_secret(field, config.seed, "B");
    REQUIRE(insider_recover_key(suite, x_b, 1, r, kd.masks[1], config.flags) == t.kgc_key);
}

TEST_CASE("forged broadcast is accepted by the victim and minimal") {
    SessionConfig config;
    config.prime = "modp2048";
    config.suite = "standard";
    config.members = {"A", "B", "C"};
    config.seed = 77;
    auto t = run_session(config, AdversaryScript{});

    auto field = resolve_field(config);
    auto suite = resolve_suite(config, field);
    const auto& original = final_broadcast_to(t, "A");
    auto r = challenges_of(t, original.r0);

    SeededRng rng(5);
    AttackPlan plan{"C", "A", sample_fe(field, rng)};
    auto forged = forge_broadcast(suite, original, t.kgc_key, plan, t.session_ids, r);

    // differs in exactly the tag and the victim's mask
    REQUIRE(forged.auth != original.auth);
    REQUIRE(forged.r0 == original.r0);
    REQUIRE(forged.masks[0] != original.masks[0]);
    REQUIRE(forged.masks[1] == original.masks[1]);
    REQUIRE(forged.masks[2] == original.masks[2]);

    // the victim's step-5 math accepts the forged key
    auto x_a = derive_long_term_secret(field, config.seed, "A");
    auto share = compute_share(suite, x_a, r[1], r, config.flags);
    auto key = recover_key(forged.masks[0], share);
    REQUIRE(key == plan.forged_key);
    REQUIRE(verify_auth(suite, forged.auth, key, t.session_ids, r, forged.masks));

    // fixed point: forging the true key changes nothing
    AttackPlan identity_plan{"C", "A", t.kgc_key};
    REQUIRE(forge_broadcast(suite, original, t.kgc_key, identity_plan, t.session_ids, r) ==
            original);

    AttackPlan bad_plan{"C", "Z", plan.forged_key};
    expect_errc(Errc::victim_not_in_group, [&] {
        forge_broadcast(suite, original, t.kgc_key, bad_plan, t.session_ids, r);
    });
}

TEST_CASE("the attack also works when the KGC relays the challenges") {
    SessionConfig config;
    config.prime = "modp2048";
    config.suite = "standard";
    config.members = {"A", "B", "C"};
    config.seed = 55;
    config.flags.kgc_relays_challenges = true;

    AdversaryScript script;
    script.name = "insider-forge";
    script.malicious_id = "B";
    script.victim_id = "C";
    auto t = run_session(config, script);
    REQUIRE(t.outcomes.at("C").accepted());
    REQUIRE(*t.outcomes.at("C").key != t.kgc_key);
    REQUIRE(*t.outcomes.at("A").key == t.kgc_key);
}

TEST_CASE("random_tamper changes exactly one field") {
    SessionConfig config;
    config.prime = "modp2048";
    config.suite = "standard";
    config.members = {"A", "B", "C"};
    config.seed = 31;
    auto t = run_session(config, AdversaryScript{});
    const auto& original = final_broadcast_to(t, "A");
    auto field = resolve_field(config);

    SeededRng rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        auto tampered = random_tamper(field, original, rng);
        int changed = 0;
        if (tampered.auth != original.auth) ++changed;
        if (tampered.r0 != original.r0) ++changed;
        for (std::size_t i = 0; i < original.masks.size(); ++i)
            if (tampered.masks[i] != original.masks[i]) ++changed;
        REQUIRE(changed == 1);
        REQUIRE(tampered.relayed_challenges == original.relayed_challenges);
    }
}
