#include <catch2/catch_amalgamated.hpp>

#include "hhmzz/netsim.hpp"
#include "hhmzz/oracle.hpp"

using namespace hhmzz;

namespace {

Transcript toy_session(std::uint64_t seed) {
    SessionConfig config;  // p23 + toy defaults
    config.members = {"a", "b", "c"};
    config.seed = seed;
    return run_session(config, AdversaryScript{});
}

}  // namespace

TEST_CASE("oracle agrees with honest toy transcripts") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto result = oracle_check(Transcript::from_json(toy_session(seed).canonical_json()));
        REQUIRE(result.preconditions_ok);
        REQUIRE(result.diffs.empty());
    }
}

TEST_CASE("oracle flags an altered mask") {
    auto t = toy_session(3);
    for (auto& e : t.events)
        if (auto* kd = std::get_if<KeyDistribution>(&e.message))
            kd->masks[0] = kd->masks[0] + FieldElement(kd->masks[0].params(), 1ul);
    auto result = oracle_check(t);
    REQUIRE(result.preconditions_ok);
    REQUIRE_FALSE(result.diffs.empty());
}

TEST_CASE("oracle refuses large primes and the standard suite") {
    SessionConfig config;
    config.prime = "modp2048";
    config.suite = "standard";
    config.members = {"a", "b"};
    config.seed = 1;
    auto t = run_session(config, AdversaryScript{});
    REQUIRE_FALSE(oracle_check(t).preconditions_ok);
}
