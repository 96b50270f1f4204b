#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hhmzz/field.hpp"
#include "hhmzz/hash.hpp"
#include "hhmzz/protocol.hpp"

namespace hhmzz {

struct SessionConfig {
    std::string prime = "p23";      // "p23", "modp2048", or hex digits
    std::string suite = "toy";      // "standard" | "toy"
    VariantFlags flags;
    std::vector<std::string> members;
    std::uint64_t seed = 0;
    bool insecure_ok = false;
    std::string initiator = "initiator";
};

/// Named primes resolve through the built-in catalogue; anything else is
/// parsed as a hex modulus and must pass the safe-prime check.
inline FieldParamsPtr resolve_field(const SessionConfig& config) {
    if (config.prime == "p23" || config.prime == "modp2048")
        return FieldParams::named(config.prime);
    return FieldParams::make(detail::mpz_from_hex(config.prime), true);
}

inline HashSuite resolve_suite(const SessionConfig& config, FieldParamsPtr field) {
    return HashSuite::make(config.suite, std::move(field), config.insecure_ok);
}

/// Long-term secrets are derived from the session seed so every run is
/// reproducible; each user gets its own stream.
inline FieldElement derive_long_term_secret(const FieldParamsPtr& field, std::uint64_t seed,
                                            const std::string& id) {
    SeededRng rng(derive_seed(seed, "cred:" + id));
    return sample_fe(field, rng);
}

inline std::map<std::string, FieldElement> derive_registry(const FieldParamsPtr& field,
                                                           const SessionConfig& config) {
    std::map<std::string, FieldElement> registry;
    for (const auto& id : config.members)
        registry.emplace(id, derive_long_term_secret(field, config.seed, id));
    return registry;
}

inline void validate_config(const SessionConfig& config) {
    if (config.members.size() < 2)
        throw Error(Errc::config_invalid, "need at least two members");
    for (const auto& id : config.members)
        if (id.empty()) throw Error(Errc::config_invalid, "empty member identifier");
}

}  // namespace hhmzz
