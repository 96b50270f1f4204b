#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hhmzz/field.hpp"

namespace hhmzz {

struct KeyGenRequest {
    std::string initiator;
    std::vector<std::string> member_ids;  // canonical (lexicographic) order

    friend bool operator==(const KeyGenRequest&, const KeyGenRequest&) = default;
};

struct IdentifierBroadcast {
    std::vector<std::string> member_ids;

    friend bool operator==(const IdentifierBroadcast&, const IdentifierBroadcast&) = default;
};

struct Challenge {
    std::string sender;
    FieldElement r;

    friend bool operator==(const Challenge&, const Challenge&) = default;
};

struct KeyDistribution {
    FieldElement auth;
    FieldElement r0;
    std::vector<FieldElement> masks;  // session member order
    std::optional<std::vector<FieldElement>> relayed_challenges;  // iff relay variant

    friend bool operator==(const KeyDistribution&, const KeyDistribution&) = default;
};

using ProtocolMessage = std::variant<KeyGenRequest, IdentifierBroadcast, Challenge, KeyDistribution>;

inline const char* message_type_name(const ProtocolMessage& m) {
    switch (m.index()) {
        case 0: return "key_gen_request";
        case 1: return "identifier_broadcast";
        case 2: return "challenge";
        default: return "key_distribution";
    }
}

}  // namespace hhmzz
