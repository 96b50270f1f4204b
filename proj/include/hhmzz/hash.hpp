#pragma once

/**
 * @file hash.hpp
 * @brief The two agreed hash functions h1, h2 mapping byte strings into the
 *        field, domain-separated by a leading tag byte (0x01 / 0x02).
 *
 * "standard" expands the tagged message with counter-mode SHA-256 to
 * bitlen(p)+128 bits and reduces mod p, so the reduction bias is below
 * 2^-128. "toy" is (sum of message bytes + tag) mod p; it exists so
 * tiny-field sessions are hand-checkable and is refused for primes wider
 * than 16 bits unless explicitly allowed.
 */

#include <openssl/evp.h>

#include <string>

#include "hhmzz/field.hpp"

namespace hhmzz {

struct HashSuite {
    enum class Kind { standard, toy };

    Kind kind;
    FieldParamsPtr field;

    static HashSuite make(const std::string& name, FieldParamsPtr field, bool insecure_ok = false) {
        if (name == "standard") return HashSuite{Kind::standard, std::move(field)};
        if (name == "toy") {
            if (field->bits() > 16 && !insecure_ok)
                throw Error(Errc::config_invalid,
                            "toy suite with a >16-bit prime requires insecure-ok");
            return HashSuite{Kind::toy, std::move(field)};
        }
        throw Error(Errc::config_invalid, "unknown hash suite '" + name + "'");
    }

    const char* name() const { return kind == Kind::standard ? "standard" : "toy"; }
};

namespace detail {

inline Bytes sha256(const Bytes& msg) {
    Bytes out(32);
    unsigned int len = 0;
    EVP_Digest(msg.data(), msg.size(), out.data(), &len, EVP_sha256(), nullptr);
    return out;
}

inline FieldElement hash_to_field(const HashSuite& suite, std::uint8_t tag, const Bytes& msg) {
    const auto& params = suite.field;
    if (suite.kind == HashSuite::Kind::toy) {
        mpz_class acc = tag;
        for (auto b : msg) acc += b;
        return FieldElement(params, acc);
    }
    // Counter-mode expansion: block_c = SHA256(tag || be32(c) || msg),
    // truncated to bitlen(p)+128 bits, interpreted big-endian, reduced.
    const std::size_t out_len = (params->bits() + 128 + 7) / 8;
    Bytes stream;
    stream.reserve(out_len + 32);
    Bytes block_input;
    block_input.reserve(5 + msg.size());
    for (std::uint32_t counter = 0; stream.size() < out_len; ++counter) {
        block_input.clear();
        block_input.push_back(tag);
        block_input.push_back(static_cast<std::uint8_t>(counter >> 24));
        block_input.push_back(static_cast<std::uint8_t>(counter >> 16));
        block_input.push_back(static_cast<std::uint8_t>(counter >> 8));
        block_input.push_back(static_cast<std::uint8_t>(counter));
        block_input.insert(block_input.end(), msg.begin(), msg.end());
        Bytes digest = sha256(block_input);
        stream.insert(stream.end(), digest.begin(), digest.end());
    }
    stream.resize(out_len);
    mpz_class v;
    mpz_import(v.get_mpz_t(), stream.size(), 1, 1, 1, 0, stream.data());
    return FieldElement(params, v);
}

}  // namespace detail

inline FieldElement h1(const HashSuite& suite, const Bytes& msg) {
    return detail::hash_to_field(suite, 0x01, msg);
}

inline FieldElement h2(const HashSuite& suite, const Bytes& msg) {
    return detail::hash_to_field(suite, 0x02, msg);
}

}  // namespace hhmzz
