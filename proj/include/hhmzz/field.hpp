#pragma once

/**
 * @file field.hpp
 * @brief Prime-field arithmetic over Z_p for a configurable safe prime,
 *        with the canonical fixed-width big-endian byte encoding used
 *        everywhere field elements are hashed or serialized.
 */

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "hhmzz/errors.hpp"
#include "hhmzz/rng.hpp"

namespace hhmzz {

using Bytes = std::vector<std::uint8_t>;

namespace detail {

/// Miller-Rabin with deterministically seeded bases (64 rounds gives
/// error < 2^-128). Small candidates are handled by trial division.
inline bool miller_rabin(const mpz_class& n, int rounds = 64) {
    if (n < 2) return false;
    for (unsigned long q : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul, 37ul}) {
        if (n == q) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), q)) return false;
    }

    mpz_class d = n - 1;
    unsigned long s = 0;
    while (mpz_even_p(d.get_mpz_t())) {
        d >>= 1;
        ++s;
    }

    gmp_randstate_t st;
    gmp_randinit_default(st);
    gmp_randseed_ui(st, 0x4d52u);  // fixed seed: reproducible verdicts
    mpz_class a, x, range = n - 3;
    bool prime = true;
    for (int i = 0; i < rounds && prime; ++i) {
        mpz_urandomm(a.get_mpz_t(), st, range.get_mpz_t());
        a += 2;  // a in [2, n-2]
        mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (unsigned long r = 1; r < s; ++r) {
            x = (x * x) % n;
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) prime = false;
    }
    gmp_randclear(st);
    return prime;
}

inline mpz_class mpz_from_hex(const std::string& hex) {
    mpz_class v;
    if (hex.empty() || mpz_set_str(v.get_mpz_t(), hex.c_str(), 16) != 0)
        throw Error(Errc::config_invalid, "bad hex integer '" + hex + "'");
    return v;
}

// RFC 3526 group 14 (2048-bit MODP) modulus.
inline const char* kModp2048Hex =
    "FFFFFFFFFFFFFFFFC90FDAA22168C234C4C6628B80DC1CD129024E088A67CC74"
    "020BBEA63B139B22514A08798E3404DDEF9519B3CD3A431B302B0A6DF25F1437"
    "4FE1356D6D51C245E485B576625E7EC6F44C42E9A637ED6B0BFF5CB6F406B7ED"
    "EE386BFB5A899FA5AE9F24117C4B1FE649286651ECE45B3DC2007CB8A163BF05"
    "98DA48361C55D39A69163FA8FD24CF5F83655D23DCA3AD961C62F356208552BB"
    "9ED529077096966D670C354E4ABC9804F1746C08CA18217C32905E462E36CE3B"
    "E39E772C180E86039B2783A2EC07A28FB5C55DF06F4C52C9DE2BCBF695581718"
    "3995497CEA956AE515D2261898FA051015728E5A8AACAA68FFFFFFFFFFFFFFFF";

}  // namespace detail

class FieldParams;
using FieldParamsPtr = std::shared_ptr<const FieldParams>;

/// Modulus plus the derived encoding width. Immutable once constructed.
class FieldParams {
public:
    static FieldParamsPtr make(const mpz_class& p, bool safe_prime_required) {
        if (p < 5 || mpz_even_p(p.get_mpz_t()))
            throw Error(Errc::not_prime, "p must be odd and >= 5");
        if (!detail::miller_rabin(p))
            throw Error(Errc::not_prime, p.get_str() + " is composite");
        if (safe_prime_required) {
            mpz_class q = (p - 1) / 2;
            if (!detail::miller_rabin(q))
                throw Error(Errc::not_safe_prime, "(p-1)/2 is composite");
        }
        return FieldParamsPtr(new FieldParams(p));
    }

    /// Built-in primes by name ("p23", "modp2048"); construction is memoized
    /// so repeated sessions do not re-run the primality checks.
    static FieldParamsPtr named(const std::string& name) {
        static std::map<std::string, FieldParamsPtr> cache;
        auto it = cache.find(name);
        if (it != cache.end()) return it->second;

        FieldParamsPtr params;
        if (name == "p23") {
            params = make(23, true);
        } else if (name == "modp2048") {
            params = make(detail::mpz_from_hex(detail::kModp2048Hex), true);
        } else {
            throw Error(Errc::config_invalid, "unknown prime name '" + name + "'");
        }
        cache.emplace(name, params);
        return params;
    }

    const mpz_class& p() const { return p_; }
    std::size_t bits() const { return bits_; }
    std::size_t byte_width() const { return byte_width_; }

    bool same_field(const FieldParams& other) const { return p_ == other.p_; }

    std::string p_hex() const {
        std::string s = p_.get_str(16);
        for (auto& c : s) c = static_cast<char>(std::tolower(c));
        return s;
    }

private:
    explicit FieldParams(mpz_class p)
        : p_(std::move(p)),
          bits_(mpz_sizeinbase(p_.get_mpz_t(), 2)),
          byte_width_((bits_ + 7) / 8) {}

    mpz_class p_;
    std::size_t bits_;
    std::size_t byte_width_;
};

/// Residue in [0, p-1]; always canonical, bound to one FieldParams.
class FieldElement {
public:
    FieldElement() = default;

    FieldElement(FieldParamsPtr params, const mpz_class& value) : params_(std::move(params)) {
        mpz_mod(value_.get_mpz_t(), value.get_mpz_t(), params_->p().get_mpz_t());
    }

    FieldElement(FieldParamsPtr params, unsigned long value)
        : FieldElement(std::move(params), mpz_class(value)) {}

    const mpz_class& value() const { return value_; }
    const FieldParamsPtr& params() const { return params_; }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        check_same(a, b);
        return FieldElement(a.params_, a.value_ + b.value_);
    }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
        check_same(a, b);
        return FieldElement(a.params_, a.value_ - b.value_);
    }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        check_same(a, b);
        return FieldElement(a.params_, a.value_ * b.value_);
    }

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.value_ == b.value_ &&
               (a.params_ == b.params_ ||
                (a.params_ && b.params_ && a.params_->same_field(*b.params_)));
    }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

private:
    static void check_same(const FieldElement& a, const FieldElement& b) {
        if (!a.params_ || !b.params_ || !a.params_->same_field(*b.params_))
            throw Error(Errc::field_mismatch, "operands belong to different fields");
    }

    FieldParamsPtr params_;
    mpz_class value_;
};

/// Fixed-width big-endian encoding; injective over [0, p-1].
inline Bytes encode_fe(const FieldElement& a) {
    Bytes out(a.params()->byte_width(), 0);
    if (a.value() == 0) return out;
    std::size_t count = (mpz_sizeinbase(a.value().get_mpz_t(), 2) + 7) / 8;
    Bytes tmp(count);
    mpz_export(tmp.data(), &count, 1, 1, 1, 0, a.value().get_mpz_t());
    std::copy(tmp.begin(), tmp.end(), out.begin() + (out.size() - tmp.size()));
    return out;
}

inline FieldElement decode_fe(const FieldParamsPtr& params, const Bytes& b) {
    if (b.size() != params->byte_width())
        throw Error(Errc::bad_length, "expected " + std::to_string(params->byte_width()) +
                                          " bytes, got " + std::to_string(b.size()));
    mpz_class v;
    mpz_import(v.get_mpz_t(), b.size(), 1, 1, 1, 0, b.data());
    if (v >= params->p()) throw Error(Errc::out_of_range, "value >= p");
    return FieldElement(params, v);
}

/// Uniform draw via rejection sampling on byte_width-wide draws (top byte
/// masked to the modulus bit length so rejection stays cheap).
inline FieldElement sample_fe(const FieldParamsPtr& params, SeededRng& rng) {
    const std::size_t width = params->byte_width();
    const unsigned top_bits = static_cast<unsigned>(params->bits() - 8 * (width - 1));
    const std::uint8_t mask = static_cast<std::uint8_t>(0xff >> (8 - top_bits));
    Bytes buf(width);
    mpz_class v;
    for (;;) {
        rng.fill(buf);
        buf[0] &= mask;
        mpz_import(v.get_mpz_t(), buf.size(), 1, 1, 1, 0, buf.data());
        if (v < params->p()) return FieldElement(params, v);
    }
}

inline std::string to_hex(const Bytes& b) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(b.size() * 2);
    for (auto byte : b) {
        out.push_back(digits[byte >> 4]);
        out.push_back(digits[byte & 0xf]);
    }
    return out;
}

inline Bytes from_hex(const std::string& s) {
    if (s.size() % 2 != 0) throw Error(Errc::bad_length, "odd hex length");
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw Error(Errc::malformed_transcript, "bad hex digit");
    };
    Bytes out(s.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<std::uint8_t>((nibble(s[2 * i]) << 4) | nibble(s[2 * i + 1]));
    return out;
}

inline std::string fe_hex(const FieldElement& a) { return to_hex(encode_fe(a)); }

inline FieldElement fe_from_hex(const FieldParamsPtr& params, const std::string& hex) {
    return decode_fe(params, from_hex(hex));
}

}  // namespace hhmzz
