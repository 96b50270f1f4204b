#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace hhmzz {

/// Deterministic byte stream. One stream per actor; never shared.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : gen_(seed) {}

    std::uint8_t next_byte() {
        if (pending_ == 0) {
            buffer_ = gen_();
            pending_ = 8;
        }
        std::uint8_t b = static_cast<std::uint8_t>(buffer_ & 0xff);
        buffer_ >>= 8;
        --pending_;
        return b;
    }

    void fill(std::vector<std::uint8_t>& out) {
        for (auto& b : out) b = next_byte();
    }

    std::uint64_t next_u64() {
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v = (v << 8) | next_byte();
        return v;
    }

private:
    std::mt19937_64 gen_;
    std::uint64_t buffer_ = 0;
    int pending_ = 0;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Independent per-actor sub-stream seed: FNV-1a over the label, mixed with
/// the session seed. Stable across platforms and runs.
inline std::uint64_t derive_seed(std::uint64_t session_seed, std::string_view label) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : label) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return splitmix64(session_seed ^ h);
}

}  // namespace hhmzz
