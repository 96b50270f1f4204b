#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "hhmzz/protocol.hpp"
#include "test_util.hpp"

using namespace hhmzz;
using testutil::expect_errc;

namespace {

FieldParamsPtr p23() { return FieldParams::named("p23"); }
HashSuite toy23() { return HashSuite::make("toy", p23()); }

FieldElement fe(const FieldParamsPtr& f, unsigned long v) { return FieldElement(f, v); }

std::vector<FieldElement> fes(const FieldParamsPtr& f, std::initializer_list<unsigned long> vs) {
    std::vector<FieldElement> out;
    for (auto v : vs) out.emplace_back(f, v);
    return out;
}

}  // namespace

TEST_CASE("vandermonde vector") {
    auto f = p23();
    REQUIRE(vandermonde_vector(fe(f, 2), 3) == fes(f, {1, 2, 4, 8}));
    REQUIRE(vandermonde_vector(fe(f, 0), 4) == fes(f, {1, 0, 0, 0, 0}));
    REQUIRE(vandermonde_vector(fe(f, 1), 3) == fes(f, {1, 1, 1, 1}));
    expect_errc(Errc::degree_too_small, [&] { vandermonde_vector(fe(f, 2), 1); });
}

TEST_CASE("vandermonde matches the modular exponentiation oracle") {
    auto f = p23();
    for (unsigned long x = 0; x < 23; ++x) {
        for (std::size_t m : {2u, 3u, 4u}) {
            auto v = vandermonde_vector(fe(f, x), m);
            REQUIRE(v.size() == m + 1);
            for (std::size_t k = 0; k <= m; ++k) {
                mpz_class expected, base = x, exp = k;
                mpz_powm(expected.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(),
                         f->p().get_mpz_t());
                if (x == 0 && k == 0) expected = 1;
                REQUIRE(v[k].value() == expected);
            }
        }
    }
}

TEST_CASE("inner product") {
    auto f = p23();
    REQUIRE(inner_product(fes(f, {1, 2, 4}), fes(f, {5, 6, 7})) == fe(f, 22));
    REQUIRE(inner_product(fes(f, {9, 13, 21}), fes(f, {0, 0, 0})) == fe(f, 0));
    REQUIRE(inner_product(fes(f, {1, 0, 0}), fes(f, {17, 4, 9})) == fe(f, 17));
    expect_errc(Errc::length_mismatch,
                [&] { inner_product(fes(f, {1, 2}), fes(f, {1, 2, 3})); });
}

TEST_CASE("evaluation point, base and h1-only variants") {
    auto suite = toy23();
    auto f = suite.field;
    VariantFlags base, h1_only;
    h1_only.h1_only_evaluation_point = true;

    auto e_base = evaluation_point(suite, fe(f, 3), fe(f, 5), fe(f, 7), base);
    REQUIRE(e_base == fe(f, 19));
    auto e_hash = evaluation_point(suite, fe(f, 3), fe(f, 5), fe(f, 7), h1_only);
    REQUIRE(e_hash == fe(f, 16));
    REQUIRE(evaluation_point(suite, fe(f, 3), fe(f, 5), fe(f, 7), base) == e_base);
}

TEST_CASE("share computation matches the hand-worked example") {
    auto suite = toy23();
    auto f = suite.field;
    // x=3, r=(7,5,2): evaluation point 19, v_2(19)=(1,19,16),
    // <(1,19,16),(7,5,2)> = 7+95+32 = 134 = 19 mod 23
    auto share = compute_share(suite, fe(f, 3), fe(f, 5), fes(f, {7, 5, 2}), {});
    REQUIRE(share == fe(f, 19));
    REQUIRE(compute_share(suite, fe(f, 3), fe(f, 0), fes(f, {0, 0, 0}), {}) == fe(f, 0));
    expect_errc(Errc::length_mismatch,
                [&] { compute_share(suite, fe(f, 3), fe(f, 5), fes(f, {7, 5}), {}); });
}

TEST_CASE("share computation matches a straight-line recomputation") {
    auto suite = toy23();
    auto f = suite.field;
    SeededRng rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        auto x = sample_fe(f, rng);
        ChallengeVector r{sample_fe(f, rng), sample_fe(f, rng), sample_fe(f, rng),
                          sample_fe(f, rng)};
        // independent straight line: toy hash, powers, sum
        mpz_class sum = 1;
        for (auto b : encode_fe(x)) sum += b;
        for (auto b : encode_fe(r[1])) sum += b;
        for (auto b : encode_fe(r[0])) sum += b;
        mpz_class e = (x.value() + sum) % f->p();
        mpz_class acc = 0, power = 1;
        for (std::size_t k = 0; k < r.size(); ++k) {
            acc = (acc + power * r[k].value()) % f->p();
            power = (power * e) % f->p();
        }
        REQUIRE(compute_share(suite, x, r[1], r, {}).value() == acc);
    }
}

TEST_CASE("mask and key recovery") {
    auto f = p23();
    REQUIRE(compute_mask(fe(f, 10), fe(f, 4)) == fe(f, 6));
    REQUIRE(compute_mask(fe(f, 10), fe(f, 0)) == fe(f, 10));
    REQUIRE(compute_mask(fe(f, 10), fe(f, 10)) == fe(f, 0));
    REQUIRE(recover_key(fe(f, 6), fe(f, 4)) == fe(f, 10));
    REQUIRE(recover_key(fe(f, 0), fe(f, 4)) == fe(f, 4));

    auto big = FieldParams::named("modp2048");
    SeededRng rng(8);
    for (int i = 0; i < 1000; ++i) {
        auto key = sample_fe(big, rng), share = sample_fe(big, rng);
        REQUIRE(recover_key(compute_mask(key, share), share) == key);
    }
}

TEST_CASE("masking identity through the full share pipeline") {
    auto suite = HashSuite::make("standard", FieldParams::named("modp2048"));
    auto f = suite.field;
    SeededRng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        auto key = sample_fe(f, rng), x = sample_fe(f, rng);
        ChallengeVector r{sample_fe(f, rng), sample_fe(f, rng), sample_fe(f, rng)};
        auto share = compute_share(suite, x, r[1], r, {});
        REQUIRE(recover_key(compute_mask(key, share), share) == key);
    }
}

TEST_CASE("auth tag determinism and sensitivity") {
    auto suite = HashSuite::make("standard", FieldParams::named("modp2048"));
    auto f = suite.field;
    std::vector<std::string> ids{"alice", "bob"};
    SeededRng rng(41);
    for (int trial = 0; trial < 1000; ++trial) {
        auto key = sample_fe(f, rng);
        ChallengeVector r{sample_fe(f, rng), sample_fe(f, rng), sample_fe(f, rng)};
        std::vector<FieldElement> masks{sample_fe(f, rng), sample_fe(f, rng)};

        auto tag = compute_auth(suite, key, ids, r, masks);
        REQUIRE(compute_auth(suite, key, ids, r, masks) == tag);

        auto other_key = sample_fe(f, rng);
        if (other_key != key) REQUIRE(compute_auth(suite, other_key, ids, r, masks) != tag);

        if (masks[0] != masks[1]) {
            std::vector<FieldElement> permuted{masks[1], masks[0]};
            REQUIRE(compute_auth(suite, key, ids, r, permuted) != tag);
        }
    }
}

TEST_CASE("auth arity errors") {
    auto suite = toy23();
    auto f = suite.field;
    std::vector<std::string> ids{"a", "b"};
    expect_errc(Errc::length_mismatch, [&] {
        compute_auth(suite, fe(f, 1), ids, fes(f, {1, 2}), fes(f, {3, 4}));
    });
    expect_errc(Errc::length_mismatch, [&] {
        compute_auth(suite, fe(f, 1), ids, fes(f, {1, 2, 3}), fes(f, {3}));
    });
}

TEST_CASE("verify_auth") {
    auto suite = toy23();
    auto f = suite.field;
    std::vector<std::string> ids{"a", "b"};
    auto r = fes(f, {7, 5, 2});
    auto masks = fes(f, {3, 4});
    auto tag = compute_auth(suite, fe(f, 10), ids, r, masks);
    REQUIRE(verify_auth(suite, tag, fe(f, 10), ids, r, masks));
    REQUIRE_FALSE(verify_auth(suite, tag + fe(f, 1), fe(f, 10), ids, r, masks));
}

TEST_CASE("auth input framing is injective") {
    auto f = p23();
    std::vector<std::string> ids{"alice", "b"};
    SeededRng rng(51);
    for (int trial = 0; trial < 100; ++trial) {
        auto key = sample_fe(f, rng);
        ChallengeVector r{sample_fe(f, rng), sample_fe(f, rng), sample_fe(f, rng)};
        std::vector<FieldElement> masks{sample_fe(f, rng), sample_fe(f, rng)};
        Bytes framed = auth_input(key, ids, r, masks);

        // reconstruct the tuple from the concatenation
        const std::size_t w = f->byte_width();
        std::size_t pos = 0;
        auto take_fe = [&] {
            Bytes part(framed.begin() + pos, framed.begin() + pos + w);
            pos += w;
            return decode_fe(f, part);
        };
        REQUIRE(take_fe() == key);
        for (const auto& id : ids) {
            std::size_t len = (framed[pos] << 8) | framed[pos + 1];
            pos += 2;
            REQUIRE(std::string(framed.begin() + pos, framed.begin() + pos + len) == id);
            pos += len;
        }
        for (const auto& expected : r) REQUIRE(take_fe() == expected);
        for (const auto& expected : masks) REQUIRE(take_fe() == expected);
        REQUIRE(pos == framed.size());
    }
}
