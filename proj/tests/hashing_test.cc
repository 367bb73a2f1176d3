#include <gtest/gtest.h>

#include <map>

#include "qowf/classical/zoo.h"
#include "qowf/hashing/hash_json.h"
#include "qowf/hashing/toeplitz.h"
#include "qowf/util/error.h"
#include "qowf/util/rng.h"

using namespace qowf;

namespace {

// Bit-by-bit GF(2) product with T[i][j] = diag[i - j + n - 1].
std::uint64_t naive_hash(int n, int k, std::uint64_t diag, std::uint64_t offset, std::uint64_t x) {
    std::uint64_t out = 0;
    for (int i = 0; i < k; ++i) {
        int bit = static_cast<int>((offset >> i) & 1);
        for (int j = 0; j < n; ++j) {
            int t = static_cast<int>((diag >> (i - j + n - 1)) & 1);
            bit ^= t & static_cast<int>((x >> j) & 1);
        }
        out |= static_cast<std::uint64_t>(bit) << i;
    }
    return out;
}

// p_k by brute force over (member, r) pairs.
Rational naive_p(const std::vector<std::uint64_t>& pre, int n, int k) {
    std::uint64_t members = std::uint64_t{1} << ToeplitzAffineHash::descriptor_bits(n, k);
    std::uint64_t good = 0;
    for (std::uint64_t d = 0; d < members; ++d) {
        auto h = ToeplitzAffineHash::from_descriptor(n, k, d);
        for (std::uint64_t r = 0; r < (std::uint64_t{1} << k); ++r) {
            int hits = 0;
            for (auto x : pre) hits += h(x) == r;
            good += hits == 1;
        }
    }
    return Rational(good) / Rational(members << k);
}

}  // namespace

TEST(Toeplitz, ZeroHashIsZero) {
    ToeplitzAffineHash h(3, 2, 0, 0);
    for (std::uint64_t x = 0; x < 8; ++x) EXPECT_EQ(h(x), 0u);
}

TEST(Toeplitz, WorkedExample) {
    // n=2, k=1, diag = (1,1), offset 0: h(11) = 1 xor 1 = 0
    ToeplitzAffineHash h(2, 1, 0b11, 0);
    EXPECT_EQ(h.evaluate("11"), "0");
    EXPECT_EQ(h.evaluate("01"), "1");
    EXPECT_THROW(h.evaluate("1"), Error);
}

TEST(Toeplitz, MatchesNaiveOracle) {
    CounterRng rng(4);
    for (std::uint64_t t = 0; t < 500; ++t) {
        int n = 1 + static_cast<int>(rng.below(5 * t, 8));
        int k = 1 + static_cast<int>(rng.below(5 * t + 1, 6));
        std::uint64_t diag = rng.below(5 * t + 2, std::uint64_t{1} << (n + k - 1));
        std::uint64_t offset = rng.below(5 * t + 3, std::uint64_t{1} << k);
        std::uint64_t x = rng.below(5 * t + 4, std::uint64_t{1} << n);
        ToeplitzAffineHash h(n, k, diag, offset);
        ASSERT_EQ(h(x), naive_hash(n, k, diag, offset, x)) << n << " " << k;
    }
}

TEST(Toeplitz, EntriesAreConstantAlongDiagonals) {
    ToeplitzAffineHash h(4, 3, 0b101101, 0);
    for (int i = 1; i < 3; ++i)
        for (int j = 1; j < 4; ++j) EXPECT_EQ(h.entry(i, j), h.entry(i - 1, j - 1));
}

TEST(Toeplitz, DescriptorRoundTrip) {
    for (std::uint64_t d = 0; d < (1u << ToeplitzAffineHash::descriptor_bits(3, 2)); ++d) {
        EXPECT_EQ(ToeplitzAffineHash::from_descriptor(3, 2, d).descriptor(), d);
    }
}

TEST(Toeplitz, RejectsBadWidths) {
    EXPECT_THROW(ToeplitzAffineHash(2, 0, 0, 0), Error);
    EXPECT_THROW(ToeplitzAffineHash(2, 1, 0b111, 0), Error);
    EXPECT_THROW(ToeplitzAffineHash(2, 1, 0, 2), Error);
}

TEST(HashJson, RoundTripAndFields) {
    ToeplitzAffineHash h(3, 2, 0b1011, 0b10);
    auto j = hash_to_json(h);
    EXPECT_EQ(j["diag"], "1011");
    EXPECT_EQ(j["offset"], "10");
    auto back = hash_from_json(j);
    EXPECT_EQ(back.descriptor(), h.descriptor());
    j["diag"] = "101";
    try {
        hash_from_json(j);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.field(), "diag");
    }
}

TEST(HashFamily, ExhaustiveSizeAndCap) {
    EXPECT_EQ(HashFamily::exhaustive(2, 1).size(), 8u);
    EXPECT_EQ(HashFamily::exhaustive(3, 2).size(), 64u);
    try {
        HashFamily::exhaustive(14, 5);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::CapExceeded);
    }
}

TEST(HashFamily, SeededIsDeterministic) {
    auto a = HashFamily::seeded(4, 2, 10, 99);
    auto b = HashFamily::seeded(4, 2, 10, 99);
    for (std::uint64_t i = 0; i < 10; ++i) EXPECT_EQ(a.descriptor(i), b.descriptor(i));
}

TEST(UniqueHit, SingletonGivesTwoToMinusK) {
    for (int k = 1; k <= 6; ++k) {
        auto s = unique_hit_stats({5}, k, HashFamily::exhaustive(3, k));
        EXPECT_EQ(s.p, inverse_pow2(k)) << k;
        EXPECT_EQ(s.collision_fraction, Rational(0));
    }
}

TEST(UniqueHit, ParityPairAtKOne) {
    auto s = unique_hit_stats(parity_function(2), 0, 1, HashFamily::exhaustive(2, 1));
    EXPECT_EQ(s.p, Rational(1, 2));
    // The pair {00, 11} collides exactly when the two diag bits agree.
    EXPECT_EQ(s.collision_fraction, Rational(1, 2));
    EXPECT_EQ(s.p, naive_p({0, 3}, 2, 1));
}

TEST(UniqueHit, MatchesBruteForceOnZoo) {
    for (const auto& inst : instance_zoo()) {
        if (inst.f.n() > 3) continue;
        auto counts = inst.f.image_counts();
        for (std::uint64_t y = 0; y < counts.size(); ++y) {
            if (counts[y] == 0) continue;
            auto pre = inst.f.preimage(y);
            for (int k = 1; k <= 3; ++k) {
                auto s = unique_hit_stats(pre, k, HashFamily::exhaustive(inst.f.n(), k));
                EXPECT_EQ(s.p, naive_p(pre, inst.f.n(), k)) << inst.name << " k=" << k;
                Rational bound = std::min(Rational(1), Rational(pre.size()) * inverse_pow2(k));
                EXPECT_LE(s.p, bound);
            }
        }
    }
}

TEST(UniqueHit, EmptyPreimageRejected) {
    EXPECT_THROW(unique_hit_stats(parity_function(2), 1, 1, HashFamily::exhaustive(2, 1)), Error);
}

TEST(PairwiseIndependence, ExhaustiveFamiliesAreExact) {
    for (int n = 1; n <= 4; ++n) {
        for (int k = 1; k <= 2; ++k) {
            auto rep = pairwise_independence_report(HashFamily::exhaustive(n, k));
            EXPECT_TRUE(rep.pairwise_independent) << n << " " << k;
            EXPECT_EQ(rep.max_deviation, Rational(0));
        }
    }
    EXPECT_TRUE(pairwise_independence_report(HashFamily::exhaustive(3, 2)).pairwise_independent);
}

TEST(PairwiseIndependence, SingleMemberFamilyIsFlagged) {
    auto rep = pairwise_independence_report(HashFamily::explicit_members(2, 1, {0b101}));
    EXPECT_FALSE(rep.pairwise_independent);
    EXPECT_GT(rep.max_deviation, Rational(0));
}

TEST(PairwiseIndependence, SeededRejected) {
    EXPECT_THROW(pairwise_independence_report(HashFamily::seeded(2, 1, 4, 1)), Error);
}
