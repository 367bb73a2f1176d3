#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

#include "qowf/classical/zoo.h"
#include "qowf/il/classical_sampler.h"
#include "qowf/il/quantum_sampler.h"
#include "qowf/il/schedule.h"
#include "qowf/util/error.h"
#include "qowf/util/rng.h"
#include "oracle.h"

using namespace qowf;

using namespace qowf::oracle;

TEST(Schedule, LinearDescending) {
    EXPECT_EQ(linear_descending_schedule(4, 2), (std::vector<int>{6, 5, 4, 3, 2}));
    EXPECT_EQ(linear_descending_schedule(2, 0), (std::vector<int>{2, 1}));
    EXPECT_EQ(default_k_pad(4), 2);
    EXPECT_EQ(default_k_pad(5), 3);
    EXPECT_EQ(default_k_pad(1), 0);
}

TEST(Schedule, OffsetScheduleHandEnumerated) {
    const std::vector<int> r0{11, 9, 7, 5, 3};
    const std::vector<int> r1{12, 10, 8, 6, 4};
    std::set<std::vector<int>> seen;
    for (std::uint64_t seed = 0; seed < 16; ++seed) {
        auto s = offset_schedule(8, 2, seed);
        std::uint64_t r = CounterRng(seed).below(0, 2);
        EXPECT_EQ(s, r == 0 ? r0 : r1) << seed;
        seen.insert(s);
    }
    EXPECT_EQ(seen.size(), 2u);
    EXPECT_THROW(offset_schedule(3, 2, 0), Error);
}

TEST(Schedule, DefaultReps) {
    for (int j = 1; j <= 12; ++j) {
        for (std::uint64_t size : {1u, 2u, 3u, 4u, 7u, 16u, 40u}) {
            int lg = 0;
            while ((std::uint64_t{2} << lg) <= size) ++lg;
            double want = std::min(64.0, std::max(1.0, 4.0 * std::ldexp(1.0, j - lg)));
            EXPECT_EQ(default_reps(j, size), static_cast<std::uint64_t>(want)) << j << " " << size;
        }
    }
}

TEST(Schedule, ValidateNamesField) {
    ILParams p;
    p.rounds = {3, 3};
    try {
        validate(p);
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.field(), "schedule[1]");
    }
    p.rounds = {};
    EXPECT_THROW(validate(p), Error);
    p.rounds = {2, 1};
    p.reps = 0;
    EXPECT_THROW(validate(p), Error);
}

TEST(Schedule, ProfileTelescopes) {
    ScheduleProfile pr = profile_from_p({3, 2, 1}, {ratio(1, 4), ratio(1, 3), ratio(2, 5)});
    EXPECT_EQ(pr.q[0], ratio(1, 4));
    EXPECT_EQ(pr.q[1], ratio(1, 4));
    EXPECT_EQ(pr.q[2], ratio(1, 5));
    EXPECT_EQ(pr.leftover, ratio(3, 10));
    EXPECT_EQ(pr.q[0] + pr.q[1] + pr.q[2] + pr.leftover, Rational(1));
}

TEST(Schedule, PProfileMatchesBruteForce) {
    ClassicalFunction f = random_regular_function(3, 1, 4);
    std::uint64_t y = f(0);
    ScheduleProfile pr = p_profile(f, y, {3, 2, 1});
    for (std::size_t t = 0; t < 3; ++t)
        EXPECT_NEAR(to_double(pr.p[t]), hit_oracle(f, y, pr.rounds[t]).p, 1e-12);
}

TEST(UniqueHitBound, UpperBoundAndScope) {
    ClassicalFunction f = random_regular_function(4, 2, 7);
    std::uint64_t y = f(0);
    LemmaPkReport r = lemma_pk_report(f, y, 4, {2, 3, 4, 5, 6});
    EXPECT_EQ(r.k, 2 + 2);
    EXPECT_EQ(r.preimage_size, 4u);
    for (const auto& row : r.rows) {
        double upper = 1.0 - std::pow(0.25, std::ldexp(1.0, r.k - row.j));
        EXPECT_NEAR(row.upper, upper, 1e-12);
        EXPECT_EQ(row.in_scope, row.j >= r.k);
        EXPECT_NEAR(to_double(row.p), hit_oracle(f, y, row.j).p, 1e-12);
        if (row.in_scope) EXPECT_TRUE(row.upper_ok) << row.j;
    }
    EXPECT_THROW(lemma_pk_report(f, y, 3, {2}), Error);
    EXPECT_THROW(lemma_pk_report(f, y, 1, {2}), Error);
}

TEST(GBuild, PacksOutputs) {
    ClassicalFunction f = parity_function(2);
    ClassicalFunction g = g_build(f, 1);
    const int D = 3;
    EXPECT_EQ(g.n(), 2 + D);
    EXPECT_EQ(g.m(), 2 + D + 1);
    for (std::uint64_t d = 0; d < 8; ++d)
        for (std::uint64_t x = 0; x < 4; ++x)
            EXPECT_EQ(g(x | (d << 2)), f(x) | (d << 2) | (toeplitz_oracle(2, 1, d, x) << (2 + D)));
}

TEST(ClassicalSampler, PartialLawMatchesOracle) {
    ClassicalFunction f = random_regular_function(3, 1, 4);
    std::uint64_t y = f(0);
    for (int k : {1, 2, 3}) {
        for (std::uint64_t reps : {1u, 3u}) {
            SamplerLaw law = partial_sampler_law(f, y, k, reps);
            double fail;
            auto want = law_oracle(f, y, {k}, reps, fail);
            EXPECT_NEAR(to_double(law.failure), fail, 1e-12);
            for (auto& [x, v] : want) EXPECT_NEAR(to_double(law.output.at(x)), v, 1e-12);
        }
    }
}

TEST(ClassicalSampler, ChainedLawMatchesOracle) {
    for (const auto& inst : instance_zoo()) {
        if (inst.f.n() > 3) continue;
        ILParams p;
        p.rounds = {4, 3, 2, 1};
        p.reps = 2;
        auto counts = inst.f.image_counts();
        for (std::uint64_t y = 0; y < counts.size(); ++y) {
            if (!counts[y]) continue;
            SamplerLaw law = sampler_law(inst.f, y, p);
            double fail;
            auto want = law_oracle(inst.f, y, p.rounds, 2, fail);
            EXPECT_NEAR(to_double(law.failure), fail, 1e-12) << inst.name;
            Rational total = law.failure;
            for (auto& [x, v] : law.output) {
                EXPECT_NEAR(to_double(v), want[x], 1e-12) << inst.name;
                total += v;
            }
            EXPECT_EQ(total, Rational(1));
        }
    }
}

TEST(ClassicalSampler, ExactTvIsWeightedImageTv) {
    ClassicalFunction f = parity_function(3);
    ILParams p;
    p.rounds = {3, 2, 1};
    SamplerTvReport r = sampler_tv_report(f, p, TvMode::Exact);
    double joint = 0.0;
    for (std::uint64_t y : {0u, 4u}) {
        auto pre = f.preimage(y);
        std::vector<double> reps;
        double fail = 1.0;
        std::map<std::uint64_t, double> law;
        for (int j : p.rounds) {
            auto part = law_oracle(f, y, {j}, default_reps(j, pre.size()), reps.emplace_back());
            for (auto& [x, v] : part) law[x] += fail * v;
            fail *= reps.back();
        }
        double tv = fail;
        for (auto x : pre) tv += std::abs(law[x] - 1.0 / pre.size());
        joint += 0.5 * tv / 2.0;
    }
    EXPECT_NEAR(r.tv, joint, 1e-12);
    ASSERT_TRUE(r.tv_injective_hash.has_value());
    EXPECT_EQ(*r.tv_injective_hash, Rational(0));
}

TEST(ClassicalSampler, MonteCarloWithinBand) {
    ClassicalFunction f = random_regular_function(3, 1, 4);
    ILParams p;
    p.rounds = {3, 2, 1};
    SamplerTvReport exact = sampler_tv_report(f, p, TvMode::Exact);
    SamplerTvReport mc = sampler_tv_report(f, p, TvMode::MonteCarlo, 11, 4000);
    EXPECT_NEAR(mc.noise_band, 3.0 * std::sqrt(std::log(2.0) / 8000.0), 1e-12);
    EXPECT_LE(std::abs(mc.tv - exact.tv), mc.noise_band + 0.05);
    SamplerTvReport again = sampler_tv_report(f, p, TvMode::MonteCarlo, 11, 4000);
    EXPECT_EQ(mc.tv, again.tv);
}

TEST(ClassicalSampler, DrawsFromPreimage) {
    ClassicalFunction f = random_regular_function(3, 1, 4);
    ILParams p;
    p.rounds = {3, 2, 1};
    GInverterSet g(f, p.rounds);
    std::uint64_t y = f(5);
    int hits = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto x = classical_sampler(g, y, p, seed);
        if (x) {
            EXPECT_EQ(f(*x), y);
            ++hits;
        }
    }
    EXPECT_GT(hits, 40);
    p.rounds = {2, 1};
    EXPECT_THROW(classical_sampler(g, y, p, 0), Error);
}

TEST(QuantumSampler, PqsMatchesUniqueHitOverlap) {
    for (auto [f, y] : {std::pair{identity_function(2), std::uint64_t{1}},
                        std::pair{parity_function(2), std::uint64_t{0}},
                        std::pair{parity_function(2), std::uint64_t{2}}}) {
        for (int k : {1, 2}) {
            InverterSpec g = build_g_inverter(f, k, HashFamily::exhaustive(2, k));
            PqsResult r = pqs_apply(g, y);
            double want = expected_overlap_oracle(f, y, k);
            EXPECT_NEAR(r.success_amplitude, want, 1e-9);
            EXPECT_NEAR(r.expected_amplitude, want, 1e-9);
            EXPECT_NEAR(to_double(r.p), hit_oracle(f, y, k).p, 1e-12);
            EXPECT_NEAR(r.sqrt_p, std::sqrt(to_double(r.p)), 1e-12);
        }
    }
}

TEST(QuantumSampler, PapWeightsAreHitProbability) {
    ClassicalFunction f = parity_function(2);
    for (int k : {1, 2}) {
        InverterSpec g = build_g_inverter(f, k, HashFamily::exhaustive(2, k));
        PapResult r = pap_apply(g, 2);
        double p = hit_oracle(f, 2, k).p;
        EXPECT_NEAR(r.weight_success, p, 1e-9);
        EXPECT_NEAR(r.weight_failure, 1.0 - p, 1e-9);
    }
}

TEST(QuantumSampler, ApCoefficientsFollowProfile) {
    for (auto [f, y] : {std::pair{identity_function(2), std::uint64_t{3}},
                        std::pair{parity_function(2), std::uint64_t{0}}}) {
        GInverterSet set(f, {2, 1});
        ApResult r = ap_apply(set, y);
        double survive = 1.0;
        for (std::size_t t = 0; t < 2; ++t) {
            double p = hit_oracle(f, y, set.rounds()[t]).p;
            EXPECT_NEAR(r.coefficients[t], survive * p, 1e-9);
            survive *= 1.0 - p;
        }
        EXPECT_NEAR(r.leftover, survive, 1e-9);
    }
}

TEST(QuantumSampler, QsMatchesAnalyticWhenHashesInjective) {
    ClassicalFunction f = identity_function(2);
    GInverterSet set(f, {2, 1});
    QsResult r = qs_apply(set, 1);
    double q0 = 0.25, q1 = 0.75 * 0.5;
    double analytic = q0 * q0 * std::sqrt(0.25) + q1 * q1 * std::sqrt(0.5);
    EXPECT_NEAR(r.analytic, analytic, 1e-12);
    EXPECT_NEAR(r.success_amplitude, analytic, 1e-9);
    EXPECT_NEAR(r.collision_deficit, 0.0, 1e-12);
}

TEST(QuantumSampler, QsCollisionDeficitExplained) {
    ClassicalFunction f = parity_function(2);
    GInverterSet set(f, {2, 1});
    QsResult r = qs_apply(set, 0);
    double expected = 0.0, survive = 1.0;
    for (int k : {2, 1}) {
        double p = hit_oracle(f, 0, k).p;
        double q = survive * p;
        expected += q * q * expected_overlap_oracle(f, 0, k);
        survive *= 1.0 - p;
    }
    EXPECT_NEAR(r.expected, expected, 1e-12);
    EXPECT_NEAR(r.success_amplitude, expected, 1e-9);
    EXPECT_GT(r.collision_deficit, 0.0);
}

TEST(QuantumSampler, ApAdjointIdentity) {
    for (auto [f, y] : {std::pair{identity_function(2), std::uint64_t{0}},
                        std::pair{parity_function(2), std::uint64_t{2}}}) {
        ApAdjointCheck c = ap_adjoint_identity(GInverterSet(f, {2, 1}), y);
        EXPECT_NEAR(c.simulated, c.analytic, 1e-9);
    }
}

TEST(QuantumSampler, EmptyPreimageRejected) {
    GInverterSet set(parity_function(2), {1});
    EXPECT_THROW(qs_apply(set, 1), Error);
    EXPECT_THROW(ap_apply(set, 1), Error);
}
