#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "qowf/classical/function.h"
#include "qowf/classical/function_json.h"
#include "qowf/classical/zoo.h"
#include "qowf/sim/ops.h"
#include "qowf/util/error.h"

using namespace qowf;

TEST(ClassicalFunction, EvaluatesBitStrings) {
    // parity2 puts the parity in the high output bit.
    ClassicalFunction f = parity_function(2);
    EXPECT_EQ(f.evaluate("00"), "00");
    EXPECT_EQ(f.evaluate("01"), "10");
    EXPECT_EQ(f.evaluate("10"), "10");
    EXPECT_EQ(f.evaluate("11"), "00");
    EXPECT_THROW(f.evaluate("1"), Error);
    EXPECT_THROW(f.evaluate("0a"), Error);
}

TEST(ClassicalFunction, RejectsOutOfRangeTable) {
    EXPECT_THROW(ClassicalFunction(1, 1, {0, 2}), Error);
    EXPECT_THROW(ClassicalFunction(2, 1, {0, 1}), Error);
    EXPECT_THROW(ClassicalFunction(17, 1, {}), Error);
}

TEST(ClassicalFunction, PreimagesPartitionDomain) {
    for (const auto& inst : instance_zoo()) {
        std::set<std::uint64_t> seen;
        std::uint64_t total = 0;
        auto counts = inst.f.image_counts();
        for (std::uint64_t y = 0; y < counts.size(); ++y) {
            auto pre = inst.f.preimage(y);
            ASSERT_EQ(pre.size(), counts[y]) << inst.name;
            for (auto x : pre) {
                EXPECT_EQ(inst.f(x), y);
                EXPECT_TRUE(seen.insert(x).second);
            }
            total += pre.size();
        }
        EXPECT_EQ(total, inst.f.domain_size()) << inst.name;
    }
}

TEST(ClassicalFunction, PreimageByString) {
    ClassicalFunction f = parity_function(2);
    EXPECT_EQ(f.preimage(std::string_view("00")), (std::vector<std::string>{"00", "11"}));
    EXPECT_TRUE(f.preimage(std::string_view("01")).empty());
}

TEST(Zoo, InjectiveInstancesAreInjective) {
    for (const auto& inst : instance_zoo()) {
        std::set<std::uint64_t> outputs(inst.f.table().begin(), inst.f.table().end());
        EXPECT_EQ(inst.f.injective(), outputs.size() == inst.f.domain_size()) << inst.name;
    }
    EXPECT_TRUE(random_injective_function(5, 7, 3).injective());
}

TEST(Zoo, RegularFunctionsHaveUniformFanIn) {
    ClassicalFunction f = random_regular_function(4, 2, 23);
    for (auto c : f.image_counts()) {
        EXPECT_TRUE(c == 0 || c == 4);
    }
}

TEST(Zoo, GeneratorsAreSeedDeterministic) {
    EXPECT_EQ(random_function(4, 3, 7), random_function(4, 3, 7));
    EXPECT_NE(random_function(4, 3, 7).table(), random_function(4, 3, 8).table());
}

TEST(Distribution, ProbabilitiesAreExact) {
    Distribution d = output_distribution(constant_function(3, 2, 1));
    EXPECT_EQ(d.probability(1), Rational(1));
    EXPECT_EQ(d.probability(0), Rational(0));
    Distribution p = output_distribution(parity_function(2));
    EXPECT_EQ(p.probability(0), Rational(1, 2));
}

TEST(QuantumSample, AmplitudesAreSqrtProbabilities) {
    ClassicalFunction f = random_function(4, 3, 99);
    StateVector s = quantum_sample_state(f);
    auto counts = f.image_counts();
    for (std::uint64_t y = 0; y < counts.size(); ++y) {
        EXPECT_NEAR(s[y].real(), std::sqrt(counts[y] / 16.0), 1e-12);
    }
    EXPECT_NEAR(s.norm_squared(), 1.0, 1e-12);
}

TEST(QuantumSample, UniformPreimageState) {
    StateVector h = uniform_preimage_state(parity_function(2), 0);
    EXPECT_NEAR(h[0].real(), std::sqrt(0.5), 1e-12);
    EXPECT_NEAR(h[3].real(), std::sqrt(0.5), 1e-12);
    EXPECT_EQ(h[1], Amplitude(0.0));
    EXPECT_THROW(uniform_preimage_state(parity_function(2), 1), Error);
}

TEST(Distances, TvMatchesDirectSum) {
    for (std::uint64_t t = 0; t < 20; ++t) {
        ClassicalFunction a = random_function(4, 3, 200 + t);
        ClassicalFunction b = random_function(4, 3, 300 + t);
        // Oracle: count differences over the output alphabet in sixteenths.
        std::int64_t diff = 0;
        for (std::uint64_t y = 0; y < 8; ++y) {
            std::int64_t ca = 0, cb = 0;
            for (std::uint64_t x = 0; x < 16; ++x) {
                ca += a(x) == y;
                cb += b(x) == y;
            }
            diff += std::llabs(ca - cb);
        }
        EXPECT_EQ(tv_distance(output_distribution(a), output_distribution(b)), Rational(diff, 32));
    }
}

TEST(Distances, FidelityMatchesSampleOverlap) {
    auto zoo = instance_zoo();
    for (const auto& a : zoo) {
        for (const auto& b : zoo) {
            if (a.f.m() != b.f.m()) continue;
            double ip = inner_product(quantum_sample_state(a.f), quantum_sample_state(b.f)).real();
            EXPECT_NEAR(ip, classical_fidelity(output_distribution(a.f), output_distribution(b.f)),
                        1e-9)
                << a.name << " " << b.name;
        }
    }
}

TEST(Distances, FidelityTvSandwich) {
    for (std::uint64_t t = 0; t < 100; ++t) {
        Distribution d0 = output_distribution(random_function(4, 3, 2 * t));
        Distribution d1 = output_distribution(random_function(4, 3, 2 * t + 1));
        double f = classical_fidelity(d0, d1);
        double tv = to_double(tv_distance(d0, d1));
        EXPECT_LE(1.0 - f, tv + 1e-12);
        EXPECT_LE(tv, std::sqrt(1.0 - f * f) + 1e-12);
    }
}

TEST(Distances, WorkedExample) {
    // uniform on 4 outputs vs a point mass: F = sqrt(1/4), TV = 3/4
    Distribution u = output_distribution(identity_function(2));
    Distribution c = output_distribution(constant_function(2, 2, 0));
    EXPECT_NEAR(classical_fidelity(u, c), 0.5, 1e-12);
    EXPECT_EQ(tv_distance(u, c), Rational(3, 4));
}

TEST(FunctionJson, RoundTrip) {
    for (const auto& inst : instance_zoo()) {
        EXPECT_EQ(function_from_json(function_to_json(inst.f)), inst.f) << inst.name;
    }
    auto j = function_to_json(parity_function(2));
    EXPECT_EQ(j["table"][1], "10");
}

TEST(FunctionJson, ErrorsNameTheField) {
    auto check = [](const nlohmann::json& j, const std::string& field) {
        try {
            function_from_json(j);
            ADD_FAILURE() << "accepted " << j.dump();
        } catch (const Error& e) {
            EXPECT_EQ(e.field(), field) << j.dump();
        }
    };
    check({{"n", 1}, {"m", 1}, {"table", {"0", "2"}}}, "table[1]");
    check({{"n", 1}, {"m", 2}, {"table", {"00", "1"}}}, "table[1]");
    check({{"n", 1}, {"m", 1}, {"table", {"0"}}}, "table");
    check({{"n", 1}, {"table", {"0", "1"}}}, "m");
    check({{"n", 1}, {"m", 1}, {"table", {"0", "1"}}, {"extra", 1}}, "extra");
    check({{"n", "1"}, {"m", 1}, {"table", {"0", "1"}}}, "n");
    check({{"n", 1}, {"m", 1}, {"table", {"0", "0B"}}}, "table[1]");
}
