#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "qowf/classical/zoo.h"
#include "qowf/inverters/inverter.h"
#include "qowf/reductions/sampler.h"
#include "qowf/reductions/sd.h"
#include "qowf/util/error.h"

using namespace qowf;

namespace {

std::map<std::uint64_t, double> law(const ClassicalFunction& f) {
    std::map<std::uint64_t, double> p;
    for (std::uint64_t x = 0; x < f.domain_size(); ++x) p[f(x)] += 1.0 / f.domain_size();
    return p;
}

double tv_oracle(const ClassicalFunction& a, const ClassicalFunction& b) {
    auto pa = law(a), pb = law(b);
    double tv = 0.0;
    for (auto& [y, v] : pa) tv += std::abs(v - (pb.count(y) ? pb[y] : 0.0));
    for (auto& [y, v] : pb)
        if (!pa.count(y)) tv += v;
    return tv / 2.0;
}

double fidelity_oracle(const ClassicalFunction& a, const ClassicalFunction& b) {
    auto pa = law(a), pb = law(b);
    double f = 0.0;
    for (auto& [y, v] : pa)
        if (pb.count(y)) f += std::sqrt(v * pb[y]);
    return f;
}

ClassicalFunction table_fn(int n, int m, std::vector<std::uint64_t> t) {
    return ClassicalFunction(n, m, std::move(t));
}

}  // namespace

TEST(Sampler, PerfectInverterGivesExactSample) {
    for (const auto& inst : instance_zoo()) {
        if (!inst.f.injective() || inst.f.n() + inst.f.m() + inst.f.n() > 20) continue;
        SamplerResult r = sampler_from_inverter(inst.f, build_perfect_inverter(inst.f));
        EXPECT_NEAR(r.report.fidelity, 1.0, 1e-9) << inst.name;
        EXPECT_TRUE(r.report.pass);
    }
}

TEST(Sampler, NoisyFidelityIsSquaredMeanAmplitude) {
    ClassicalFunction f = random_injective_function(3, 4, 2);
    auto a = seeded_noisy_profile(f, 0.15, 9);
    InverterSpec inv = build_noisy_inverter(f, a, InverterTarget::Preimage);
    SamplerResult r = sampler_from_inverter(f, inv);
    double mean = 0.0;
    for (std::uint64_t x = 0; x < 8; ++x) mean += a[f(x)] / 8.0;
    EXPECT_NEAR(r.report.fidelity, mean * mean, 1e-9);
    EXPECT_NEAR(r.report.delta, 0.15, 1e-9);
    EXPECT_NEAR(r.report.bound, 0.85 * 0.85, 1e-12);
    EXPECT_NEAR(r.report.epsilon, 2 * 0.15 - 0.15 * 0.15, 1e-12);
    EXPECT_TRUE(r.report.pass);
}

TEST(Sampler, ConstantProfileWorkedExample) {
    ClassicalFunction f = identity_function(2);
    InverterSpec inv = build_noisy_inverter(f, {0.85, 0.85, 0.85, 0.85}, InverterTarget::Preimage);
    SamplerResult r = sampler_from_inverter(f, inv);
    EXPECT_NEAR(r.report.fidelity, 0.7225, 1e-9);
}

TEST(Sampler, AverageFailure) {
    ClassicalFunction f = identity_function(2);
    InverterSpec inv = build_noisy_inverter(f, {1.0, 0.9, 0.8, 0.7}, InverterTarget::Preimage);
    EXPECT_NEAR(average_failure(inv), 1.0 - (1.0 + 0.81 + 0.64 + 0.49) / 4.0, 1e-12);
}

TEST(Sampler, RejectsUnsupportedInverters) {
    ClassicalFunction f = identity_function(2);
    InverterSpec base = build_noisy_inverter(f, {1.0, 0.9, 0.8, 0.7}, InverterTarget::Preimage);
    EXPECT_THROW(sampler_from_inverter(f, amplify_positivity(base, f)), Error);
    EXPECT_THROW(sampler_from_inverter(parity_function(2), build_dist_inverter(parity_function(2))),
                 Error);
    EXPECT_THROW(sampler_from_inverter(identity_function(3), base), Error);
    EXPECT_THROW(dist_sampler_from_inverter(f, base), Error);
}

TEST(DistSampler, FidelityIsSquaredWeightedAmplitude) {
    for (const auto& inst : instance_zoo()) {
        if (inst.f.n() > 4) continue;
        std::vector<double> a(std::size_t{1} << inst.f.m());
        for (std::size_t y = 0; y < a.size(); ++y) a[y] = 0.6 + 0.4 * ((y * 7) % 5) / 4.0;
        InverterSpec inv = build_noisy_inverter(inst.f, a, InverterTarget::PreimageSuperposition);
        SamplerResult r = dist_sampler_from_inverter(inst.f, inv);
        double mean = 0.0;
        for (auto& [y, p] : law(inst.f)) mean += p * a[y];
        EXPECT_NEAR(r.report.fidelity, mean * mean, 1e-9) << inst.name;
        EXPECT_TRUE(r.report.pass) << inst.name;

        SamplerResult perfect = dist_sampler_from_inverter(inst.f, build_dist_inverter(inst.f));
        EXPECT_NEAR(perfect.report.fidelity, 1.0, 1e-9) << inst.name;
    }
}

TEST(DistSampler, WorkedExample) {
    ClassicalFunction f = parity_function(2);
    InverterSpec inv = build_noisy_inverter(f, {0.9, 0.9, 0.9, 0.9}, InverterTarget::PreimageSuperposition);
    EXPECT_NEAR(dist_sampler_from_inverter(f, inv).report.fidelity, 0.81, 1e-9);
}

TEST(CqsReport, PassUsesTolerance) {
    EXPECT_TRUE(make_cqs_report(0.81 - 1e-10, 0.1).pass);
    EXPECT_FALSE(make_cqs_report(0.80, 0.1).pass);
}

TEST(SzkCandidate, PacksIndexAboveInput) {
    std::vector<ClassicalFunction> fam{identity_function(2), parity_function(2)};
    ClassicalFunction c = build_szk_candidate(fam);
    EXPECT_EQ(c.n(), 3);
    EXPECT_EQ(c.m(), 3);
    for (std::uint64_t i = 0; i < 2; ++i)
        for (std::uint64_t y = 0; y < 4; ++y) EXPECT_EQ(c((i << 2) | y), (i << 2) | fam[i](y));
    EXPECT_THROW(build_szk_candidate({identity_function(2), identity_function(2),
                                      identity_function(2)}),
                 Error);
    EXPECT_THROW(build_szk_candidate({identity_function(2), identity_function(3)}), Error);
}

TEST(SD, MatchesOracles) {
    ClassicalFunction c0 = table_fn(2, 2, {0, 1, 2, 3});
    ClassicalFunction c1 = table_fn(2, 2, {0, 0, 1, 3});
    SDReport r = sd_decide({c0, c1, 0.2, 0.01}, 200, 1);
    EXPECT_NEAR(to_double(r.tv), tv_oracle(c0, c1), 1e-12);
    EXPECT_NEAR(r.fidelity, fidelity_oracle(c0, c1), 1e-12);
    EXPECT_NEAR(r.acceptance, 0.5 + r.fidelity * r.fidelity / 2, 1e-12);
    ASSERT_TRUE(r.acceptance_circuit.has_value());
    EXPECT_NEAR(*r.acceptance_circuit, r.acceptance, 1e-9);
}

TEST(SD, ThresholdBetweenBands) {
    ClassicalFunction c = identity_function(2);
    SDReport r = sd_decide({c, c, 0.9, 0.1}, 10, 1);
    EXPECT_NEAR(r.far_max, 0.5 + (1 - 0.81) / 2, 1e-12);
    EXPECT_NEAR(r.close_min, 0.5 + 0.81 / 2, 1e-12);
    EXPECT_NEAR(r.threshold, (r.far_max + r.close_min) / 2, 1e-12);
    EXPECT_TRUE(r.separated);
}

TEST(SD, VerdictsOnClearInstances) {
    ClassicalFunction c0 = identity_function(3);
    ClassicalFunction same = bit_reversal_function(3);
    ClassicalFunction far = constant_function(3, 3, 0);
    SDReport close = sd_decide({c0, same, 0.9, 0.1}, 400, 5);
    EXPECT_EQ(close.truth, SDVerdict::Close);
    EXPECT_EQ(close.verdict, SDVerdict::Close);
    SDReport apart = sd_decide({c0, far, 0.8, 0.1}, 400, 5);
    EXPECT_EQ(apart.truth, SDVerdict::Far);
    EXPECT_EQ(apart.verdict, SDVerdict::Far);
}

TEST(SD, SeededAndDeterministic) {
    ClassicalFunction c0 = identity_function(2);
    ClassicalFunction c1 = table_fn(2, 2, {0, 0, 2, 3});
    SDReport a = sd_decide({c0, c1, 0.9, 0.3}, 300, 42);
    SDReport b = sd_decide({c0, c1, 0.9, 0.3}, 300, 42);
    EXPECT_EQ(a.accepted, b.accepted);
}

TEST(SD, PromiseAndValidation) {
    ClassicalFunction c0 = identity_function(2);
    ClassicalFunction c1 = table_fn(2, 2, {0, 0, 2, 3});  // TV = 1/4
    try {
        sd_decide({c0, c1, 0.9, 0.1}, 10, 1);
        ADD_FAILURE() << "expected promise violation";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::PromiseViolated);
    }
    EXPECT_THROW(validate({c0, c1, 0.5, 0.3}), Error);   // alpha^2 <= beta
    EXPECT_THROW(validate({c0, c1, 0.3, 0.5}), Error);   // beta >= alpha
    EXPECT_THROW(validate({c0, identity_function(3), 0.9, 0.1}), Error);
}
