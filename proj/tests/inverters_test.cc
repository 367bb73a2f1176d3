#include <gtest/gtest.h>

#include <cmath>

#include "qowf/classical/zoo.h"
#include "qowf/inverters/inverter.h"
#include "qowf/sim/ops.h"
#include "qowf/util/error.h"

using namespace qowf;

namespace {

StateVector run_on(const InverterSpec& inv, std::uint64_t y, std::uint64_t beta) {
    RegisterLayout layout = inverter_layout(inv);
    Assignment start;
    for (const auto& r : layout.registers()) start[r.name] = 0;
    start["y"] = y;
    start["beta"] = beta;
    return run_circuit(make_basis_state(layout, start), realize(inv, default_wiring(inv), layout));
}

Amplitude amp_at(const StateVector& s, std::uint64_t y, std::uint64_t beta) {
    Assignment a;
    for (const auto& r : s.layout().registers()) a[r.name] = 0;
    a["y"] = y;
    a["beta"] = beta;
    return s.amplitude(a);
}

}  // namespace

TEST(PerfectInverter, XorsPreimageIntoAnswer) {
    ClassicalFunction f = random_injective_function(3, 4, 11);
    InverterSpec inv = build_perfect_inverter(f);
    for (std::uint64_t x = 0; x < 8; ++x) {
        for (std::uint64_t b = 0; b < 8; ++b) {
            StateVector s = run_on(inv, f(x), b);
            EXPECT_NEAR(std::abs(amp_at(s, f(x), x ^ b)), 1.0, 1e-12);
        }
    }
}

TEST(PerfectInverter, RejectsManyToOne) {
    EXPECT_THROW(build_perfect_inverter(parity_function(2)), Error);
}

TEST(NoisyInverter, SuccessAmplitudeAndCovariance) {
    ClassicalFunction f = identity_function(2);
    InverterSpec inv = build_noisy_inverter(f, {1.0, 0.9, 0.8, 0.7}, InverterTarget::Preimage);
    EXPECT_TRUE(xor_covariant(inv));
    for (std::uint64_t y = 0; y < 4; ++y) {
        for (std::uint64_t b = 0; b < 4; ++b) {
            StateVector s = run_on(inv, y, b);
            EXPECT_NEAR(amp_at(s, y, y ^ b).real(), inv.profile[y].real(), 1e-12) << y << " " << b;
            EXPECT_NEAR(s.probability("y", y), 1.0, 1e-12);
        }
    }
}

TEST(NoisyInverter, ProfileValidation) {
    ClassicalFunction f = identity_function(1);
    EXPECT_THROW(build_noisy_inverter(f, {1.2, 0.5}, InverterTarget::Preimage), Error);
    EXPECT_THROW(build_noisy_inverter(f, {-0.1, 0.5}, InverterTarget::Preimage), Error);
    EXPECT_THROW(build_noisy_inverter(f, {0.5}, InverterTarget::Preimage), Error);
    EXPECT_THROW(build_noisy_inverter(parity_function(2), {1, 1, 1, 1}, InverterTarget::Preimage),
                 Error);
    try {
        build_noisy_inverter(f, {0.5, 1.5}, InverterTarget::Preimage);
        ADD_FAILURE() << "expected rejection";
    } catch (const Error& e) {
        EXPECT_EQ(e.field(), "profile[1]");
    }
}

TEST(NoisyInverter, GarbageIsLexSmallestOtherState) {
    ClassicalFunction f = identity_function(2);
    InverterSpec inv = build_noisy_inverter(f, {0.6, 0.6, 0.6, 0.6}, InverterTarget::Preimage);
    // y = 2: garbage goes to 00; y = 0: garbage goes to 01.
    StateVector s2 = run_on(inv, 2, 0);
    EXPECT_NEAR(amp_at(s2, 2, 0).real(), 0.8, 1e-12);
    StateVector s0 = run_on(inv, 0, 0);
    EXPECT_NEAR(amp_at(s0, 0, 1).real(), 0.8, 1e-12);
}

TEST(NoisyInverter, SeededProfileHitsTargetAverage) {
    for (const auto& inst : instance_zoo()) {
        for (double delta : {0.05, 0.1, 0.2}) {
            auto a = seeded_noisy_profile(inst.f, delta, 3);
            double avg = 0.0;
            for (std::uint64_t x = 0; x < inst.f.domain_size(); ++x) avg += a[inst.f(x)] * a[inst.f(x)];
            avg /= static_cast<double>(inst.f.domain_size());
            EXPECT_NEAR(avg, 1.0 - delta, 1e-12) << inst.name;
            for (double v : a) {
                EXPECT_GE(v, 0.0);
                EXPECT_LE(v, 1.0);
            }
        }
    }
}

TEST(DistInverter, BasisStartsWithUniformPreimage) {
    ClassicalFunction f = parity_function(3);
    for (std::uint64_t y : {0u, 4u}) {
        DenseMatrix b = preimage_basis(f, y);
        EXPECT_LE(b.unitarity_defect(), 1e-12);
        StateVector h = uniform_preimage_state(f, y);
        for (std::uint64_t i = 0; i < 8; ++i) EXPECT_NEAR(b(i, 0).real(), h[i].real(), 1e-12);
    }
}

TEST(DistInverter, PerfectAndNoisyAmplitudes) {
    for (const auto& inst : instance_zoo()) {
        if (inst.f.n() > 4) continue;
        InverterSpec perfect = build_dist_inverter(inst.f);
        std::vector<double> a(std::size_t{1} << inst.f.m(), 0.35);
        InverterSpec noisy = build_noisy_inverter(inst.f, a, InverterTarget::PreimageSuperposition);
        auto counts = inst.f.image_counts();
        for (std::uint64_t y = 0; y < counts.size(); ++y) {
            if (counts[y] == 0) continue;
            EXPECT_NEAR(measure_success_amplitude(perfect, y).real(), 1.0, 1e-9) << inst.name;
            EXPECT_NEAR(measure_success_amplitude(noisy, y).real(), 0.35, 1e-9) << inst.name;
        }
    }
}

TEST(DistInverter, FullDomainPreimageUsesCompletionVector) {
    ClassicalFunction f = constant_function(2, 2, 0);
    InverterSpec noisy = build_noisy_inverter(f, {0.5, 0, 0, 0}, InverterTarget::PreimageSuperposition);
    StateVector s = simulate_inverter(noisy, 0);
    DenseMatrix b = preimage_basis(f, 0);
    Amplitude on_h = 0.0, on_t1 = 0.0;
    for (std::uint64_t x = 0; x < 4; ++x) {
        on_h += b(x, 0) * amp_at(s, 0, x);
        on_t1 += b(x, 1) * amp_at(s, 0, x);
    }
    EXPECT_NEAR(on_h.real(), 0.5, 1e-12);
    EXPECT_NEAR(on_t1.real(), std::sqrt(0.75), 1e-12);
}

TEST(Amplifier, SquaresRealProfile) {
    ClassicalFunction f = identity_function(2);
    std::vector<double> c{1.0, 0.9, 0.8, 0.7};
    InverterSpec base = build_noisy_inverter(f, c, InverterTarget::Preimage);
    InverterSpec amp = amplify_positivity(base, f);
    for (std::uint64_t y = 0; y < 4; ++y) {
        Amplitude got = measure_success_amplitude(amp, y);
        EXPECT_NEAR(got.real(), c[y] * c[y], 1e-9);
        EXPECT_NEAR(got.imag(), 0.0, 1e-12);
    }
    EXPECT_FALSE(xor_covariant(amp));
}

TEST(Amplifier, ComplexProfileNeedsRealify) {
    ClassicalFunction f = identity_function(2);
    std::vector<Amplitude> c{{0.6, 0.3}, 0.5, {0.0, 0.9}, 1.0};
    InverterSpec ph = build_phased_inverter(f, c);
    EXPECT_THROW(amplify_positivity(ph, f), Error);
    InverterSpec amp = amplify_positivity(realify(ph), f);
    for (std::uint64_t y = 0; y < 4; ++y) {
        double re = c[y].real();
        EXPECT_NEAR(measure_success_amplitude(amp, y).real(), re * re, 1e-9);
    }
}

TEST(Amplifier, AverageChain) {
    // (1/2^n) sum a^2 >= ((1/2^n) sum c^2)^2 with a = c^2.
    ClassicalFunction f = random_injective_function(3, 3, 5);
    auto c = seeded_noisy_profile(f, 0.2, 17);
    InverterSpec amp = amplify_positivity(build_noisy_inverter(f, c, InverterTarget::Preimage), f);
    double avg_c2 = 0.0, avg_a2 = 0.0;
    for (std::uint64_t x = 0; x < 8; ++x) {
        double a = measure_success_amplitude(amp, f(x)).real();
        avg_a2 += a * a / 8.0;
        avg_c2 += c[f(x)] * c[f(x)] / 8.0;
    }
    EXPECT_GE(avg_a2, avg_c2 * avg_c2 - 1e-12);
    EXPECT_GE(avg_c2 * avg_c2, 0.8 * 0.8 - 1e-12);
}

TEST(Canonical, PreservesAmplitudesAndFirstRegister) {
    ClassicalFunction f = identity_function(2);
    std::vector<double> c{1.0, 0.9, 0.8, 0.7};
    InverterSpec amp = amplify_positivity(build_noisy_inverter(f, c, InverterTarget::Preimage), f);
    InverterSpec can = canonicalize_garbage(amp, f);
    for (std::uint64_t y = 0; y < 4; ++y) {
        EXPECT_NEAR(measure_success_amplitude(can, y).real(), c[y] * c[y], 1e-9);
        StateVector s = simulate_inverter(can, y);
        const Register& yr = s.layout().reg("y");
        const Register& copy = s.layout().reg("anc0");
        for (std::uint64_t i = 0; i < s.dimension(); ++i) {
            if (std::abs(s[i]) > 1e-12) {
                EXPECT_EQ(yr.extract(i), y);
                EXPECT_EQ(copy.extract(i), 0u);
            }
        }
    }
}

TEST(Realize, AllGatesUnitary) {
    ClassicalFunction f = random_injective_function(3, 4, 11);
    for (const auto& inv :
         {build_perfect_inverter(f), build_dist_inverter(f),
          build_noisy_inverter(f, std::vector<double>(16, 0.3), InverterTarget::Preimage)}) {
        RegisterLayout layout = inverter_layout(inv);
        DenseMatrix m = to_matrix(realize(inv, default_wiring(inv), layout), layout);
        EXPECT_LE(m.unitarity_defect(), 1e-9);
    }
}

TEST(Realize, WrongWiringRejected) {
    ClassicalFunction f = identity_function(2);
    InverterSpec inv = build_perfect_inverter(f);
    RegisterLayout layout({{"y", 2}, {"beta", 3}});
    EXPECT_THROW(realize(inv, {"y", "beta", {}}, layout), Error);
}

TEST(FaultInjection, BreaksPerfectInverter) {
    ClassicalFunction f = identity_function(2);
    InverterSpec bad = inject_fault(build_perfect_inverter(f), 0.05);
    EXPECT_LT(measure_success_amplitude(bad, 1).real(), 1.0 - 1e-6);
}

TEST(GInverter, MatchesBruteForce) {
    ClassicalFunction f = parity_function(2);
    const int k = 1;
    HashFamily fam = HashFamily::exhaustive(2, k);
    InverterSpec g = build_g_inverter(f, k, fam);
    for (std::uint64_t y : {0u, 2u}) {
        for (std::uint64_t d = 0; d < fam.size(); ++d) {
            auto h = ToeplitzAffineHash::from_descriptor(2, k, d);
            for (std::uint64_t r = 0; r < 2; ++r) {
                std::vector<std::uint64_t> hits;
                for (std::uint64_t x = 0; x < 4; ++x)
                    if (f(x) == y && h(x) == r) hits.push_back(x);
                auto got = g_invert(g, y, d, r);
                if (hits.size() == 1) {
                    ASSERT_TRUE(got.has_value());
                    EXPECT_EQ(*got, hits[0]);
                } else {
                    EXPECT_FALSE(got.has_value());
                }
            }
        }
    }
}

TEST(GInverter, GateMatchesGInvert) {
    ClassicalFunction f = parity_function(2);
    InverterSpec g = build_g_inverter(f, 1, HashFamily::exhaustive(2, 1));
    GWiring w{"y", {"h0", "h1", "h2"}, {"r0"}, "x", "flag"};
    RegisterLayout layout({{"y", 2}, {"h0", 1}, {"h1", 1}, {"h2", 1}, {"r0", 1}, {"x", 2}, {"flag", 1}});
    GateOp gate = realize_g(g, w, layout);
    for (std::uint64_t y : {0u, 2u}) {
        for (std::uint64_t d = 0; d < 8; ++d) {
            for (std::uint64_t r = 0; r < 2; ++r) {
                Assignment a{{"y", y}, {"h0", d & 1}, {"h1", (d >> 1) & 1}, {"h2", d >> 2},
                             {"r0", r}, {"x", 0}, {"flag", 0}};
                StateVector s = apply_gate(make_basis_state(layout, a), gate);
                auto hit = g_invert(g, y, d, r);
                Assignment want = a;
                if (hit) {
                    want["x"] = *hit;
                } else {
                    want["flag"] = 1;
                }
                EXPECT_NEAR(s.amplitude(want).real(), 1.0, 1e-12);
            }
        }
    }
}

TEST(GInverter, HashGateXorsHashValue) {
    GWiring w{"", {"h0", "h1", "h2", "h3"}, {"r0", "r1"}, "x", ""};
    RegisterLayout layout({{"h0", 1}, {"h1", 1}, {"h2", 1}, {"h3", 1}, {"r0", 1}, {"r1", 1}, {"x", 1}});
    GateOp gate = hash_xor_gate(1, 2, w, layout);
    for (std::uint64_t d = 0; d < 16; ++d) {
        auto h = ToeplitzAffineHash::from_descriptor(1, 2, d);
        Assignment a{{"h0", d & 1}, {"h1", (d >> 1) & 1}, {"h2", (d >> 2) & 1}, {"h3", d >> 3},
                     {"r0", 0}, {"r1", 0}, {"x", 1}};
        StateVector s = apply_gate(make_basis_state(layout, a), gate);
        Assignment want = a;
        want["r0"] = h(1) & 1;
        want["r1"] = h(1) >> 1;
        EXPECT_NEAR(s.amplitude(want).real(), 1.0, 1e-12);
    }
}

TEST(GInverter, RequiresExhaustiveFamily) {
    EXPECT_THROW(build_g_inverter(parity_function(2), 1, HashFamily::seeded(2, 1, 3, 1)), Error);
}

TEST(Inverters, AnalyticMatchesSimulatedOnZoo) {
    for (const auto& inst : instance_zoo()) {
        if (!inst.f.injective() || inst.f.n() > 5) continue;
        auto a = seeded_noisy_profile(inst.f, 0.1, 8);
        InverterSpec inv = build_noisy_inverter(inst.f, a, InverterTarget::Preimage);
        for (std::uint64_t x = 0; x < inst.f.domain_size(); ++x) {
            std::uint64_t y = inst.f(x);
            EXPECT_NEAR(measure_success_amplitude(inv, y).real(), a[y], 1e-9) << inst.name;
        }
    }
}
