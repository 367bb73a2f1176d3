#include "qowf/il/quantum_sampler.h"

#include <algorithm>
#include <cmath>

#include "qowf/hashing/toeplitz.h"
#include "qowf/util/bits.h"
#include "qowf/util/error.h"

namespace qowf {

namespace {

std::vector<std::string> bit_names(const std::string& prefix, int count) {
    std::vector<std::string> out;
    for (int i = 0; i < count; ++i) {
        out.push_back(prefix + std::to_string(i));
    }
    return out;
}

std::vector<std::pair<std::string, int>> one_bit_regs(const std::vector<std::string>& names) {
    std::vector<std::pair<std::string, int>> out;
    for (const auto& n : names) {
        out.emplace_back(n, 1);
    }
    return out;
}

GWiring prefix_wiring(const GWiring& full, int dbits, int k, const std::string& x,
                      const std::string& flag) {
    GWiring w{full.y, {full.h_bits.begin(), full.h_bits.begin() + dbits},
              {full.r_bits.begin(), full.r_bits.begin() + k}, x, flag};
    return w;
}

Assignment zeros(const RegisterLayout& layout) {
    Assignment a;
    for (const auto& r : layout.registers()) {
        a[r.name] = 0;
    }
    return a;
}

double expected_overlap(const UniqueHitStats& stats, int k) {
    double sum = 0.0;
    for (auto u : stats.unique_members) {
        sum += static_cast<double>(u);
    }
    return sum / (static_cast<double>(stats.members) * std::sqrt(std::ldexp(1.0, k)) *
                  std::sqrt(static_cast<double>(stats.preimage.size())));
}

Circuit control_all(Circuit c, const std::vector<std::pair<std::string, std::uint64_t>>& controls) {
    for (const auto& [name, value] : controls) {
        c = controlled(c, name, value);
    }
    return c;
}

// Layout and wiring shared by AP and QS.
struct ApFrame {
    RegisterLayout layout;
    GWiring wiring;  // full-width h and r
    std::vector<std::string> c;
    std::vector<std::string> g;
    std::vector<std::string> work;  // h.., r.., x, flag
};

ApFrame ap_frame(const GInverterSet& set, bool with_qs) {
    const auto& f = set.f();
    const int kmax = *std::max_element(set.rounds().begin(), set.rounds().end());
    const int dmax = ToeplitzAffineHash::descriptor_bits(f.n(), kmax);
    const int rounds = static_cast<int>(set.rounds().size());
    ApFrame fr;
    fr.wiring = GWiring{"y", bit_names("h", dmax), bit_names("r", kmax), "x", "flag"};
    fr.c = bit_names("c", rounds);
    fr.g = bit_names("g", rounds);
    std::vector<std::pair<std::string, int>> regs{{"y", f.m()}};
    for (const auto& v : {one_bit_regs(fr.wiring.h_bits), one_bit_regs(fr.wiring.r_bits)}) {
        regs.insert(regs.end(), v.begin(), v.end());
    }
    regs.emplace_back("x", f.n());
    regs.emplace_back("flag", 1);
    for (const auto& v : {one_bit_regs(fr.c), one_bit_regs(fr.g)}) {
        regs.insert(regs.end(), v.begin(), v.end());
    }
    if (with_qs) {
        regs.emplace_back("fqs", 1);
        regs.emplace_back("xs", f.n());
        regs.emplace_back("fs", 1);
    }
    fr.layout = RegisterLayout(regs);
    fr.work = fr.wiring.h_bits;
    fr.work.insert(fr.work.end(), fr.wiring.r_bits.begin(), fr.wiring.r_bits.end());
    fr.work.push_back("x");
    fr.work.push_back("flag");
    return fr;
}

std::vector<std::pair<std::string, std::uint64_t>> round_controls(const ApFrame& fr, std::size_t t) {
    std::vector<std::pair<std::string, std::uint64_t>> out;
    if (t > 0) {
        out.emplace_back(fr.c[t - 1], 1);
    }
    for (std::size_t s = 0; s < t; ++s) {
        out.emplace_back(fr.g[s], 0);
    }
    return out;
}

// c_s = 1 for s < t, 0 otherwise, and every garbage flag clear.
std::vector<std::pair<std::string, std::uint64_t>> pattern(const ApFrame& fr, std::size_t t) {
    std::vector<std::pair<std::string, std::uint64_t>> out;
    for (std::size_t s = 0; s < fr.c.size(); ++s) {
        out.emplace_back(fr.c[s], s < t ? 1 : 0);
        out.emplace_back(fr.g[s], 0);
    }
    return out;
}

Circuit ap_circuit(const GInverterSet& set, const ApFrame& fr) {
    Circuit out;
    const int n = set.f().n();
    for (std::size_t t = 0; t < set.rounds().size(); ++t) {
        const int k = set.rounds()[t];
        GWiring w = prefix_wiring(fr.wiring, ToeplitzAffineHash::descriptor_bits(n, k), k, "x", "flag");
        Circuit pqs = pqs_circuit(set.at(t), w, fr.layout);
        Circuit round = pqs;
        round.push_back(gates::xor_into(fr.layout, "flag", fr.c[t]));
        append(round, adjoint(pqs));
        std::vector<std::string> targets = fr.work;
        targets.push_back(fr.g[t]);
        round.push_back(gates::classical(fr.layout, targets, [](std::span<std::uint64_t> v) {
            bool dirty = std::any_of(v.begin(), v.end() - 1, [](std::uint64_t b) { return b != 0; });
            if (dirty) {
                v.back() ^= 1;
            }
        }));
        append(out, control_all(std::move(round), round_controls(fr, t)));
    }
    return out;
}

Assignment pattern_assignment(const ApFrame& fr, std::uint64_t y, std::size_t t) {
    Assignment a = zeros(fr.layout);
    a["y"] = y;
    for (std::size_t s = 0; s < fr.c.size() && s < t; ++s) {
        a[fr.c[s]] = 1;
    }
    return a;
}

}  // namespace

Circuit pqs_circuit(const InverterSpec& g, const GWiring& w, const RegisterLayout& layout) {
    require(g.kind == InverterKind::GPerfect, "PQS needs a g-inverter", "g");
    Circuit out;
    for (const auto& h : w.h_bits) {
        out.push_back(gates::hadamard(layout, h));
    }
    for (const auto& r : w.r_bits) {
        out.push_back(gates::hadamard(layout, r));
    }
    out.push_back(realize_g(g, w, layout));
    out.push_back(GateOp::controlled(w.flag, 0, hash_xor_gate(g.f.n(), g.k, w, layout)));
    for (const auto& h : w.h_bits) {
        out.push_back(gates::hadamard(layout, h));
    }
    return out;
}

namespace {

struct PqsFrame {
    RegisterLayout layout;
    GWiring wiring;
};

PqsFrame pqs_frame(const InverterSpec& g, bool with_copy) {
    const auto& f = g.f;
    const int dbits = g.family->descriptor_bits();
    PqsFrame fr;
    fr.wiring = GWiring{"y", bit_names("h", dbits), bit_names("r", g.k), "x", "flag"};
    std::vector<std::pair<std::string, int>> regs{{"y", f.m()},
                                                  {"k", floor_log2(static_cast<std::uint64_t>(g.k)) + 1}};
    for (const auto& v : {one_bit_regs(fr.wiring.h_bits), one_bit_regs(fr.wiring.r_bits)}) {
        regs.insert(regs.end(), v.begin(), v.end());
    }
    regs.emplace_back("x", f.n());
    regs.emplace_back("flag", 1);
    if (with_copy) {
        regs.emplace_back("c", 1);
    }
    fr.layout = RegisterLayout(regs);
    return fr;
}

}  // namespace

PqsResult pqs_apply(const InverterSpec& g, std::uint64_t y) {
    require(g.kind == InverterKind::GPerfect, "PQS needs a g-inverter", "g");
    auto pre = g.f.preimage(y);
    require(!pre.empty(), "y has an empty preimage", "y");
    PqsFrame fr = pqs_frame(g, false);
    Assignment start = zeros(fr.layout);
    start["y"] = y;
    start["k"] = static_cast<std::uint64_t>(g.k);
    Circuit c = controlled(pqs_circuit(g, fr.wiring, fr.layout), "k", static_cast<std::uint64_t>(g.k));
    StateVector state = run_circuit(make_basis_state(fr.layout, start), c);

    Amplitude acc = 0.0;
    Assignment target = start;
    for (auto x : pre) {
        target["x"] = x;
        acc += state.amplitude(target);
    }
    UniqueHitStats stats = unique_hit_stats(pre, g.k, *g.family);
    PqsResult r{std::move(state)};
    r.success_amplitude = acc.real() / std::sqrt(static_cast<double>(pre.size()));
    r.p = stats.p;
    r.sqrt_p = std::sqrt(to_double(stats.p));
    r.expected_amplitude = expected_overlap(stats, g.k);
    r.collision_deficit = r.sqrt_p - r.expected_amplitude;
    return r;
}

PapResult pap_apply(const InverterSpec& g, std::uint64_t y) {
    require(g.kind == InverterKind::GPerfect, "PAP needs a g-inverter", "g");
    require(!g.f.preimage(y).empty(), "y has an empty preimage", "y");
    PqsFrame fr = pqs_frame(g, true);
    Assignment start = zeros(fr.layout);
    start["y"] = y;
    start["k"] = static_cast<std::uint64_t>(g.k);
    Circuit pqs = pqs_circuit(g, fr.wiring, fr.layout);
    Circuit c = pqs;
    c.push_back(gates::xor_into(fr.layout, "flag", "c"));
    append(c, adjoint(pqs));
    c = controlled(c, "k", static_cast<std::uint64_t>(g.k));
    StateVector state = run_circuit(make_basis_state(fr.layout, start), c);
    PapResult r{std::move(state)};
    r.weight_success = r.state.amplitude(start).real();
    start["c"] = 1;
    r.weight_failure = r.state.amplitude(start).real();
    r.p = unique_hit_stats(g.f, y, g.k, *g.family).p;
    return r;
}

ApResult ap_apply(const GInverterSet& set, std::uint64_t y) {
    require(!set.f().preimage(y).empty(), "y has an empty preimage", "y");
    ApFrame fr = ap_frame(set, false);
    Assignment start = zeros(fr.layout);
    start["y"] = y;
    StateVector state = run_circuit(make_basis_state(fr.layout, start), ap_circuit(set, fr));
    ApResult r{std::move(state)};
    const std::size_t rounds = set.rounds().size();
    for (std::size_t t = 0; t < rounds; ++t) {
        r.coefficients.push_back(r.state.amplitude(pattern_assignment(fr, y, t)).real());
    }
    r.leftover = r.state.amplitude(pattern_assignment(fr, y, rounds)).real();
    r.profile = p_profile(set.f(), y, set.rounds());
    return r;
}

QsResult qs_apply(const GInverterSet& set, std::uint64_t y) {
    auto pre = set.f().preimage(y);
    require(!pre.empty(), "y has an empty preimage", "y");
    ApFrame fr = ap_frame(set, true);
    const std::size_t rounds = set.rounds().size();
    const int n = set.f().n();

    Circuit ap = ap_circuit(set, fr);
    Circuit c = ap;
    std::vector<std::string> mark_targets = fr.c;
    mark_targets.insert(mark_targets.end(), fr.g.begin(), fr.g.end());
    mark_targets.push_back("fqs");
    c.push_back(gates::classical(fr.layout, mark_targets, [rounds](std::span<std::uint64_t> v) {
        std::uint64_t cbits = 0;
        bool garbage = false;
        for (std::size_t s = 0; s < rounds; ++s) {
            cbits |= v[s] << s;
            garbage = garbage || v[rounds + s] != 0;
        }
        // Success patterns are 0, 1, 11, ... with fewer than `rounds` ones.
        bool success = ((cbits + 1) & cbits) == 0 && cbits != (std::uint64_t{1} << rounds) - 1;
        if (garbage || !success) {
            v.back() ^= 1;
        }
    }));
    std::vector<double> overlaps;
    for (std::size_t t = 0; t < rounds; ++t) {
        const int k = set.rounds()[t];
        GWiring w = prefix_wiring(fr.wiring, ToeplitzAffineHash::descriptor_bits(n, k), k, "xs", "fs");
        auto controls = pattern(fr, t);
        controls.emplace_back("fqs", 0);
        append(c, control_all(pqs_circuit(set.at(t), w, fr.layout), controls));
        overlaps.push_back(expected_overlap(unique_hit_stats(pre, k, *set.at(t).family), k));
    }
    append(c, adjoint(ap));

    Assignment start = zeros(fr.layout);
    start["y"] = y;
    StateVector state = run_circuit(make_basis_state(fr.layout, start), c);

    QsResult r{std::move(state)};
    Amplitude acc = 0.0;
    Assignment target = start;
    for (auto x : pre) {
        target["xs"] = x;
        Amplitude a = r.state.amplitude(target);
        r.preimage_amplitudes.push_back(a.real());
        acc += a;
    }
    r.success_amplitude = acc.real() / std::sqrt(static_cast<double>(pre.size()));
    r.profile = p_profile(set.f(), y, set.rounds());
    for (std::size_t t = 0; t < rounds; ++t) {
        double q = to_double(r.profile.q[t]);
        r.analytic += q * q * std::sqrt(to_double(r.profile.p[t]));
        r.expected += q * q * overlaps[t];
    }
    r.collision_deficit = r.analytic - r.expected;
    return r;
}

ApAdjointCheck ap_adjoint_identity(const GInverterSet& set, std::uint64_t y) {
    auto pre = set.f().preimage(y);
    require(!pre.empty(), "y has an empty preimage", "y");
    ApFrame fr = ap_frame(set, false);
    ScheduleProfile profile = p_profile(set.f(), y, set.rounds());
    std::vector<Amplitude> amps(fr.layout.dimension(), 0.0);
    ApAdjointCheck out;
    for (std::size_t t = 0; t < set.rounds().size(); ++t) {
        const int k = set.rounds()[t];
        double w = expected_overlap(unique_hit_stats(pre, k, *set.at(t).family), k);
        double q = to_double(profile.q[t]);
        amps[fr.layout.encode(pattern_assignment(fr, y, t))] = q * w;
        out.analytic += q * q * w;
    }
    apply_in_place(amps, fr.layout, adjoint(ap_circuit(set, fr)));
    Assignment clean = zeros(fr.layout);
    clean["y"] = y;
    out.simulated = amps[fr.layout.encode(clean)].real();
    return out;
}

}  // namespace qowf
