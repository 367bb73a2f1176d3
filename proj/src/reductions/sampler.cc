#include "qowf/reductions/sampler.h"

#include <cmath>

#include "qowf/sim/gate.h"
#include "qowf/sim/ops.h"
#include "qowf/util/bits.h"
#include "qowf/util/error.h"

namespace qowf {

namespace {

struct Pipeline {
    RegisterLayout layout;
    InverterWiring wiring;
};

// Prepares sum_x |x>|f(x)>|0...> and reorders it to [y, x, ancillas].
StateVector prepare_sample_pairs(const ClassicalFunction& f, const InverterSpec& inverter,
                                 Pipeline& pipe) {
    std::vector<std::pair<std::string, int>> regs{{"x", f.n()}, {"y", f.m()}};
    pipe.wiring = InverterWiring{"y", "x", {}};
    auto widths = ancilla_widths(inverter);
    for (std::size_t i = 0; i < widths.size(); ++i) {
        std::string name = "anc" + std::to_string(i);
        regs.emplace_back(name, widths[i]);
        pipe.wiring.ancillas.push_back(name);
    }
    RegisterLayout layout(regs);
    Assignment zero;
    for (const auto& r : layout.registers()) {
        zero[r.name] = 0;
    }
    StateVector state = make_basis_state(layout, zero);
    state = apply_gate(state, gates::hadamard(layout, "x"));
    state = apply_gate(state, gates::classical(layout, {"x", "y"}, [&](std::span<std::uint64_t> v) {
                           v[1] ^= f(v[0]);
                       }));
    std::vector<std::string> order{"y", "x"};
    order.insert(order.end(), pipe.wiring.ancillas.begin(), pipe.wiring.ancillas.end());
    state = permute_registers(state, order);
    pipe.layout = state.layout();
    return state;
}

}  // namespace

CqsReport make_cqs_report(double fidelity, double delta) {
    require(delta >= 0.0 && delta <= 1.0, "delta must lie in [0, 1]", "delta");
    CqsReport r;
    r.fidelity = fidelity;
    r.delta = delta;
    r.epsilon = 2.0 * delta - delta * delta;
    r.bound = (1.0 - delta) * (1.0 - delta);
    r.pass = fidelity >= r.bound - kTolerance;
    return r;
}

double average_failure(const InverterSpec& inverter) {
    const auto& f = inverter.f;
    double acc = 0.0;
    for (std::uint64_t x = 0; x < f.domain_size(); ++x) {
        acc += std::norm(inverter.profile[f(x)]);
    }
    return std::clamp(1.0 - acc / static_cast<double>(f.domain_size()), 0.0, 1.0);
}

double cqs_fidelity(const StateVector& state, const ClassicalFunction& f) {
    const auto& regs = state.layout().registers();
    require(!regs.empty() && regs.front().width == f.m(),
            "first register must hold the m-bit output", "state");
    Distribution d = output_distribution(f);
    Amplitude overlap = 0.0;
    for (std::uint64_t y = 0; y < d.counts().size(); ++y) {
        if (d.counts()[y] != 0) {
            overlap += std::sqrt(d.probability_double(y)) * state[y];
        }
    }
    return std::norm(overlap);
}

SamplerResult sampler_from_inverter(const ClassicalFunction& f, const InverterSpec& inverter,
                                    std::optional<double> delta) {
    require(inverter.f == f, "inverter was built for a different function", "inverter");
    require(f.injective(), "the one-to-one sampler needs an injective f", "f");
    require(xor_covariant(inverter),
            std::string("inverter kind '") + to_string(inverter.kind) +
                "' does not act as |y>|b> -> |y>|x xor b>; use the perfect, noisy or phased kinds",
            "inverter");
    Pipeline pipe;
    StateVector state = prepare_sample_pairs(f, inverter, pipe);
    state = run_circuit(state, realize(inverter, pipe.wiring, pipe.layout));
    double fid = cqs_fidelity(state, f);
    return {std::move(state), make_cqs_report(fid, delta.value_or(average_failure(inverter)))};
}

SamplerResult dist_sampler_from_inverter(const ClassicalFunction& f, const InverterSpec& inverter,
                                         std::optional<double> delta) {
    require(inverter.f == f, "inverter was built for a different function", "inverter");
    require(inverter.target == InverterTarget::PreimageSuperposition,
            "the distributional sampler needs a distributional inverter", "inverter");
    Pipeline pipe;
    StateVector state = prepare_sample_pairs(f, inverter, pipe);
    state = run_circuit(state, adjoint(realize(inverter, pipe.wiring, pipe.layout)));
    double fid = cqs_fidelity(state, f);
    return {std::move(state), make_cqs_report(fid, delta.value_or(average_failure(inverter)))};
}

ClassicalFunction build_szk_candidate(const std::vector<ClassicalFunction>& family) {
    require(!family.empty(), "circuit family is empty", "family");
    const std::uint64_t size = family.size();
    require((size & (size - 1)) == 0, "family size must be a power of two", "family");
    const int index_bits = floor_log2(size);
    const int m_in = family.front().n();
    const int m_out = family.front().m();
    for (std::size_t i = 0; i < family.size(); ++i) {
        require(family[i].n() == m_in && family[i].m() == m_out,
                "all circuits must share input and output widths",
                "family[" + std::to_string(i) + "]");
    }
    require(index_bits + m_in <= kMaxInputBits, "f_C input exceeds the classical cap", "family");
    std::vector<std::uint64_t> table(std::uint64_t{1} << (index_bits + m_in));
    for (std::uint64_t x = 0; x < size; ++x) {
        for (std::uint64_t y = 0; y < family[x].domain_size(); ++y) {
            table[(x << m_in) | y] = (x << m_out) | family[x](y);
        }
    }
    return ClassicalFunction(index_bits + m_in, index_bits + m_out, std::move(table));
}

}  // namespace qowf
