#include "qowf/sim/ops.h"

#include <cmath>

#include "qowf/util/bits.h"
#include "qowf/util/error.h"

namespace qowf {

Amplitude inner_product(const StateVector& a, const StateVector& b) {
    require(a.layout() == b.layout(), "inner product needs identical layouts", "layout");
    Amplitude acc = 0.0;
    for (std::uint64_t i = 0; i < a.dimension(); ++i) {
        acc += std::conj(a[i]) * b[i];
    }
    return acc;
}

StateVector tensor(const StateVector& a, const StateVector& b, const std::string& prefix_a,
                   const std::string& prefix_b) {
    std::vector<std::pair<std::string, int>> regs;
    for (const auto& r : a.layout().registers()) {
        regs.emplace_back(prefix_a + r.name, r.width);
    }
    for (const auto& r : b.layout().registers()) {
        regs.emplace_back(prefix_b + r.name, r.width);
    }
    RegisterLayout layout(regs);
    std::vector<Amplitude> amps(layout.dimension());
    const int shift = a.layout().total_bits();
    for (std::uint64_t j = 0; j < b.dimension(); ++j) {
        if (b[j] == Amplitude{}) {
            continue;
        }
        for (std::uint64_t i = 0; i < a.dimension(); ++i) {
            amps[i | (j << shift)] = a[i] * b[j];
        }
    }
    return StateVector(std::move(layout), std::move(amps));
}

double swap_test_prob(const StateVector& a, const StateVector& b, SwapTestMode mode) {
    require(a.layout() == b.layout(), "SWAP test needs identical layouts", "layout");
    if (mode == SwapTestMode::Analytic) {
        return 0.5 + 0.5 * std::norm(inner_product(a, b));
    }
    RegisterLayout anc_layout({{"anc", 1}});
    StateVector anc = make_basis_state(anc_layout, Assignment{{"anc", 0}});
    StateVector joint = tensor(anc, tensor(a, b, "a.", "b."));
    std::vector<std::string> group_a;
    std::vector<std::string> group_b;
    for (const auto& r : a.layout().registers()) {
        group_a.push_back("a." + r.name);
        group_b.push_back("b." + r.name);
    }
    const RegisterLayout& layout = joint.layout();
    Circuit circuit{
        gates::hadamard(layout, "anc"),
        GateOp::controlled("anc", 1, gates::swap(layout, group_a, group_b)),
        gates::hadamard(layout, "anc"),
    };
    return run_circuit(joint, circuit).probability("anc", 0);
}

StateVector permute_registers(const StateVector& state, const std::vector<std::string>& order) {
    const RegisterLayout& src = state.layout();
    require(order.size() == src.registers().size(), "register order must list every register",
            "order");
    std::vector<std::pair<std::string, int>> regs;
    for (const auto& name : order) {
        regs.emplace_back(name, src.reg(name).width);
    }
    RegisterLayout dst(regs, src.max_bits());
    std::vector<Amplitude> amps(state.dimension());
    for (std::uint64_t i = 0; i < state.dimension(); ++i) {
        std::uint64_t j = 0;
        for (const auto& r : dst.registers()) {
            j |= src.reg(r.name).extract(i) << r.offset;
        }
        amps[j] = state[i];
    }
    return StateVector(std::move(dst), std::move(amps));
}

StateVector realify(const StateVector& state, const std::string& extra) {
    RegisterLayout layout = state.layout().with(extra, 1);
    std::vector<Amplitude> amps(layout.dimension());
    const std::uint64_t high = state.dimension();
    for (std::uint64_t i = 0; i < state.dimension(); ++i) {
        amps[i] = state[i].real();
        amps[i | high] = state[i].imag();
    }
    return StateVector(std::move(layout), std::move(amps));
}

GateOp realify(const GateOp& op, const std::string& extra) {
    switch (op.kind()) {
        case GateOp::Kind::Permutation:
            return op;
        case GateOp::Kind::Controlled:
            require(op.control() != extra, "realify: extra register is already a control");
            return GateOp::controlled(op.control(), op.control_value(), realify(op.inner(), extra));
        case GateOp::Kind::DenseUnitary: {
            const DenseMatrix& m = op.matrix();
            const std::size_t d = m.dim;
            DenseMatrix out(2 * d);
            for (std::size_t r = 0; r < d; ++r) {
                for (std::size_t c = 0; c < d; ++c) {
                    double re = m(r, c).real();
                    double im = m(r, c).imag();
                    out(r, c) = re;
                    out(r, c + d) = -im;
                    out(r + d, c) = im;
                    out(r + d, c + d) = re;
                }
            }
            std::vector<std::string> targets = op.targets();
            targets.push_back(extra);
            return GateOp::dense(std::move(targets), std::move(out));
        }
    }
    fail(ErrorKind::Internal, "unknown gate kind");
}

Circuit realify(const Circuit& circuit, const std::string& extra) {
    Circuit out;
    out.reserve(circuit.size());
    for (const auto& op : circuit) {
        out.push_back(realify(op, extra));
    }
    return out;
}

}  // namespace qowf
