#include "qowf/sim/gate.h"

#include <algorithm>
#include <cmath>

#include "qowf/util/bits.h"
#include "qowf/util/error.h"

namespace qowf {

DenseMatrix DenseMatrix::identity(std::size_t d) {
    DenseMatrix m(d);
    for (std::size_t i = 0; i < d; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

DenseMatrix DenseMatrix::adjoint() const {
    DenseMatrix out(dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            out(c, r) = std::conj((*this)(r, c));
        }
    }
    return out;
}

DenseMatrix DenseMatrix::operator*(const DenseMatrix& rhs) const {
    require(dim == rhs.dim, "matrix dimension mismatch");
    DenseMatrix out(dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t k = 0; k < dim; ++k) {
            Amplitude a = (*this)(r, k);
            if (a == Amplitude{}) {
                continue;
            }
            for (std::size_t c = 0; c < dim; ++c) {
                out(r, c) += a * rhs(k, c);
            }
        }
    }
    return out;
}

double DenseMatrix::unitarity_defect() const {
    double worst = 0.0;
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            Amplitude s = 0.0;
            for (std::size_t k = 0; k < dim; ++k) {
                s += std::conj((*this)(k, r)) * (*this)(k, c);
            }
            if (r == c) {
                s -= 1.0;
            }
            worst = std::max(worst, std::abs(s));
        }
    }
    return worst;
}

namespace {

bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

void check_distinct(const std::vector<std::string>& targets) {
    require(!targets.empty(), "gate needs at least one target", "targets");
    for (std::size_t i = 0; i < targets.size(); ++i) {
        for (std::size_t j = i + 1; j < targets.size(); ++j) {
            require(targets[i] != targets[j], "duplicate gate target '" + targets[i] + "'",
                    "targets");
        }
    }
}

}  // namespace

GateOp GateOp::permutation(std::vector<std::string> targets, std::vector<std::uint64_t> table) {
    check_distinct(targets);
    require(is_power_of_two(table.size()), "permutation table size must be a power of two",
            "table");
    std::vector<bool> seen(table.size(), false);
    for (auto v : table) {
        if (v >= table.size() || seen[v]) {
            fail("permutation table is not a bijection", "table");
        }
        seen[v] = true;
    }
    GateOp op;
    op.kind_ = Kind::Permutation;
    op.targets_ = std::move(targets);
    op.table_ = std::move(table);
    return op;
}

GateOp GateOp::dense(std::vector<std::string> targets, DenseMatrix matrix) {
    check_distinct(targets);
    require(is_power_of_two(matrix.dim) && matrix.data.size() == matrix.dim * matrix.dim,
            "dense matrix must be square with power-of-two dimension", "matrix");
    double defect = matrix.unitarity_defect();
    if (defect > kTolerance) {
        fail(ErrorKind::NotUnitary,
             "matrix is not unitary (max |U^dagger U - I| = " + std::to_string(defect) + ")",
             "matrix");
    }
    GateOp op;
    op.kind_ = Kind::DenseUnitary;
    op.targets_ = std::move(targets);
    op.matrix_ = std::move(matrix);
    return op;
}

GateOp GateOp::controlled(std::string control, std::uint64_t value, GateOp inner) {
    for (const auto& t : inner.targets()) {
        require(t != control, "control register '" + control + "' is also a target", "control");
    }
    GateOp op;
    op.kind_ = Kind::Controlled;
    op.control_ = std::move(control);
    op.control_value_ = value;
    op.inner_ = std::make_shared<const GateOp>(std::move(inner));
    return op;
}

const std::vector<std::string>& GateOp::targets() const {
    return kind_ == Kind::Controlled ? inner_->targets() : targets_;
}

namespace {

struct TargetMap {
    std::vector<const Register*> regs;
    std::uint64_t mask = 0;
    int bits = 0;

    TargetMap(const RegisterLayout& layout, const std::vector<std::string>& names) {
        for (const auto& name : names) {
            const Register& r = layout.reg(name);
            regs.push_back(&r);
            mask |= r.mask();
            bits += r.width;
        }
    }

    std::uint64_t gather(std::uint64_t index) const {
        std::uint64_t sub = 0;
        int shift = 0;
        for (const Register* r : regs) {
            sub |= r->extract(index) << shift;
            shift += r->width;
        }
        return sub;
    }

    std::uint64_t scatter(std::uint64_t sub) const {
        std::uint64_t index = 0;
        int shift = 0;
        for (const Register* r : regs) {
            index |= ((sub >> shift) & low_mask(r->width)) << r->offset;
            shift += r->width;
        }
        return index;
    }
};

void apply_leaf_permutation(std::vector<Amplitude>& amps, const RegisterLayout& layout,
                            const GateOp& op, std::uint64_t cmask, std::uint64_t cvalue) {
    TargetMap tm(layout, op.targets());
    require((std::uint64_t{1} << tm.bits) == op.table().size(),
            "permutation table size does not match target widths", "targets");
    require((tm.mask & cmask) == 0, "gate targets overlap its controls", "targets");
    std::vector<Amplitude> out(amps.size());
    const auto& table = op.table();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if ((i & cmask) != cvalue) {
            out[i] = amps[i];
            continue;
        }
        std::uint64_t j = (i & ~tm.mask) | tm.scatter(table[tm.gather(i)]);
        out[j] = amps[i];
    }
    amps.swap(out);
}

void apply_leaf_dense(std::vector<Amplitude>& amps, const RegisterLayout& layout,
                      const GateOp& op, std::uint64_t cmask, std::uint64_t cvalue) {
    TargetMap tm(layout, op.targets());
    const DenseMatrix& m = op.matrix();
    require((std::uint64_t{1} << tm.bits) == m.dim,
            "matrix dimension does not match target widths", "targets");
    require((tm.mask & cmask) == 0, "gate targets overlap its controls", "targets");
    std::vector<std::uint64_t> offsets(m.dim);
    for (std::uint64_t s = 0; s < m.dim; ++s) {
        offsets[s] = tm.scatter(s);
    }
    std::vector<Amplitude> in(m.dim);
    for (std::uint64_t base = 0; base < amps.size(); ++base) {
        if ((base & tm.mask) != 0 || (base & cmask) != cvalue) {
            continue;
        }
        for (std::uint64_t s = 0; s < m.dim; ++s) {
            in[s] = amps[base | offsets[s]];
        }
        for (std::uint64_t r = 0; r < m.dim; ++r) {
            Amplitude acc = 0.0;
            const Amplitude* row = &m.data[r * m.dim];
            for (std::uint64_t c = 0; c < m.dim; ++c) {
                acc += row[c] * in[c];
            }
            amps[base | offsets[r]] = acc;
        }
    }
}

void apply_recursive(std::vector<Amplitude>& amps, const RegisterLayout& layout, const GateOp& op,
                     std::uint64_t cmask, std::uint64_t cvalue) {
    switch (op.kind()) {
        case GateOp::Kind::Permutation:
            apply_leaf_permutation(amps, layout, op, cmask, cvalue);
            return;
        case GateOp::Kind::DenseUnitary:
            apply_leaf_dense(amps, layout, op, cmask, cvalue);
            return;
        case GateOp::Kind::Controlled: {
            const Register& r = layout.reg(op.control());
            require(op.control_value() <= low_mask(r.width),
                    "control value does not fit register '" + r.name + "'", "control");
            std::uint64_t bits = op.control_value() << r.offset;
            if ((cmask & r.mask()) != 0 && (cvalue & r.mask()) != bits) {
                return;  // contradictory controls never fire
            }
            apply_recursive(amps, layout, op.inner(), cmask | r.mask(), cvalue | bits);
            return;
        }
    }
}

void check_norm(std::span<const Amplitude> amps) {
    double n2 = norm_squared(amps);
    if (std::abs(n2 - 1.0) > kTolerance) {
        fail(ErrorKind::Internal, "norm drifted to " + std::to_string(n2) + " after a gate");
    }
}

}  // namespace

void apply_in_place(std::vector<Amplitude>& amps, const RegisterLayout& layout, const GateOp& op) {
    require(amps.size() == layout.dimension(), "amplitude vector does not match layout");
    apply_recursive(amps, layout, op, 0, 0);
}

void apply_in_place(std::vector<Amplitude>& amps, const RegisterLayout& layout,
                    const Circuit& circuit) {
    for (const auto& op : circuit) {
        apply_in_place(amps, layout, op);
    }
}

StateVector apply_gate(const StateVector& state, const GateOp& op) {
    std::vector<Amplitude> amps(state.amplitudes().begin(), state.amplitudes().end());
    apply_in_place(amps, state.layout(), op);
    check_norm(amps);
    return StateVector(state.layout(), std::move(amps));
}

StateVector run_circuit(const StateVector& state, const Circuit& circuit) {
    std::vector<Amplitude> amps(state.amplitudes().begin(), state.amplitudes().end());
    for (const auto& op : circuit) {
        apply_in_place(amps, state.layout(), op);
        check_norm(amps);
    }
    return StateVector(state.layout(), std::move(amps));
}

GateOp adjoint(const GateOp& op) {
    switch (op.kind()) {
        case GateOp::Kind::Permutation: {
            std::vector<std::uint64_t> inverse(op.table().size());
            for (std::uint64_t s = 0; s < op.table().size(); ++s) {
                inverse[op.table()[s]] = s;
            }
            return GateOp::permutation(op.targets(), std::move(inverse));
        }
        case GateOp::Kind::DenseUnitary:
            return GateOp::dense(op.targets(), op.matrix().adjoint());
        case GateOp::Kind::Controlled:
            return GateOp::controlled(op.control(), op.control_value(), adjoint(op.inner()));
    }
    fail(ErrorKind::Internal, "unknown gate kind");
}

Circuit adjoint(const Circuit& circuit) {
    Circuit out;
    out.reserve(circuit.size());
    for (auto it = circuit.rbegin(); it != circuit.rend(); ++it) {
        out.push_back(adjoint(*it));
    }
    return out;
}

Circuit controlled(const Circuit& circuit, const std::string& control, std::uint64_t value) {
    Circuit out;
    out.reserve(circuit.size());
    for (const auto& op : circuit) {
        out.push_back(GateOp::controlled(control, value, op));
    }
    return out;
}

void append(Circuit& head, const Circuit& tail) { head.insert(head.end(), tail.begin(), tail.end()); }

DenseMatrix to_matrix(const Circuit& circuit, const RegisterLayout& layout) {
    require(layout.total_bits() <= 12, "to_matrix is limited to 12-bit layouts");
    std::size_t d = layout.dimension();
    DenseMatrix m(d);
    for (std::size_t c = 0; c < d; ++c) {
        std::vector<Amplitude> col(d);
        col[c] = 1.0;
        apply_in_place(col, layout, circuit);
        for (std::size_t r = 0; r < d; ++r) {
            m(r, c) = col[r];
        }
    }
    return m;
}

namespace gates {

GateOp hadamard(const RegisterLayout& layout, const std::string& name) {
    int w = layout.reg(name).width;
    std::size_t d = std::size_t{1} << w;
    double scale = std::pow(2.0, -0.5 * w);
    DenseMatrix m(d);
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            m(r, c) = (parity(r & c) ? -scale : scale);
        }
    }
    return GateOp::dense({name}, std::move(m));
}

GateOp pauli_x(const RegisterLayout& layout, const std::string& name) {
    int w = layout.reg(name).width;
    std::vector<std::uint64_t> table(std::size_t{1} << w);
    for (std::uint64_t s = 0; s < table.size(); ++s) {
        table[s] = s ^ low_mask(w);
    }
    return GateOp::permutation({name}, std::move(table));
}

GateOp classical(const RegisterLayout& layout, std::vector<std::string> targets,
                 const std::function<void(std::span<std::uint64_t>)>& map) {
    std::vector<int> widths;
    int bits = 0;
    for (const auto& t : targets) {
        widths.push_back(layout.reg(t).width);
        bits += widths.back();
    }
    require(bits <= 24, "classical gate over more than 24 target bits", "targets");
    std::vector<std::uint64_t> table(std::size_t{1} << bits);
    std::vector<std::uint64_t> values(widths.size());
    for (std::uint64_t s = 0; s < table.size(); ++s) {
        int shift = 0;
        for (std::size_t i = 0; i < widths.size(); ++i) {
            values[i] = (s >> shift) & low_mask(widths[i]);
            shift += widths[i];
        }
        map(values);
        std::uint64_t out = 0;
        shift = 0;
        for (std::size_t i = 0; i < widths.size(); ++i) {
            require(values[i] <= low_mask(widths[i]),
                    "classical map wrote a value wider than register '" + targets[i] + "'");
            out |= values[i] << shift;
            shift += widths[i];
        }
        table[s] = out;
    }
    return GateOp::permutation(std::move(targets), std::move(table));
}

GateOp xor_into(const RegisterLayout& layout, const std::string& src, const std::string& dst) {
    require(layout.reg(src).width <= layout.reg(dst).width,
            "xor_into source wider than destination", "targets");
    return classical(layout, {src, dst}, [](std::span<std::uint64_t> v) { v[1] ^= v[0]; });
}

GateOp swap(const RegisterLayout& layout, const std::vector<std::string>& a,
            const std::vector<std::string>& b) {
    int wa = 0;
    int wb = 0;
    for (const auto& n : a) {
        wa += layout.reg(n).width;
    }
    for (const auto& n : b) {
        wb += layout.reg(n).width;
    }
    require(wa == wb, "swap groups must have equal total width", "targets");
    std::vector<std::string> targets = a;
    targets.insert(targets.end(), b.begin(), b.end());
    std::vector<std::uint64_t> table(std::size_t{1} << (wa + wb));
    for (std::uint64_t s = 0; s < table.size(); ++s) {
        std::uint64_t lo = s & low_mask(wa);
        std::uint64_t hi = s >> wa;
        table[s] = hi | (lo << wa);
    }
    return GateOp::permutation(std::move(targets), std::move(table));
}

GateOp rotation(const RegisterLayout& layout, const std::string& name, double theta) {
    require(layout.reg(name).width == 1, "rotation acts on a 1-bit register", "targets");
    DenseMatrix m(2);
    m(0, 0) = std::cos(theta);
    m(0, 1) = -std::sin(theta);
    m(1, 0) = std::sin(theta);
    m(1, 1) = std::cos(theta);
    return GateOp::dense({name}, std::move(m));
}

}  // namespace gates

}  // namespace qowf
