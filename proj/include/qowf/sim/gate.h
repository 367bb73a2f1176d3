#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "qowf/sim/state_vector.h"

namespace qowf {

/// Square row-major complex matrix.
struct DenseMatrix {
    std::size_t dim = 0;
    std::vector<Amplitude> data;

    DenseMatrix() = default;
    explicit DenseMatrix(std::size_t d) : dim(d), data(d * d) {}

    static DenseMatrix identity(std::size_t d);

    Amplitude& operator()(std::size_t r, std::size_t c) { return data[r * dim + c]; }
    Amplitude operator()(std::size_t r, std::size_t c) const { return data[r * dim + c]; }

    DenseMatrix adjoint() const;
    DenseMatrix operator*(const DenseMatrix& rhs) const;

    /// max_{ij} |(U^dagger U - I)_{ij}|
    double unitarity_defect() const;
};

/// One gate acting on named registers. Targets of a gate are packed
/// little-endian in the order listed: the first target occupies the low bits
/// of the sub-basis index used by tables and matrices.
class GateOp {
  public:
    enum class Kind { Permutation, DenseUnitary, Controlled };

    /// Reversible classical map: sub-basis index s goes to table[s]. Rejects
    /// tables that are not bijections on a power-of-two domain.
    static GateOp permutation(std::vector<std::string> targets, std::vector<std::uint64_t> table);

    /// Rejects matrices with unitarity defect above kTolerance.
    static GateOp dense(std::vector<std::string> targets, DenseMatrix matrix);

    /// `inner` applied only on basis states where register `control` holds
    /// `value`. Nest for multiple controls.
    static GateOp controlled(std::string control, std::uint64_t value, GateOp inner);

    Kind kind() const { return kind_; }

    /// Target registers of the innermost gate.
    const std::vector<std::string>& targets() const;

    const std::vector<std::uint64_t>& table() const { return table_; }
    const DenseMatrix& matrix() const { return matrix_; }
    const std::string& control() const { return control_; }
    std::uint64_t control_value() const { return control_value_; }
    const GateOp& inner() const { return *inner_; }

  private:
    GateOp() = default;

    Kind kind_ = Kind::Permutation;
    std::vector<std::string> targets_;
    std::vector<std::uint64_t> table_;
    DenseMatrix matrix_;
    std::string control_;
    std::uint64_t control_value_ = 0;
    std::shared_ptr<const GateOp> inner_;
};

using Circuit = std::vector<GateOp>;

StateVector apply_gate(const StateVector& state, const GateOp& op);

StateVector run_circuit(const StateVector& state, const Circuit& circuit);

/// Applies `op` to a raw amplitude vector without normalization checks. Used
/// by analyses that work with unnormalized vectors.
void apply_in_place(std::vector<Amplitude>& amps, const RegisterLayout& layout, const GateOp& op);
void apply_in_place(std::vector<Amplitude>& amps, const RegisterLayout& layout,
                    const Circuit& circuit);

GateOp adjoint(const GateOp& op);
Circuit adjoint(const Circuit& circuit);

/// Every gate of `circuit` controlled on `control == value`.
Circuit controlled(const Circuit& circuit, const std::string& control, std::uint64_t value);

/// Appends `tail` to `head`.
void append(Circuit& head, const Circuit& tail);

/// Full matrix of a circuit over `layout` (column j = circuit applied to |j>).
/// Only for small layouts.
DenseMatrix to_matrix(const Circuit& circuit, const RegisterLayout& layout);

namespace gates {

/// Hadamard on every bit of register `name`.
GateOp hadamard(const RegisterLayout& layout, const std::string& name);

/// Flips every bit of register `name`.
GateOp pauli_x(const RegisterLayout& layout, const std::string& name);

/// Permutation built from a map on the unpacked target values. `map` receives
/// one value per target, in target order, and rewrites them in place.
GateOp classical(const RegisterLayout& layout, std::vector<std::string> targets,
                 const std::function<void(std::span<std::uint64_t>)>& map);

/// dst ^= src (src may be narrower than dst).
GateOp xor_into(const RegisterLayout& layout, const std::string& src, const std::string& dst);

/// Exchanges the contents of two equal-width groups of registers.
GateOp swap(const RegisterLayout& layout, const std::vector<std::string>& a,
            const std::vector<std::string>& b);

/// Single-qubit real rotation [[cos t, -sin t], [sin t, cos t]] on a 1-bit register.
GateOp rotation(const RegisterLayout& layout, const std::string& name, double theta);

}  // namespace gates

}  // namespace qowf
