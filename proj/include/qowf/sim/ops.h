#pragma once

#include <string>
#include <vector>

#include "qowf/sim/gate.h"

namespace qowf {

/// <a|b>, conjugate-linear in `a`, summed in ascending index order.
Amplitude inner_product(const StateVector& a, const StateVector& b);

enum class SwapTestMode { Analytic, Circuit };

/// Probability that the SWAP-test ancilla reads 0: 1/2 + |<a|b>|^2 / 2.
/// Circuit mode simulates ancilla + controlled-SWAP + Hadamards exactly.
double swap_test_prob(const StateVector& a, const StateVector& b, SwapTestMode mode);

/// |a> (x) |b>: registers of `a` keep the low bits. Names are prefixed with
/// the given strings so both halves can share register names.
StateVector tensor(const StateVector& a, const StateVector& b, const std::string& prefix_a = {},
                   const std::string& prefix_b = {});

/// Reorders registers; `order` lists every register name once. Physically
/// moves amplitudes, so this realizes SWAPs between registers of any width.
StateVector permute_registers(const StateVector& state, const std::vector<std::string>& order);

/// Real encoding on one extra most-significant bit:
/// (x + iy)|j> becomes x|j>|0> + y|j>|1>.
StateVector realify(const StateVector& state, const std::string& extra = "re");

/// Real orthogonal version of a gate acting on the same targets plus `extra`:
/// A + iB becomes [[A, -B], [B, A]] with `extra` as the block index.
GateOp realify(const GateOp& op, const std::string& extra);
Circuit realify(const Circuit& circuit, const std::string& extra);

}  // namespace qowf
