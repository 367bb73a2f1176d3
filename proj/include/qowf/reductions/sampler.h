#pragma once

#include <optional>
#include <vector>

#include "qowf/classical/function.h"
#include "qowf/inverters/inverter.h"
#include "qowf/sim/state_vector.h"

namespace qowf {

struct CqsReport {
    double fidelity = 0.0;  // |<Q_n|C_n (x) 0>|^2
    double delta = 0.0;
    double epsilon = 0.0;   // 2 delta - delta^2
    double bound = 0.0;     // (1 - delta)^2
    bool pass = false;      // fidelity >= bound (within tolerance)
};

CqsReport make_cqs_report(double fidelity, double delta);

/// Default delta for an inverter: 1 - (1/2^n) sum_x |c_f(x)|^2.
double average_failure(const InverterSpec& inverter);

struct SamplerResult {
    StateVector state;
    CqsReport report;
};

/// Uniform superposition over inputs, U_f, register swap, then the inverter.
/// The final layout is [y: m, x: n, inverter ancillas...]. The inverter must
/// be XOR-covariant and built for f.
SamplerResult sampler_from_inverter(const ClassicalFunction& f, const InverterSpec& inverter,
                                    std::optional<double> delta = std::nullopt);

/// Same pipeline with the adjoint of a distributional inverter at the end.
SamplerResult dist_sampler_from_inverter(const ClassicalFunction& f, const InverterSpec& inverter,
                                         std::optional<double> delta = std::nullopt);

/// |<state | C_n (x) 0...>|^2. The first register of `state` must have width m.
double cqs_fidelity(const StateVector& state, const ClassicalFunction& f);

/// f_C(x, y) = (x, C^x(y)); x occupies the high input and output bits.
/// The family size must be a power of two.
ClassicalFunction build_szk_candidate(const std::vector<ClassicalFunction>& family);

}  // namespace qowf
