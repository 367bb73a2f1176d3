#pragma once

#include <cstdint>
#include <vector>

#include "qowf/classical/function.h"
#include "qowf/il/classical_sampler.h"
#include "qowf/il/schedule.h"
#include "qowf/inverters/inverter.h"
#include "qowf/sim/gate.h"
#include "qowf/sim/state_vector.h"

namespace qowf {

/// Q (x) B, the g-inverter, r ^= h(x) on the success branch, Q^dagger.
/// Hash descriptor and r registers are the first D and k bits of the wiring.
Circuit pqs_circuit(const InverterSpec& g, const GWiring& wiring, const RegisterLayout& layout);

struct PqsResult {
    StateVector state;  // layout [y, k, h0.., r0.., x, flag]
    double success_amplitude = 0.0;  // overlap with |y, k, 0, 0, H_y, 0>
    Rational p{};
    double sqrt_p = 0.0;
    /// Overlap predicted from per-member unique hits; equals sqrt_p when every
    /// member is injective on the preimage.
    double expected_amplitude = 0.0;
    double collision_deficit = 0.0;  // sqrt_p - expected_amplitude
};

PqsResult pqs_apply(const InverterSpec& g, std::uint64_t y);

struct PapResult {
    StateVector state;  // layout [y, k, h0.., r0.., x, flag, c]
    double weight_success = 0.0;  // clean branch, copied flag 0
    double weight_failure = 0.0;  // clean branch, copied flag 1
    Rational p{};
};

PapResult pap_apply(const InverterSpec& g, std::uint64_t y);

struct ApResult {
    StateVector state;  // layout [y, h.., r.., x, flag, c0.., g0..]
    std::vector<double> coefficients{};  // clean branch on the pattern of round t
    double leftover = 0.0;             // clean branch, every round failed
    ScheduleProfile profile{};
};

ApResult ap_apply(const GInverterSet& g, std::uint64_t y);

struct QsResult {
    StateVector state;  // AP layout plus [fqs, xs, fs]
    double success_amplitude = 0.0;  // overlap with |y, 0.., H_y, 0>
    double analytic = 0.0;           // sum_t q_t^2 sqrt(p_t)
    double expected = 0.0;           // sum_t q_t^2 times the PQS overlap of round t
    double collision_deficit = 0.0;  // analytic - expected
    std::vector<double> preimage_amplitudes{};
    ScheduleProfile profile{};
};

QsResult qs_apply(const GInverterSet& g, std::uint64_t y);

struct ApAdjointCheck {
    double simulated = 0.0;  // <clean| AP^dagger | sum_t q_t w_t |pattern_t>>
    double analytic = 0.0;   // sum_t q_t^2 w_t
};

/// Weights w_t default to the PQS overlaps of each round.
ApAdjointCheck ap_adjoint_identity(const GInverterSet& g, std::uint64_t y);

}  // namespace qowf
