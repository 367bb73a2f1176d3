#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "qowf/classical/function.h"
#include "qowf/util/rational.h"

namespace qowf {

struct SDInstance {
    ClassicalFunction c0;
    ClassicalFunction c1;
    double alpha = 0.0;
    double beta = 0.0;
};

/// Throws unless 0 <= beta < alpha <= 1, alpha^2 > beta and the output widths match.
void validate(const SDInstance& inst);

enum class SDVerdict { Far, Close };
const char* to_string(SDVerdict v);

struct SDReport {
    Rational tv;
    double fidelity = 0.0;                   // sum_y sqrt(p0(y) p1(y))
    double acceptance = 0.0;                 // 1/2 + F^2/2
    std::optional<double> acceptance_circuit;  // simulated SWAP test, when it fits
    double far_max = 0.0;                    // largest acceptance under TV >= alpha
    double close_min = 0.0;                  // smallest acceptance under TV <= beta
    double threshold = 0.0;
    bool separated = false;                  // close_min > far_max
    std::uint64_t trials = 0;
    std::uint64_t accepted = 0;
    double empirical_rate = 0.0;
    SDVerdict truth = SDVerdict::Far;
    SDVerdict verdict = SDVerdict::Far;
};

SDReport sd_decide(const SDInstance& inst, std::uint64_t trials, std::uint64_t seed);

}  // namespace qowf
