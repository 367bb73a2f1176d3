#include "qowf/reductions/sd.h"

#include <cmath>

#include "qowf/sim/ops.h"
#include "qowf/util/error.h"
#include "qowf/util/rng.h"

namespace qowf {

const char* to_string(SDVerdict v) { return v == SDVerdict::Far ? "FAR" : "CLOSE"; }

void validate(const SDInstance& inst) {
    require(inst.beta >= 0.0, "beta must be non-negative", "beta");
    require(inst.beta < inst.alpha, "beta must be below alpha", "beta");
    require(inst.alpha <= 1.0, "alpha must be at most 1", "alpha");
    require(inst.alpha * inst.alpha > inst.beta, "alpha^2 must exceed beta", "alpha");
    require(inst.c0.m() == inst.c1.m(), "C0 and C1 must have the same output width", "c1");
}

SDReport sd_decide(const SDInstance& inst, std::uint64_t trials, std::uint64_t seed) {
    validate(inst);
    require(trials > 0, "trials must be positive", "trials");
    Distribution d0 = output_distribution(inst.c0);
    Distribution d1 = output_distribution(inst.c1);

    SDReport r;
    r.tv = tv_distance(d0, d1);
    const double tv = to_double(r.tv);
    if (tv >= inst.alpha - kTolerance) {
        r.truth = SDVerdict::Far;
    } else if (tv <= inst.beta + kTolerance) {
        r.truth = SDVerdict::Close;
    } else {
        fail(ErrorKind::PromiseViolated,
             "promise violated: TV = " + to_string(r.tv) + " lies strictly between beta and alpha",
             "instance");
    }
    r.fidelity = classical_fidelity(d0, d1);
    r.acceptance = 0.5 + 0.5 * r.fidelity * r.fidelity;
    if (2 * inst.c0.m() + 1 <= default_max_bits()) {
        r.acceptance_circuit = swap_test_prob(quantum_sample_state(d0), quantum_sample_state(d1),
                                              SwapTestMode::Circuit);
    }
    r.far_max = 0.5 + 0.5 * (1.0 - inst.alpha * inst.alpha);
    r.close_min = 0.5 + 0.5 * (1.0 - inst.beta) * (1.0 - inst.beta);
    r.threshold = 0.5 * (r.far_max + r.close_min);
    r.separated = r.close_min > r.far_max;

    CounterRng rng(seed);
    r.trials = trials;
    for (std::uint64_t t = 0; t < trials; ++t) {
        if (rng.uniform(t) < r.acceptance) {
            ++r.accepted;
        }
    }
    r.empirical_rate = static_cast<double>(r.accepted) / static_cast<double>(trials);
    r.verdict = r.empirical_rate > r.threshold ? SDVerdict::Close : SDVerdict::Far;
    return r;
}

}  // namespace qowf
