#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qowf/classical/function.h"
#include "qowf/util/rational.h"

namespace qowf {

struct ILParams {
    double delta = 0.1;
    /// Draws per partial-sampler round; nullopt means the per-round default
    /// 4 * 2^(j - floor(log |f^-1(y)|)), capped at 64.
    std::optional<std::uint64_t> reps;
    std::vector<int> rounds;  // descending hash lengths j
    int k_pad = 0;
};

void validate(const ILParams& params);

int default_k_pad(int n);

/// j = n + k_pad down to max(1, k_pad).
std::vector<int> linear_descending_schedule(int n, int k_pad);

/// Start at n + ceil(log n) + r with r in [0, step) drawn from the seed, then
/// decrease by step while j >= ceil(log n).
std::vector<int> offset_schedule(int n, int step, std::uint64_t seed);

std::uint64_t default_reps(int j, std::uint64_t preimage_size);

struct ScheduleProfile {
    std::vector<int> rounds;
    std::vector<Rational> p;
    std::vector<Rational> q;  // probability that round t is the first success
    Rational leftover;        // prod (1 - p_t)
};

ScheduleProfile profile_from_p(const std::vector<int>& rounds, const std::vector<Rational>& p);

/// p_j per round from the exhaustive Toeplitz family of output length j.
ScheduleProfile p_profile(const ClassicalFunction& f, std::uint64_t y,
                          const std::vector<int>& rounds);

struct LemmaPkRow {
    int j = 0;
    Rational p;
    double upper = 0.0;  // 1 - (1/n)^(2^(k-j))
    double lower = 0.0;  // same value with the (1 - o(1)) factor dropped
    bool in_scope = false;  // j >= k
    bool upper_ok = false;
    double lower_slack = 0.0;  // p - lower
};

struct LemmaPkReport {
    int k = 0;
    std::uint64_t n_effective = 0;
    std::uint64_t preimage_size = 0;
    std::vector<LemmaPkRow> rows;
};

/// n_effective must be a power of two so that k = floor(log |f^-1(y)|) + log n is integral.
LemmaPkReport lemma_pk_report(const ClassicalFunction& f, std::uint64_t y,
                              std::uint64_t n_effective, const std::vector<int>& js);

}  // namespace qowf
