#include "qowf/il/schedule.h"

#include <cmath>

#include "qowf/hashing/toeplitz.h"
#include "qowf/util/bits.h"
#include "qowf/util/error.h"
#include "qowf/util/rng.h"

namespace qowf {

void validate(const ILParams& params) {
    require(params.delta > 0.0 && params.delta < 1.0, "delta must lie in (0, 1)", "delta");
    require(!params.reps || *params.reps >= 1, "reps must be at least 1", "reps");
    require(params.k_pad >= 0, "k_pad must be non-negative", "k_pad");
    require(!params.rounds.empty(), "schedule is empty", "schedule");
    for (std::size_t i = 0; i < params.rounds.size(); ++i) {
        require(params.rounds[i] >= 1, "hash lengths must be at least 1",
                "schedule[" + std::to_string(i) + "]");
        if (i > 0) {
            require(params.rounds[i] < params.rounds[i - 1], "schedule must be strictly descending",
                    "schedule[" + std::to_string(i) + "]");
        }
    }
}

int default_k_pad(int n) { return ceil_log2(static_cast<std::uint64_t>(std::max(n, 1))); }

std::vector<int> linear_descending_schedule(int n, int k_pad) {
    require(n >= 1, "n must be at least 1", "n");
    require(k_pad >= 0, "k_pad must be non-negative", "k_pad");
    std::vector<int> out;
    for (int j = n + k_pad; j >= std::max(1, k_pad); --j) {
        out.push_back(j);
    }
    return out;
}

std::vector<int> offset_schedule(int n, int step, std::uint64_t seed) {
    require(n >= 4, "offset schedule needs n >= 4", "n");
    require(step >= 1, "step must be at least 1", "step");
    const int log_n = ceil_log2(static_cast<std::uint64_t>(n));
    const int r = static_cast<int>(CounterRng(seed).below(0, static_cast<std::uint64_t>(step)));
    std::vector<int> out;
    for (int j = n + log_n + r; j >= log_n; j -= step) {
        out.push_back(j);
    }
    return out;
}

std::uint64_t default_reps(int j, std::uint64_t preimage_size) {
    require(preimage_size > 0, "empty preimage", "y");
    int shift = j - floor_log2(preimage_size);
    if (shift >= 4) {
        return 64;
    }
    if (shift >= -2) {
        return std::uint64_t{4} << (shift + 2) >> 2;
    }
    return 1;
}

ScheduleProfile profile_from_p(const std::vector<int>& rounds, const std::vector<Rational>& p) {
    require(rounds.size() == p.size(), "one p per round", "p");
    ScheduleProfile out;
    out.rounds = rounds;
    out.p = p;
    Rational survive = 1;
    for (const auto& pj : p) {
        require(pj >= 0 && pj <= 1, "p must lie in [0, 1]", "p");
        out.q.push_back(survive * pj);
        survive *= 1 - pj;
    }
    out.leftover = survive;
    return out;
}

ScheduleProfile p_profile(const ClassicalFunction& f, std::uint64_t y,
                          const std::vector<int>& rounds) {
    auto pre = f.preimage(y);
    require(!pre.empty(), "y has an empty preimage", "y");
    std::vector<Rational> p;
    for (int j : rounds) {
        HashFamily family = HashFamily::exhaustive(f.n(), j);
        p.push_back(unique_hit_stats(pre, j, family).p);
    }
    return profile_from_p(rounds, p);
}

LemmaPkReport lemma_pk_report(const ClassicalFunction& f, std::uint64_t y,
                              std::uint64_t n_effective, const std::vector<int>& js) {
    require(n_effective >= 2 && (n_effective & (n_effective - 1)) == 0,
            "n_effective must be a power of two >= 2", "n_effective");
    auto pre = f.preimage(y);
    require(!pre.empty(), "y has an empty preimage", "y");
    LemmaPkReport report;
    report.n_effective = n_effective;
    report.preimage_size = pre.size();
    report.k = floor_log2(pre.size()) + floor_log2(n_effective);
    const double inv_n = 1.0 / static_cast<double>(n_effective);
    for (int j : js) {
        LemmaPkRow row;
        row.j = j;
        row.p = unique_hit_stats(pre, j, HashFamily::exhaustive(f.n(), j)).p;
        row.upper = 1.0 - std::pow(inv_n, std::ldexp(1.0, report.k - j));
        row.lower = row.upper;
        row.in_scope = j >= report.k;
        row.upper_ok = to_double(row.p) <= row.upper + kTolerance;
        row.lower_slack = to_double(row.p) - row.lower;
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace qowf
