#include "qowf/il/classical_sampler.h"

#include <cmath>

#include "qowf/hashing/toeplitz.h"
#include "qowf/util/bits.h"
#include "qowf/util/error.h"

namespace qowf {

namespace {

Rational rpow(Rational base, std::uint64_t e) {
    Rational out = 1;
    while (e > 0) {
        if (e & 1) {
            out *= base;
        }
        base *= base;
        e >>= 1;
    }
    return out;
}

void check_enumerable(const ClassicalFunction& f, int k) {
    int bits = f.n() + ToeplitzAffineHash::descriptor_bits(f.n(), k);
    if (bits > 22) {
        fail(ErrorKind::CapExceeded,
             "exact enumeration over 2^" + std::to_string(bits) + " cases exceeds 2^22", "schedule");
    }
}

std::uint64_t reps_for(const ILParams& params, int j, std::uint64_t preimage_size) {
    return params.reps ? *params.reps : default_reps(j, preimage_size);
}

std::optional<std::uint64_t> run_sampler(const GInverterSet& g, std::uint64_t y,
                                         const ILParams& params, RngCursor& rng) {
    const std::uint64_t size = g.at(0).preimages->at(y).size();
    if (size == 0) {
        return std::nullopt;
    }
    for (std::size_t t = 0; t < g.rounds().size(); ++t) {
        auto out = classical_partial_sampler(g.at(t), y, reps_for(params, g.rounds()[t], size), rng);
        if (out) {
            return out;
        }
    }
    return std::nullopt;
}

// TV between uniform on `pre` and a law with the given failure mass.
Rational tv_to_uniform(const std::vector<std::uint64_t>& pre,
                       const std::map<std::uint64_t, Rational>& law, const Rational& failure) {
    Rational uniform = ratio(1, pre.size());
    Rational sum = failure;
    for (auto x : pre) {
        auto it = law.find(x);
        Rational px = it == law.end() ? Rational(0) : it->second;
        sum += abs(uniform - px);
    }
    return sum / 2;
}

}  // namespace

ClassicalFunction g_build(const ClassicalFunction& f, int k) {
    require(k >= 1, "hash length must be at least 1", "k");
    const int n = f.n();
    const int m = f.m();
    const int dbits = ToeplitzAffineHash::descriptor_bits(n, k);
    if (n + dbits > kMaxInputBits || m + dbits + k > kMaxOutputBits) {
        fail(ErrorKind::CapExceeded, "g exceeds the classical width cap", "k");
    }
    std::vector<std::uint64_t> table(std::uint64_t{1} << (n + dbits));
    for (std::uint64_t d = 0; d < (std::uint64_t{1} << dbits); ++d) {
        ToeplitzAffineHash h = ToeplitzAffineHash::from_descriptor(n, k, d);
        for (std::uint64_t x = 0; x < f.domain_size(); ++x) {
            table[x | (d << n)] = f(x) | (d << m) | (h(x) << (m + dbits));
        }
    }
    return ClassicalFunction(n + dbits, m + dbits + k, std::move(table));
}

std::optional<std::uint64_t> classical_partial_sampler(const InverterSpec& g, std::uint64_t y,
                                                       std::uint64_t reps, RngCursor& rng) {
    require(g.kind == InverterKind::GPerfect, "partial sampler needs a g-inverter", "g");
    const int dbits = g.family->descriptor_bits();
    for (std::uint64_t i = 0; i < reps; ++i) {
        std::uint64_t d = rng.below(std::uint64_t{1} << dbits);
        std::uint64_t r = rng.below(std::uint64_t{1} << g.k);
        if (auto x = g_invert(g, y, d, r)) {
            return x;
        }
    }
    return std::nullopt;
}

GInverterSet::GInverterSet(const ClassicalFunction& f, const std::vector<int>& rounds)
    : f_(f), rounds_(rounds) {
    require(!rounds.empty(), "schedule is empty", "schedule");
    for (int j : rounds) {
        inverters_.push_back(build_g_inverter(f, j, HashFamily::exhaustive(f.n(), j)));
    }
}

std::optional<std::uint64_t> classical_sampler(const GInverterSet& g, std::uint64_t y,
                                               const ILParams& params, std::uint64_t seed) {
    validate(params);
    require(params.rounds == g.rounds(), "g-inverters were built for another schedule", "schedule");
    RngCursor rng{CounterRng(seed)};
    return run_sampler(g, y, params, rng);
}

std::map<std::uint64_t, Rational> per_draw_success(const ClassicalFunction& f, std::uint64_t y,
                                                   int k) {
    check_enumerable(f, k);
    auto pre = f.preimage(y);
    require(!pre.empty(), "y has an empty preimage", "y");
    const int dbits = ToeplitzAffineHash::descriptor_bits(f.n(), k);
    std::map<std::uint64_t, std::uint64_t> hits;
    std::vector<std::uint64_t> values(pre.size());
    std::map<std::uint64_t, int> seen;
    for (std::uint64_t d = 0; d < (std::uint64_t{1} << dbits); ++d) {
        ToeplitzAffineHash h = ToeplitzAffineHash::from_descriptor(f.n(), k, d);
        seen.clear();
        for (std::size_t i = 0; i < pre.size(); ++i) {
            values[i] = h(pre[i]);
            ++seen[values[i]];
        }
        for (std::size_t i = 0; i < pre.size(); ++i) {
            if (seen[values[i]] == 1) {
                ++hits[pre[i]];
            }
        }
    }
    std::map<std::uint64_t, Rational> out;
    const Rational denom = Rational(BigInt(1) << (dbits + k));
    for (auto x : pre) {
        out[x] = Rational(hits[x]) / denom;
    }
    return out;
}

SamplerLaw partial_sampler_law(const ClassicalFunction& f, std::uint64_t y, int k,
                               std::uint64_t reps) {
    require(reps >= 1, "reps must be at least 1", "reps");
    auto s = per_draw_success(f, y, k);
    Rational p = 0;
    for (const auto& [x, sx] : s) {
        p += sx;
    }
    SamplerLaw law;
    law.failure = rpow(1 - p, reps);
    for (const auto& [x, sx] : s) {
        law.output[x] = p == 0 ? Rational(0) : sx * (1 - law.failure) / p;
    }
    return law;
}

SamplerLaw sampler_law(const ClassicalFunction& f, std::uint64_t y, const ILParams& params) {
    validate(params);
    auto pre = f.preimage(y);
    require(!pre.empty(), "y has an empty preimage", "y");
    SamplerLaw law;
    law.failure = 1;
    for (auto x : pre) {
        law.output[x] = 0;
    }
    for (int j : params.rounds) {
        SamplerLaw round = partial_sampler_law(f, y, j, reps_for(params, j, pre.size()));
        for (const auto& [x, px] : round.output) {
            law.output[x] += law.failure * px;
        }
        law.failure *= round.failure;
    }
    return law;
}

SamplerTvReport sampler_tv_report(const ClassicalFunction& f, const ILParams& params, TvMode mode,
                                  std::uint64_t seed, std::uint64_t samples) {
    validate(params);
    SamplerTvReport report;
    report.mode = mode;
    auto counts = f.image_counts();
    const Rational inv_domain = ratio(1, f.domain_size());

    if (mode == TvMode::Exact) {
        for (int j : params.rounds) {
            check_enumerable(f, j);
        }
        Rational joint = 0;
        Rational worst_injective = 0;
        for (std::uint64_t y = 0; y < counts.size(); ++y) {
            if (counts[y] == 0) {
                continue;
            }
            auto pre = f.preimage(y);
            SamplerLaw law = sampler_law(f, y, params);
            ImageTv row;
            row.y = y;
            row.tv_exact = tv_to_uniform(pre, law.output, law.failure);
            row.tv = to_double(*row.tv_exact);
            row.failure = to_double(law.failure);
            if (law.failure < 1) {
                std::map<std::uint64_t, Rational> cond;
                for (const auto& [x, px] : law.output) {
                    cond[x] = px / (1 - law.failure);
                }
                row.tv_on_success = to_double(tv_to_uniform(pre, cond, 0));
            }
            joint += Rational(counts[y]) * inv_domain * *row.tv_exact;
            report.images.push_back(row);

            // Draws whose hash is injective on the preimage.
            for (int j : params.rounds) {
                HashFamily family = HashFamily::exhaustive(f.n(), j);
                std::map<std::uint64_t, std::uint64_t> hits;
                std::uint64_t total = 0;
                for (std::uint64_t d = 0; d < family.size(); ++d) {
                    ToeplitzAffineHash h = family.member(d);
                    std::map<std::uint64_t, int> seen;
                    for (auto x : pre) {
                        ++seen[h(x)];
                    }
                    if (seen.size() != pre.size()) {
                        continue;
                    }
                    for (auto x : pre) {
                        ++hits[x];
                        ++total;
                    }
                }
                if (total == 0) {
                    continue;
                }
                std::map<std::uint64_t, Rational> cond;
                for (const auto& [x, c] : hits) {
                    cond[x] = ratio(c, total);
                }
                worst_injective = std::max(worst_injective, tv_to_uniform(pre, cond, 0));
            }
        }
        report.tv_exact = joint;
        report.tv = to_double(joint);
        report.tv_injective_hash = worst_injective;
        return report;
    }

    require(samples > 0, "Monte Carlo mode needs samples > 0", "samples");
    GInverterSet g(f, params.rounds);
    CounterRng inputs(seed, 1);
    CounterRng draws(seed, 2);
    std::map<std::uint64_t, std::uint64_t> hits;  // sampled x' counts
    std::vector<std::uint64_t> per_image(counts.size(), 0);
    std::vector<std::uint64_t> fails(counts.size(), 0);
    for (std::uint64_t t = 0; t < samples; ++t) {
        std::uint64_t x = inputs.below(t, f.domain_size());
        std::uint64_t y = f(x);
        ++per_image[y];
        RngCursor rng(draws.substream(t));
        if (auto out = run_sampler(g, y, params, rng)) {
            ++hits[*out];
        } else {
            ++fails[y];
        }
    }
    const double s = static_cast<double>(samples);
    double joint = 0.0;
    for (std::uint64_t x = 0; x < f.domain_size(); ++x) {
        joint += std::abs(static_cast<double>(hits[x]) / s - 1.0 / static_cast<double>(f.domain_size()));
    }
    for (auto c : fails) {
        joint += static_cast<double>(c) / s;
    }
    report.tv = joint / 2.0;
    report.samples = samples;
    report.noise_band = 3.0 * std::sqrt(std::log(2.0) / (2.0 * s));
    for (std::uint64_t y = 0; y < counts.size(); ++y) {
        if (counts[y] == 0 || per_image[y] == 0) {
            continue;
        }
        auto pre = f.preimage(y);
        const double py = static_cast<double>(per_image[y]);
        ImageTv row;
        row.y = y;
        row.failure = static_cast<double>(fails[y]) / py;
        double sum = row.failure;
        double succ_sum = 0.0;
        const double successes = py - static_cast<double>(fails[y]);
        for (auto x : pre) {
            double px = static_cast<double>(hits[x]) / py;
            sum += std::abs(1.0 / static_cast<double>(pre.size()) - px);
            if (successes > 0) {
                succ_sum += std::abs(1.0 / static_cast<double>(pre.size()) -
                                     static_cast<double>(hits[x]) / successes);
            }
        }
        row.tv = sum / 2.0;
        row.tv_on_success = succ_sum / 2.0;
        report.images.push_back(row);
    }
    return report;
}

}  // namespace qowf
