#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "qowf/classical/function.h"
#include "qowf/il/schedule.h"
#include "qowf/inverters/inverter.h"
#include "qowf/util/rational.h"
#include "qowf/util/rng.h"

namespace qowf {

/// g(x, h) = (f(x), h, h(x)) over the exhaustive Toeplitz family of length k.
/// Input index x | descriptor << n; output f(x) | descriptor << m | h(x) << (m + D).
ClassicalFunction g_build(const ClassicalFunction& f, int k);

/// At most `reps` draws of (h, r); returns the first unique hit or nullopt.
std::optional<std::uint64_t> classical_partial_sampler(const InverterSpec& g, std::uint64_t y,
                                                       std::uint64_t reps, RngCursor& rng);

/// Perfect g-inverters for every round of a schedule.
class GInverterSet {
public:
    GInverterSet(const ClassicalFunction& f, const std::vector<int>& rounds);
    const ClassicalFunction& f() const { return f_; }
    const std::vector<int>& rounds() const { return rounds_; }
    const InverterSpec& at(std::size_t round) const { return inverters_.at(round); }

private:
    ClassicalFunction f_;
    std::vector<int> rounds_;
    std::vector<InverterSpec> inverters_;
};

std::optional<std::uint64_t> classical_sampler(const GInverterSet& g, std::uint64_t y,
                                               const ILParams& params, std::uint64_t seed);

/// Exact output law of the sampler for one image; key nullopt is the failure symbol.
struct SamplerLaw {
    std::map<std::uint64_t, Rational> output;
    Rational failure;
};

/// Per-draw probability that (h, r) yields a unique hit on each preimage element.
std::map<std::uint64_t, Rational> per_draw_success(const ClassicalFunction& f, std::uint64_t y,
                                                   int k);
SamplerLaw partial_sampler_law(const ClassicalFunction& f, std::uint64_t y, int k,
                               std::uint64_t reps);
SamplerLaw sampler_law(const ClassicalFunction& f, std::uint64_t y, const ILParams& params);

enum class TvMode { Exact, MonteCarlo };

struct ImageTv {
    std::uint64_t y = 0;
    double tv = 0.0;             // law incl. failure vs uniform on f^-1(y)
    double tv_on_success = 0.0;  // law conditioned on an output
    double failure = 0.0;
    std::optional<Rational> tv_exact;
};

struct SamplerTvReport {
    TvMode mode = TvMode::Exact;
    double tv = 0.0;  // joint (x, f(x)) vs (S(f(x)), f(x))
    std::optional<Rational> tv_exact;
    /// Sampler law conditioned on the drawn hash being injective on the preimage.
    std::optional<Rational> tv_injective_hash;
    std::uint64_t samples = 0;
    double noise_band = 0.0;  // 3 sqrt(ln 2 / (2 samples)) in Monte Carlo mode
    std::vector<ImageTv> images;
};

SamplerTvReport sampler_tv_report(const ClassicalFunction& f, const ILParams& params,
                                  TvMode mode, std::uint64_t seed = 0,
                                  std::uint64_t samples = 0);

}  // namespace qowf
