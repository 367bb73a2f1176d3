#pragma once

#include <cstdint>

namespace qowf {

/// Stateless counter-based generator: the n-th draw of stream s under seed k
/// is a pure function of (k, s, n), so results do not depend on the order in
/// which draws are consumed.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t bits(std::uint64_t counter) const;

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform(std::uint64_t counter) const;

    /// Uniform integer in [0, bound). bound must be nonzero.
    std::uint64_t below(std::uint64_t counter, std::uint64_t bound) const;

    /// Independent child stream keyed by `id`.
    CounterRng substream(std::uint64_t id) const;

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

  private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t key_;
};

/// Sequential view over a CounterRng.
class RngCursor {
  public:
    explicit RngCursor(CounterRng rng) : rng_(rng) {}

    std::uint64_t bits() { return rng_.bits(next_++); }
    double uniform() { return rng_.uniform(next_++); }
    std::uint64_t below(std::uint64_t bound) { return rng_.below(next_++, bound); }

  private:
    CounterRng rng_;
    std::uint64_t next_ = 0;
};

std::uint64_t mix64(std::uint64_t x);

}  // namespace qowf
