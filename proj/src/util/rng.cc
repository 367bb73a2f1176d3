#include "qowf/util/rng.h"

#include "qowf/util/error.h"

namespace qowf {

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
}

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) {
    x += kGolden;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), key_(mix64(seed ^ mix64(stream + 0x632be59bd9b4e019ULL))) {}

std::uint64_t CounterRng::bits(std::uint64_t counter) const {
    return mix64(key_ + mix64(counter * kGolden));
}

double CounterRng::uniform(std::uint64_t counter) const {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
}

std::uint64_t CounterRng::below(std::uint64_t counter, std::uint64_t bound) const {
    require(bound != 0, "rng bound must be nonzero");
    // Multiply-high reduction; bias is at most bound / 2^64.
    auto wide = static_cast<unsigned __int128>(bits(counter)) * bound;
    return static_cast<std::uint64_t>(wide >> 64);
}

CounterRng CounterRng::substream(std::uint64_t id) const {
    return CounterRng(seed_, mix64(stream_ * kGolden + id + 1));
}

}  // namespace qowf
