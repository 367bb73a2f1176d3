#include "qowf/hashing/toeplitz.h"

#include <algorithm>

#include "qowf/util/bits.h"
#include "qowf/util/error.h"
#include "qowf/util/rng.h"

namespace qowf {

ToeplitzAffineHash::ToeplitzAffineHash(int n, int k, std::uint64_t diag, std::uint64_t offset)
    : n_(n), k_(k), diag_(diag), offset_(offset) {
    require(n >= 1 && n <= kMaxInputBits, "hash input width out of range", "n");
    require(k >= 1 && k <= 31, "hash output width must be at least 1", "k");
    require(diag <= low_mask(n + k - 1), "diag has more than n + k - 1 bits", "diag");
    require(offset <= low_mask(k), "offset has more than k bits", "offset");
    columns_.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        columns_[static_cast<std::size_t>(j)] = (diag >> (n - 1 - j)) & low_mask(k);
    }
}

ToeplitzAffineHash ToeplitzAffineHash::from_descriptor(int n, int k, std::uint64_t descriptor) {
    int diag_bits = n + k - 1;
    require(descriptor <= low_mask(descriptor_bits(n, k)), "descriptor out of range",
            "descriptor");
    return ToeplitzAffineHash(n, k, descriptor & low_mask(diag_bits), descriptor >> diag_bits);
}

std::uint64_t ToeplitzAffineHash::descriptor() const {
    return diag_ | (offset_ << (n_ + k_ - 1));
}

std::uint64_t ToeplitzAffineHash::operator()(std::uint64_t x) const {
    require(x <= low_mask(n_), "hash input has more than n bits", "x");
    std::uint64_t out = offset_;
    for (int j = 0; x != 0; ++j, x >>= 1) {
        if (x & 1) {
            out ^= columns_[static_cast<std::size_t>(j)];
        }
    }
    return out;
}

std::string ToeplitzAffineHash::evaluate(const std::string& x) const {
    return format_bits((*this)(parse_bits(x, n_, "x")), k_);
}

int ToeplitzAffineHash::entry(int i, int j) const {
    return static_cast<int>((diag_ >> (i - j + n_ - 1)) & 1);
}

HashFamily HashFamily::exhaustive(int n, int k) {
    require(n >= 1 && k >= 1, "hash family needs n >= 1 and k >= 1", "k");
    if (ToeplitzAffineHash::descriptor_bits(n, k) > kMaxExhaustiveDescriptorBits) {
        fail(ErrorKind::CapExceeded,
             "exhaustive family needs n + 2k - 1 <= " +
                 std::to_string(kMaxExhaustiveDescriptorBits),
             "k");
    }
    return HashFamily(n, k, Mode::Exhaustive);
}

HashFamily HashFamily::seeded(int n, int k, std::uint64_t count, std::uint64_t seed) {
    require(n >= 1 && k >= 1, "hash family needs n >= 1 and k >= 1", "k");
    require(count >= 1, "seeded family needs at least one member", "count");
    require(ToeplitzAffineHash::descriptor_bits(n, k) <= 63, "descriptor too wide", "k");
    HashFamily family(n, k, Mode::Seeded);
    family.count_ = count;
    family.seed_ = seed;
    CounterRng rng(seed, 0x68617368);
    std::uint64_t span = std::uint64_t{1} << family.descriptor_bits();
    family.descriptors_.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        family.descriptors_.push_back(rng.below(i, span));
    }
    return family;
}

HashFamily HashFamily::explicit_members(int n, int k, std::vector<std::uint64_t> descriptors) {
    require(n >= 1 && k >= 1, "hash family needs n >= 1 and k >= 1", "k");
    require(!descriptors.empty(), "explicit family needs at least one member", "members");
    HashFamily family(n, k, Mode::Explicit);
    for (auto d : descriptors) {
        require(d <= low_mask(family.descriptor_bits()), "member descriptor out of range",
                "members");
    }
    family.count_ = descriptors.size();
    family.descriptors_ = std::move(descriptors);
    return family;
}

std::uint64_t HashFamily::size() const {
    if (mode_ == Mode::Exhaustive) {
        return std::uint64_t{1} << descriptor_bits();
    }
    return descriptors_.size();
}

std::uint64_t HashFamily::descriptor(std::uint64_t i) const {
    require(i < size(), "family member index out of range");
    return mode_ == Mode::Exhaustive ? i : descriptors_[i];
}

ToeplitzAffineHash HashFamily::member(std::uint64_t i) const {
    return ToeplitzAffineHash::from_descriptor(n_, k_, descriptor(i));
}

const char* to_string(HashFamily::Mode mode) {
    switch (mode) {
        case HashFamily::Mode::Exhaustive:
            return "exhaustive";
        case HashFamily::Mode::Seeded:
            return "seeded";
        case HashFamily::Mode::Explicit:
            return "explicit";
    }
    return "unknown";
}

UniqueHitStats unique_hit_stats(const std::vector<std::uint64_t>& preimage, int k,
                                const HashFamily& family) {
    require(!preimage.empty(), "preimage is empty", "y");
    require(k >= 1, "k must be at least 1", "k");
    require(family.k() == k, "hash family has a different output width", "k");
    UniqueHitStats stats;
    stats.preimage = preimage;
    stats.members = family.size();
    stats.unique_members.assign(preimage.size(), 0);

    const std::size_t count = preimage.size();
    std::vector<std::uint64_t> hashed(count);
    std::vector<std::uint64_t> sorted(count);
    std::uint64_t unique_total = 0;
    for (std::uint64_t i = 0; i < family.size(); ++i) {
        ToeplitzAffineHash h = family.member(i);
        for (std::size_t t = 0; t < count; ++t) {
            hashed[t] = h(preimage[t]);
        }
        sorted = hashed;
        std::sort(sorted.begin(), sorted.end());
        bool injective = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
        if (injective) {
            ++stats.injective_members;
            unique_total += count;
            for (auto& u : stats.unique_members) {
                ++u;
            }
            continue;
        }
        for (std::size_t t = 0; t < count; ++t) {
            auto [lo, hi] = std::equal_range(sorted.begin(), sorted.end(), hashed[t]);
            if (hi - lo == 1) {
                ++stats.unique_members[t];
                ++unique_total;
            }
        }
    }
    BigInt denom = BigInt(family.size()) << k;
    stats.p = Rational(BigInt(unique_total), denom);
    stats.collision_fraction =
        Rational(BigInt(family.size() - stats.injective_members), BigInt(family.size()));
    return stats;
}

UniqueHitStats unique_hit_stats(const ClassicalFunction& f, std::uint64_t y, int k,
                                const HashFamily& family) {
    require(family.n() == f.n(), "hash family input width differs from f", "family");
    return unique_hit_stats(f.preimage(y), k, family);
}

PairwiseIndependenceReport pairwise_independence_report(const HashFamily& family) {
    require(family.mode() != HashFamily::Mode::Seeded,
            "pairwise independence report needs an enumerable family", "family");
    const int n = family.n();
    const int k = family.k();
    require(2 * k <= 16, "pairwise report limited to k <= 8", "k");
    const std::uint64_t members = family.size();
    const std::uint64_t cells = std::uint64_t{1} << (2 * k);
    const std::uint64_t domain = std::uint64_t{1} << n;

    std::vector<std::vector<std::uint64_t>> values(members, std::vector<std::uint64_t>(domain));
    for (std::uint64_t i = 0; i < members; ++i) {
        ToeplitzAffineHash h = family.member(i);
        for (std::uint64_t x = 0; x < domain; ++x) {
            values[i][x] = h(x);
        }
    }

    PairwiseIndependenceReport report;
    report.max_deviation = 0;
    Rational target = inverse_pow2(static_cast<unsigned>(2 * k));
    std::vector<std::uint64_t> counts(cells);
    for (std::uint64_t x = 0; x < domain; ++x) {
        for (std::uint64_t x2 = x + 1; x2 < domain; ++x2) {
            std::fill(counts.begin(), counts.end(), 0);
            for (std::uint64_t i = 0; i < members; ++i) {
                ++counts[values[i][x] | (values[i][x2] << k)];
            }
            ++report.pairs_checked;
            for (std::uint64_t c = 0; c < cells; ++c) {
                Rational dev = abs(Rational(BigInt(counts[c]), BigInt(members)) - target);
                if (dev > report.max_deviation) {
                    report.max_deviation = dev;
                    report.worst_x = x;
                    report.worst_x2 = x2;
                    report.worst_a = c & low_mask(k);
                    report.worst_b = c >> k;
                }
            }
        }
    }
    report.pairwise_independent = report.max_deviation == 0;
    return report;
}

}  // namespace qowf
