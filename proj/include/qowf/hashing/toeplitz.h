#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qowf/classical/function.h"
#include "qowf/util/rational.h"

namespace qowf {

/// h(x) = T x + offset over GF(2), with T the k x n Toeplitz matrix
/// T[i][j] = diag[i - j + n - 1]. diag has n + k - 1 bits, offset has k.
class ToeplitzAffineHash {
  public:
    ToeplitzAffineHash(int n, int k, std::uint64_t diag, std::uint64_t offset);

    /// Descriptor layout: diag in the low n + k - 1 bits, offset above it.
    static ToeplitzAffineHash from_descriptor(int n, int k, std::uint64_t descriptor);
    static int descriptor_bits(int n, int k) { return n + 2 * k - 1; }

    int n() const { return n_; }
    int k() const { return k_; }
    std::uint64_t diag() const { return diag_; }
    std::uint64_t offset() const { return offset_; }
    std::uint64_t descriptor() const;

    std::uint64_t operator()(std::uint64_t x) const;
    std::string evaluate(const std::string& x) const;

    /// Matrix entry T[i][j].
    int entry(int i, int j) const;

  private:
    int n_;
    int k_;
    std::uint64_t diag_;
    std::uint64_t offset_;
    std::vector<std::uint64_t> columns_;  // columns_[j] = T e_j
};

/// Largest descriptor width for which a family may be enumerated.
inline constexpr int kMaxExhaustiveDescriptorBits = 22;

/// A multiset of Toeplitz-affine hashes from {0,1}^n to {0,1}^k.
class HashFamily {
  public:
    enum class Mode { Exhaustive, Seeded, Explicit };

    /// All 2^(n+2k-1) members; requires n + 2k - 1 <= 22.
    static HashFamily exhaustive(int n, int k);
    /// `count` members drawn uniformly with a counter-based generator.
    static HashFamily seeded(int n, int k, std::uint64_t count, std::uint64_t seed);
    /// A fixed list of member descriptors.
    static HashFamily explicit_members(int n, int k, std::vector<std::uint64_t> descriptors);

    int n() const { return n_; }
    int k() const { return k_; }
    Mode mode() const { return mode_; }
    std::uint64_t seed() const { return seed_; }
    int descriptor_bits() const { return ToeplitzAffineHash::descriptor_bits(n_, k_); }

    std::uint64_t size() const;
    std::uint64_t descriptor(std::uint64_t i) const;
    ToeplitzAffineHash member(std::uint64_t i) const;

  private:
    HashFamily(int n, int k, Mode mode) : n_(n), k_(k), mode_(mode) {}

    int n_;
    int k_;
    Mode mode_;
    std::uint64_t count_ = 0;
    std::uint64_t seed_ = 0;
    std::vector<std::uint64_t> descriptors_;
};

const char* to_string(HashFamily::Mode mode);

struct UniqueHitStats {
    /// Pr over uniform (h, r) that exactly one preimage element hashes to r.
    Rational p;
    /// Pr over h that h is not injective on the preimage.
    Rational collision_fraction;
    std::uint64_t members = 0;
    std::uint64_t injective_members = 0;
    std::vector<std::uint64_t> preimage;
    /// unique_members[i] = #members under which preimage[i] is hit by no other
    /// preimage element.
    std::vector<std::uint64_t> unique_members;
};

UniqueHitStats unique_hit_stats(const ClassicalFunction& f, std::uint64_t y, int k,
                                const HashFamily& family);

/// Same statistic for an explicit preimage set.
UniqueHitStats unique_hit_stats(const std::vector<std::uint64_t>& preimage, int k,
                                const HashFamily& family);

struct PairwiseIndependenceReport {
    /// max over x != x' and (a, b) of |Pr[h(x)=a, h(x')=b] - 2^-2k|.
    Rational max_deviation;
    bool pairwise_independent = false;
    std::uint64_t worst_x = 0;
    std::uint64_t worst_x2 = 0;
    std::uint64_t worst_a = 0;
    std::uint64_t worst_b = 0;
    std::uint64_t pairs_checked = 0;
};

/// Exact report over every member. Rejects seeded families.
PairwiseIndependenceReport pairwise_independence_report(const HashFamily& family);

}  // namespace qowf
