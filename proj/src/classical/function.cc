#include "qowf/classical/function.h"

#include <algorithm>
#include <cmath>

#include "qowf/util/bits.h"
#include "qowf/util/error.h"

namespace qowf {

ClassicalFunction::ClassicalFunction(int n, int m, std::vector<std::uint64_t> table)
    : n_(n), m_(m), table_(std::move(table)) {
    require(n >= 0 && n <= kMaxInputBits,
            "input width must be in [0, " + std::to_string(kMaxInputBits) + "]", "n");
    require(m >= 1 && m <= kMaxOutputBits,
            "output width must be in [1, " + std::to_string(kMaxOutputBits) + "]", "m");
    require(table_.size() == (std::uint64_t{1} << n),
            "table must have 2^n = " + std::to_string(std::uint64_t{1} << n) + " entries",
            "table");
    for (std::size_t x = 0; x < table_.size(); ++x) {
        require(table_[x] <= low_mask(m), "table entry " + std::to_string(x) + " exceeds m bits",
                "table[" + std::to_string(x) + "]");
    }
}

std::uint64_t ClassicalFunction::operator()(std::uint64_t x) const {
    require(x < table_.size(), "input out of range", "x");
    return table_[x];
}

std::string ClassicalFunction::evaluate(std::string_view x) const {
    return format_bits((*this)(parse_bits(x, n_, "x")), m_);
}

std::vector<std::uint64_t> ClassicalFunction::preimage(std::uint64_t y) const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t x = 0; x < table_.size(); ++x) {
        if (table_[x] == y) {
            out.push_back(x);
        }
    }
    return out;
}

std::vector<std::string> ClassicalFunction::preimage(std::string_view y) const {
    std::vector<std::string> out;
    for (auto x : preimage(parse_bits(y, m_, "y"))) {
        out.push_back(format_bits(x, n_));
    }
    return out;
}

std::vector<std::uint64_t> ClassicalFunction::image_counts() const {
    require(m_ <= 24, "image_counts needs m <= 24", "m");
    std::vector<std::uint64_t> counts(std::size_t{1} << m_);
    for (auto y : table_) {
        ++counts[y];
    }
    return counts;
}

bool ClassicalFunction::injective() const {
    std::vector<std::uint64_t> sorted = table_;
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

Distribution::Distribution(int input_bits, int m, std::vector<std::uint64_t> counts)
    : input_bits_(input_bits), m_(m), counts_(std::move(counts)) {
    require(input_bits >= 0 && input_bits < 63, "input bits out of range", "input_bits");
    require(counts_.size() == (std::uint64_t{1} << m), "distribution support must be 2^m",
            "counts");
    std::uint64_t total = 0;
    for (auto c : counts_) {
        total += c;
    }
    require(total == (std::uint64_t{1} << input_bits),
            "distribution counts must sum to 2^input_bits", "counts");
}

Rational Distribution::probability(std::uint64_t y) const {
    return Rational(BigInt(counts_.at(y))) * inverse_pow2(static_cast<unsigned>(input_bits_));
}

double Distribution::probability_double(std::uint64_t y) const {
    return std::ldexp(static_cast<double>(counts_.at(y)), -input_bits_);
}

Distribution output_distribution(const ClassicalFunction& f) {
    return Distribution(f.n(), f.m(), f.image_counts());
}

StateVector quantum_sample_state(const Distribution& d, const std::string& name) {
    RegisterLayout layout({{name, d.m()}});
    std::vector<Amplitude> amps(layout.dimension());
    for (std::uint64_t y = 0; y < amps.size(); ++y) {
        amps[y] = std::sqrt(d.probability_double(y));
    }
    return StateVector(std::move(layout), std::move(amps));
}

StateVector quantum_sample_state(const ClassicalFunction& f, const std::string& name) {
    return quantum_sample_state(output_distribution(f), name);
}

StateVector uniform_preimage_state(const ClassicalFunction& f, std::uint64_t y,
                                   const std::string& name) {
    auto pre = f.preimage(y);
    require(!pre.empty(), "y has an empty preimage", "y");
    RegisterLayout layout({{name, std::max(f.n(), 1)}});
    std::vector<Amplitude> amps(layout.dimension());
    double amp = 1.0 / std::sqrt(static_cast<double>(pre.size()));
    for (auto x : pre) {
        amps[x] = amp;
    }
    return StateVector(std::move(layout), std::move(amps));
}

Rational tv_distance(const Distribution& d0, const Distribution& d1) {
    require(d0.m() == d1.m(), "distributions have different output widths", "m");
    Rational total = 0;
    for (std::uint64_t y = 0; y < d0.counts().size(); ++y) {
        total += abs(d0.probability(y) - d1.probability(y));
    }
    return total / 2;
}

double classical_fidelity(const Distribution& d0, const Distribution& d1) {
    require(d0.m() == d1.m(), "distributions have different output widths", "m");
    double total = 0.0;
    for (std::uint64_t y = 0; y < d0.counts().size(); ++y) {
        total += std::sqrt(d0.probability_double(y) * d1.probability_double(y));
    }
    return total;
}

}  // namespace qowf
