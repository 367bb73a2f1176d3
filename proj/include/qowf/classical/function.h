#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qowf/sim/state_vector.h"
#include "qowf/util/rational.h"

namespace qowf {

/// Input-width cap for truth-tabled functions.
inline constexpr int kMaxInputBits = 16;
inline constexpr int kMaxOutputBits = 32;

/// f: {0,1}^n -> {0,1}^m as an explicit truth table indexed by input value.
class ClassicalFunction {
  public:
    ClassicalFunction(int n, int m, std::vector<std::uint64_t> table);

    int n() const { return n_; }
    int m() const { return m_; }
    std::uint64_t domain_size() const { return table_.size(); }
    const std::vector<std::uint64_t>& table() const { return table_; }

    std::uint64_t operator()(std::uint64_t x) const;
    std::string evaluate(std::string_view x) const;

    /// Every x with f(x) == y, ascending. Empty when y has no preimage.
    std::vector<std::uint64_t> preimage(std::uint64_t y) const;
    std::vector<std::string> preimage(std::string_view y) const;

    /// |f^-1(y)| for every y in {0,1}^m.
    std::vector<std::uint64_t> image_counts() const;

    bool injective() const;

    bool operator==(const ClassicalFunction&) const = default;

  private:
    int n_;
    int m_;
    std::vector<std::uint64_t> table_;
};

/// Output distribution of a function under uniform input: probability of y is
/// counts[y] / 2^input_bits, kept exact.
class Distribution {
  public:
    Distribution(int input_bits, int m, std::vector<std::uint64_t> counts);

    int input_bits() const { return input_bits_; }
    int m() const { return m_; }
    const std::vector<std::uint64_t>& counts() const { return counts_; }

    Rational probability(std::uint64_t y) const;
    double probability_double(std::uint64_t y) const;

  private:
    int input_bits_;
    int m_;
    std::vector<std::uint64_t> counts_;
};

Distribution output_distribution(const ClassicalFunction& f);

/// sum_y sqrt(D(y)) |y> on a single register named `name`.
StateVector quantum_sample_state(const Distribution& d, const std::string& name = "y");
StateVector quantum_sample_state(const ClassicalFunction& f, const std::string& name = "y");

/// Uniform superposition of f^-1(y) on a register of width n.
StateVector uniform_preimage_state(const ClassicalFunction& f, std::uint64_t y,
                                   const std::string& name = "x");

/// (1/2) sum_y |D0(y) - D1(y)|, exact.
Rational tv_distance(const Distribution& d0, const Distribution& d1);

/// sum_y sqrt(D0(y) D1(y)), the overlap of the two quantum samples.
double classical_fidelity(const Distribution& d0, const Distribution& d1);

}  // namespace qowf
