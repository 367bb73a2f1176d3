#pragma once

#include <complex>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qowf/sim/register_layout.h"

namespace qowf {

using Amplitude = std::complex<double>;

/// Absolute tolerance for every "exact" floating-point equality.
inline constexpr double kTolerance = 1e-9;

/// Dense pure state over a named-register basis. Always normalized within
/// kTolerance; the constructor rejects anything else.
class StateVector {
  public:
    StateVector(RegisterLayout layout, std::vector<Amplitude> amplitudes);

    const RegisterLayout& layout() const { return layout_; }
    std::span<const Amplitude> amplitudes() const { return amps_; }
    std::uint64_t dimension() const { return amps_.size(); }

    Amplitude operator[](std::uint64_t index) const { return amps_[index]; }
    Amplitude amplitude(const Assignment& values) const;

    double norm_squared() const;

    /// Probability that register `name` holds `value`.
    double probability(std::string_view name, std::uint64_t value) const;

    /// Moves the amplitudes out, leaving this state empty.
    std::vector<Amplitude> take_amplitudes() && { return std::move(amps_); }

  private:
    RegisterLayout layout_;
    std::vector<Amplitude> amps_;
};

StateVector make_basis_state(const RegisterLayout& layout, const Assignment& values);

/// Same, with each register given as a bit-string of exactly its width.
StateVector make_basis_state(const RegisterLayout& layout,
                             const std::map<std::string, std::string>& bits);

double norm_squared(std::span<const Amplitude> amps);

}  // namespace qowf
