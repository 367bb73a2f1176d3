#include "qowf/sim/state_vector.h"

#include <cmath>

#include "qowf/util/bits.h"
#include "qowf/util/error.h"

namespace qowf {

double norm_squared(std::span<const Amplitude> amps) {
    double total = 0.0;
    for (const auto& a : amps) {
        total += std::norm(a);
    }
    return total;
}

StateVector::StateVector(RegisterLayout layout, std::vector<Amplitude> amplitudes)
    : layout_(std::move(layout)), amps_(std::move(amplitudes)) {
    require(amps_.size() == layout_.dimension(),
            "amplitude vector has " + std::to_string(amps_.size()) + " entries, layout needs " +
                std::to_string(layout_.dimension()),
            "amplitudes");
    double n2 = qowf::norm_squared(amps_);
    require(std::abs(n2 - 1.0) <= kTolerance,
            "state is not normalized (norm^2 = " + std::to_string(n2) + ")", "amplitudes");
}

Amplitude StateVector::amplitude(const Assignment& values) const {
    return amps_[layout_.encode(values)];
}

double StateVector::norm_squared() const { return qowf::norm_squared(amps_); }

double StateVector::probability(std::string_view name, std::uint64_t value) const {
    const Register& r = layout_.reg(name);
    double total = 0.0;
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        if (r.extract(i) == value) {
            total += std::norm(amps_[i]);
        }
    }
    return total;
}

StateVector make_basis_state(const RegisterLayout& layout, const Assignment& values) {
    std::vector<Amplitude> amps(layout.dimension());
    amps[layout.encode(values)] = 1.0;
    return StateVector(layout, std::move(amps));
}

StateVector make_basis_state(const RegisterLayout& layout,
                             const std::map<std::string, std::string>& bits) {
    Assignment values;
    for (const auto& [name, text] : bits) {
        const Register& r = layout.reg(name);
        values[name] = parse_bits(text, r.width, name);
    }
    return make_basis_state(layout, values);
}

}  // namespace qowf
