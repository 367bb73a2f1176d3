#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qowf {

/// Simulator cap on total qubits. QOWF_MAX_BITS overrides the default of 24.
int default_max_bits();

struct Register {
    std::string name;
    int width = 0;
    int offset = 0;  // position of the register's least-significant bit

    std::uint64_t mask() const { return ((std::uint64_t{1} << width) - 1) << offset; }
    std::uint64_t extract(std::uint64_t index) const {
        return (index >> offset) & ((std::uint64_t{1} << width) - 1);
    }
};

using Assignment = std::map<std::string, std::uint64_t, std::less<>>;

/// Ordered named registers packed little-endian: the first declared register
/// occupies the least-significant bits of the basis index.
class RegisterLayout {
  public:
    RegisterLayout() = default;
    explicit RegisterLayout(const std::vector<std::pair<std::string, int>>& registers,
                            int max_bits = default_max_bits());

    /// Returns a copy with one more register appended (most-significant).
    RegisterLayout with(std::string name, int width) const;

    int total_bits() const { return total_bits_; }
    std::uint64_t dimension() const { return std::uint64_t{1} << total_bits_; }
    int max_bits() const { return max_bits_; }

    const std::vector<Register>& registers() const { return registers_; }
    bool contains(std::string_view name) const;
    const Register& reg(std::string_view name) const;

    std::uint64_t encode(const Assignment& values) const;
    Assignment decode(std::uint64_t index) const;

    /// Same names and widths in the same order.
    bool operator==(const RegisterLayout& other) const;

  private:
    void append(std::string name, int width);

    std::vector<Register> registers_;
    int total_bits_ = 0;
    int max_bits_ = 24;
};

}  // namespace qowf
