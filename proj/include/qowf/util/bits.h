#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace qowf {

// Bit-strings are written most-significant bit first, like binary numerals:
// "10" on a 2-bit register is the value 2. Bit i of a value is (v >> i) & 1.

/// Parses a canonical bit-string of exactly `width` characters from {0,1}.
std::uint64_t parse_bits(std::string_view text, int width, const std::string& field = {});

std::string format_bits(std::uint64_t value, int width);

int popcount(std::uint64_t v);

inline int parity(std::uint64_t v) { return popcount(v) & 1; }

/// Smallest w with 2^w >= v (ceil_log2(1) == 0).
int ceil_log2(std::uint64_t v);

/// Largest w with 2^w <= v; v must be positive.
int floor_log2(std::uint64_t v);

inline std::uint64_t low_mask(int width) {
    return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
}

}  // namespace qowf
