#include "qowf/util/bits.h"

#include <bit>

#include "qowf/util/error.h"

namespace qowf {

std::uint64_t parse_bits(std::string_view text, int width, const std::string& field) {
    if (static_cast<int>(text.size()) != width) {
        fail("bit-string '" + std::string(text) + "' has length " + std::to_string(text.size()) +
                 ", expected " + std::to_string(width),
             field);
    }
    std::uint64_t value = 0;
    for (char c : text) {
        if (c != '0' && c != '1') {
            fail("bit-string '" + std::string(text) + "' contains a character other than 0/1",
                 field);
        }
        value = (value << 1) | static_cast<std::uint64_t>(c - '0');
    }
    return value;
}

std::string format_bits(std::uint64_t value, int width) {
    std::string out(static_cast<std::size_t>(width), '0');
    for (int i = 0; i < width; ++i) {
        if ((value >> i) & 1) {
            out[static_cast<std::size_t>(width - 1 - i)] = '1';
        }
    }
    return out;
}

int popcount(std::uint64_t v) { return std::popcount(v); }

int ceil_log2(std::uint64_t v) {
    int w = 0;
    while ((std::uint64_t{1} << w) < v) {
        ++w;
    }
    return w;
}

int floor_log2(std::uint64_t v) {
    require(v > 0, "floor_log2 of zero");
    return 63 - std::countl_zero(v);
}

}  // namespace qowf
