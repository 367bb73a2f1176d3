#include "qowf/sim/register_layout.h"

#include <cstdlib>

#include "qowf/util/error.h"

namespace qowf {

int default_max_bits() {
    if (const char* env = std::getenv("QOWF_MAX_BITS")) {
        char* end = nullptr;
        long value = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && value >= 1 && value <= 40) {
            return static_cast<int>(value);
        }
    }
    return 24;
}

RegisterLayout::RegisterLayout(const std::vector<std::pair<std::string, int>>& registers,
                               int max_bits)
    : max_bits_(max_bits) {
    for (const auto& [name, width] : registers) {
        append(name, width);
    }
}

RegisterLayout RegisterLayout::with(std::string name, int width) const {
    RegisterLayout out = *this;
    out.append(std::move(name), width);
    return out;
}

void RegisterLayout::append(std::string name, int width) {
    require(!name.empty(), "register name must be nonempty", "registers");
    require(width >= 1, "register '" + name + "' must have positive width", "registers");
    require(!contains(name), "duplicate register name '" + name + "'", "registers");
    if (total_bits_ + width > max_bits_) {
        fail(ErrorKind::CapExceeded,
             "layout needs " + std::to_string(total_bits_ + width) + " bits, cap is " +
                 std::to_string(max_bits_),
             "registers");
    }
    registers_.push_back(Register{std::move(name), width, total_bits_});
    total_bits_ += width;
}

bool RegisterLayout::contains(std::string_view name) const {
    for (const auto& r : registers_) {
        if (r.name == name) {
            return true;
        }
    }
    return false;
}

const Register& RegisterLayout::reg(std::string_view name) const {
    for (const auto& r : registers_) {
        if (r.name == name) {
            return r;
        }
    }
    fail("unknown register '" + std::string(name) + "'", "registers");
}

std::uint64_t RegisterLayout::encode(const Assignment& values) const {
    require(values.size() == registers_.size(), "assignment must cover every register exactly");
    std::uint64_t index = 0;
    for (const auto& r : registers_) {
        auto it = values.find(r.name);
        require(it != values.end(), "register '" + r.name + "' not assigned", r.name);
        require(it->second < (std::uint64_t{1} << r.width),
                "value does not fit register '" + r.name + "'", r.name);
        index |= it->second << r.offset;
    }
    return index;
}

Assignment RegisterLayout::decode(std::uint64_t index) const {
    require(index < dimension(), "basis index out of range");
    Assignment out;
    for (const auto& r : registers_) {
        out[r.name] = r.extract(index);
    }
    return out;
}

bool RegisterLayout::operator==(const RegisterLayout& other) const {
    if (registers_.size() != other.registers_.size()) {
        return false;
    }
    for (std::size_t i = 0; i < registers_.size(); ++i) {
        if (registers_[i].name != other.registers_[i].name ||
            registers_[i].width != other.registers_[i].width) {
            return false;
        }
    }
    return true;
}

}  // namespace qowf
