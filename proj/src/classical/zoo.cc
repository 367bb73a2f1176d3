#include "qowf/classical/zoo.h"

#include <algorithm>
#include <numeric>

#include "qowf/util/bits.h"
#include "qowf/util/error.h"
#include "qowf/util/rng.h"

namespace qowf {

namespace {

template <typename T>
void shuffle(std::vector<T>& v, RngCursor& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::swap(v[i - 1], v[rng.below(i)]);
    }
}

}  // namespace

ClassicalFunction identity_function(int n) {
    std::vector<std::uint64_t> table(std::size_t{1} << n);
    std::iota(table.begin(), table.end(), 0);
    return ClassicalFunction(n, n, std::move(table));
}

ClassicalFunction constant_function(int n, int m, std::uint64_t value) {
    return ClassicalFunction(n, m, std::vector<std::uint64_t>(std::size_t{1} << n, value));
}

ClassicalFunction parity_function(int n) {
    require(n >= 1, "parity needs n >= 1", "n");
    std::vector<std::uint64_t> table(std::size_t{1} << n);
    for (std::uint64_t x = 0; x < table.size(); ++x) {
        table[x] = static_cast<std::uint64_t>(parity(x)) << (n - 1);
    }
    return ClassicalFunction(n, n, std::move(table));
}

ClassicalFunction bit_reversal_function(int n) {
    std::vector<std::uint64_t> table(std::size_t{1} << n);
    for (std::uint64_t x = 0; x < table.size(); ++x) {
        std::uint64_t r = 0;
        for (int i = 0; i < n; ++i) {
            r |= ((x >> i) & 1) << (n - 1 - i);
        }
        table[x] = r;
    }
    return ClassicalFunction(n, n, std::move(table));
}

ClassicalFunction random_function(int n, int m, std::uint64_t seed) {
    RngCursor rng(CounterRng(seed, 0x66756e63));
    std::vector<std::uint64_t> table(std::size_t{1} << n);
    for (auto& y : table) {
        y = rng.below(std::uint64_t{1} << m);
    }
    return ClassicalFunction(n, m, std::move(table));
}

ClassicalFunction random_injective_function(int n, int m, std::uint64_t seed) {
    require(m >= n && m <= 20, "random injective function needs n <= m <= 20", "m");
    RngCursor rng(CounterRng(seed, 0x696e6a));
    std::vector<std::uint64_t> outputs(std::size_t{1} << m);
    std::iota(outputs.begin(), outputs.end(), 0);
    shuffle(outputs, rng);
    outputs.resize(std::size_t{1} << n);
    return ClassicalFunction(n, m, std::move(outputs));
}

ClassicalFunction random_regular_function(int n, int log_fanin, std::uint64_t seed) {
    require(log_fanin >= 0 && log_fanin <= n, "fan-in exponent must be in [0, n]", "log_fanin");
    RngCursor rng(CounterRng(seed, 0x726567));
    std::vector<std::uint64_t> images(std::size_t{1} << n);
    std::iota(images.begin(), images.end(), 0);
    shuffle(images, rng);
    std::vector<std::uint64_t> inputs(std::size_t{1} << n);
    std::iota(inputs.begin(), inputs.end(), 0);
    shuffle(inputs, rng);
    std::vector<std::uint64_t> table(std::size_t{1} << n);
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        table[inputs[i]] = images[i >> log_fanin];
    }
    return ClassicalFunction(n, n, std::move(table));
}

std::vector<ZooInstance> instance_zoo() {
    std::vector<ZooInstance> zoo;
    for (int n = 1; n <= 4; ++n) {
        zoo.push_back({"identity" + std::to_string(n), identity_function(n)});
    }
    zoo.push_back({"bitrev3", bit_reversal_function(3)});
    zoo.push_back({"injective3to4", random_injective_function(3, 4, 11)});
    zoo.push_back({"injective5", random_injective_function(5, 5, 12)});
    zoo.push_back({"injective6", random_injective_function(6, 6, 13)});
    zoo.push_back({"const2", constant_function(2, 2)});
    zoo.push_back({"const3", constant_function(3, 2, 1)});
    zoo.push_back({"parity2", parity_function(2)});
    zoo.push_back({"parity3", parity_function(3)});
    zoo.push_back({"regular2to1_n3", random_regular_function(3, 1, 21)});
    zoo.push_back({"regular2to1_n4", random_regular_function(4, 1, 22)});
    zoo.push_back({"regular4to1_n4", random_regular_function(4, 2, 23)});
    zoo.push_back({"random4", random_function(4, 4, 24)});
    return zoo;
}

}  // namespace qowf
