#pragma once

#include <string>
#include <vector>

#include "qowf/classical/function.h"

namespace qowf {

ClassicalFunction identity_function(int n);
ClassicalFunction constant_function(int n, int m, std::uint64_t value = 0);

/// x -> (parity(x), 0, ..., 0) on n output bits: the parity lands in the
/// leading (most-significant) output bit.
ClassicalFunction parity_function(int n);

ClassicalFunction bit_reversal_function(int n);

ClassicalFunction random_function(int n, int m, std::uint64_t seed);
ClassicalFunction random_injective_function(int n, int m, std::uint64_t seed);

/// Exactly 2^log_fanin-to-1 onto random outputs of width n.
ClassicalFunction random_regular_function(int n, int log_fanin, std::uint64_t seed);

struct ZooInstance {
    std::string name;
    ClassicalFunction f;
};

/// Built-in instances used by the verification suite: injective, constant,
/// parity and random k-to-1 functions, all with n <= 6.
std::vector<ZooInstance> instance_zoo();

}  // namespace qowf
