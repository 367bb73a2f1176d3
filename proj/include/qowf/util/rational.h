#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace qowf {

/// Arbitrary-precision rational. Probabilities in this project have
/// power-of-two denominators, but products over schedules overflow 64 bits.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// 2^-k as an exact rational.
Rational inverse_pow2(unsigned k);

Rational ratio(std::uint64_t num, std::uint64_t den);

double to_double(const Rational& r);

/// "num/den" (or "num" when den == 1).
std::string to_string(const Rational& r);

Rational rational_from_string(const std::string& text);

Rational abs(const Rational& r);

}  // namespace qowf
