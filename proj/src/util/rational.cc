#include "qowf/util/rational.h"

#include "qowf/util/error.h"

namespace qowf {

Rational inverse_pow2(unsigned k) {
    BigInt den = 1;
    den <<= k;
    return Rational(BigInt(1), den);
}

Rational ratio(std::uint64_t num, std::uint64_t den) {
    require(den != 0, "zero denominator");
    return Rational(BigInt(num), BigInt(den));
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string to_string(const Rational& r) {
    auto num = boost::multiprecision::numerator(r);
    auto den = boost::multiprecision::denominator(r);
    if (den == 1) {
        return num.str();
    }
    return num.str() + "/" + den.str();
}

Rational rational_from_string(const std::string& text) {
    try {
        auto slash = text.find('/');
        if (slash == std::string::npos) {
            return Rational(BigInt(text));
        }
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        require(den != 0, "zero denominator in rational '" + text + "'");
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        fail("malformed rational '" + text + "'");
    }
}

Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

}  // namespace qowf
