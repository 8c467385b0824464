#pragma once

// Exact rational scalars. All probabilities and polytope arithmetic in this
// library are GMP-backed rationals kept in lowest terms with positive
// denominator (GMP canonical form), so equality tests are decision
// procedures, not tolerance checks.
//
// Text form: "num/den", or just "num" when the denominator is 1.

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <string>
#include <string_view>

#include "nlbox/errors.hpp"

namespace nlbox {

using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

inline Rational rational(long long num, long long den = 1) {
    if (den == 0) throw DomainError("rational with zero denominator");
    Rational r(num);
    r /= den;  // division canonicalizes sign and gcd
    return r;
}

inline std::string to_string(const Rational& q) {
    return q.str();
}

// Accepts "p/q" or "p" with optional leading sign. The denominator must be a
// positive integer; the result is canonicalized.
inline Rational parse_rational(std::string_view text) {
    auto fail = [&] { throw MalformedInput("bad rational: '" + std::string(text) + "'"); };
    if (text.empty()) fail();
    std::string num, den = "1";
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        num = std::string(text.substr(0, slash));
        den = std::string(text.substr(slash + 1));
    } else {
        num = std::string(text);
    }
    if (num.empty() || den.empty()) fail();
    BigInt n, d;
    try {
        n = BigInt(num);
        d = BigInt(den);
    } catch (const std::exception&) {
        fail();
    }
    if (d <= 0) fail();
    Rational r(n);
    r /= Rational(d);
    return r;
}

// Nearest multiple of 10^-6 (ties away from zero), reduced. This is the
// conversion applied to JSON number entries; inputs wanting exactness should
// use the "num/den" string form instead.
inline Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw MalformedInput("non-finite number in input");
    constexpr double kScale = 1e6;
    double scaled = x * kScale;
    if (std::fabs(scaled) > 9.0e15) throw MalformedInput("number out of range");
    long long n = std::llround(scaled);
    Rational r(n);
    r /= 1000000;
    return r;
}

}  // namespace nlbox
