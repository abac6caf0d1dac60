#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

#include "qpsiegel/error.hpp"

namespace qps {

// Exact arithmetic substrate. Rat is always reduced with positive
// denominator (canonical zero is 0/1); both invariants are maintained by
// the backend and re-checkable via numerator()/denominator().
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Rat make_rat(const Int& num, const Int& den) {
    require(den != 0, "ZeroDenominator", "rational with zero denominator");
    return Rat(num) / Rat(den); // division canonicalizes sign and gcd
}

inline Int int_pow(const Int& base, long exp) {
    require(exp >= 0, "InvalidArgument", "int_pow needs a non-negative exponent");
    Int acc = 1, b = base;
    long e = exp;
    while (e > 0) {
        if (e & 1)
            acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

// base^exp with exp of either sign; base must be nonzero when exp < 0.
inline Rat rat_pow(const Rat& base, long exp) {
    if (exp >= 0) {
        Rat acc = 1, b = base;
        long e = exp;
        while (e > 0) {
            if (e & 1)
                acc *= b;
            b *= b;
            e >>= 1;
        }
        return acc;
    }
    require(base != 0, "ZeroDenominator", "negative power of zero");
    return Rat(1) / rat_pow(base, -exp);
}

// q^exp as an exact rational, negative exponents allowed.
inline Rat q_pow(long q, long exp) { return rat_pow(Rat(q), exp); }

inline bool is_integer(const Rat& x) { return denominator(x) == 1; }

inline Int to_integer(const Rat& x) {
    require(is_integer(x), "IntegralityError",
            "expected an integer, got " + x.str());
    return numerator(x);
}

// Canonical serialization: "n" for integers, "n/d" otherwise.
inline std::string rat_str(const Rat& x) {
    if (is_integer(x))
        return numerator(x).str();
    return numerator(x).str() + "/" + denominator(x).str();
}

inline Rat parse_rat(std::string_view text) {
    const auto bad = [&] {
        fail("ParseError", "invalid rational literal '" + std::string(text) + "'");
    };
    if (text.empty())
        bad();
    const auto slash = text.find('/');
    try {
        if (slash == std::string_view::npos)
            return Rat(Int(std::string(text)));
        Int num(std::string(text.substr(0, slash)));
        Int den(std::string(text.substr(slash + 1)));
        return make_rat(num, den);
    } catch (const std::runtime_error&) {
        bad();
    }
    return Rat(); // unreachable
}

} // namespace qps
