#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "ktrees/errors.hpp"

namespace ktrees {

// All counts are exact; nothing in this library touches floating point.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Generalized binomial coefficient over arbitrary integer tops, defined by the
// falling factorial: binom(m, r) = m(m-1)...(m-r+1) / r!.  In particular
// binom(m, 0) = 1 for every m (including negative m) and binom(m, r) = 0 for
// r < 0.  The counting formulas rely on binom(-1, 0) = 1 so that absent-label
// factors collapse to 1.
inline Integer binom(const Integer& m, const Integer& r) {
    if (r < 0) return 0;
    if (r == 0) return 1;
    Integer num = 1, den = 1;
    for (Integer i = 0; i < r; ++i) {
        num *= m - i;
        den *= i + 1;
    }
    Integer q = num / den; // falling factorial is always divisible by r!
    return q;
}

// Rising factorial m(m+1)...(m+k-1); 1 when k = 0.
inline Integer rising_factorial(const Integer& m, long k) {
    if (k < 0) throw InvalidParams("rising_factorial: k must be >= 0");
    Integer r = 1;
    for (long i = 0; i < k; ++i) r *= m + i;
    return r;
}

// Division that must be exact; a remainder means a formula was evaluated
// outside its validity domain or was transcribed wrong.
inline Integer exact_div(const Integer& num, const Integer& den) {
    if (den == 0) throw InvalidParams("exact_div: zero divisor");
    Integer q = num / den;
    if (q * den != num)
        throw NonExactDivision("exact_div: " + num.str() + " not divisible by " + den.str());
    return q;
}

// Collapse a rational that is known to be integral.
inline Integer to_integer(const Rational& q) {
    if (denominator(q) != 1)
        throw NonExactDivision("to_integer: " + numerator(q).str() + "/" + denominator(q).str() +
                               " is not an integer");
    return numerator(q);
}

} // namespace ktrees
