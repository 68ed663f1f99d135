#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ktrees/exact.hpp"

using ktrees::binom;
using ktrees::exact_div;
using ktrees::Integer;
using ktrees::Rational;
using ktrees::rising_factorial;
using ktrees::to_integer;

TEST_CASE("binomial: r < 0 gives 0") {
    CHECK(binom(5, -1) == 0);
    CHECK(binom(-3, -2) == 0);
    CHECK(binom(0, -1) == 0);
}

TEST_CASE("binomial: r = 0 gives 1 for every upper argument") {
    CHECK(binom(0, 0) == 1);
    CHECK(binom(7, 0) == 1);
    CHECK(binom(-1, 0) == 1);
    CHECK(binom(-100, 0) == 1);
}

TEST_CASE("binomial: small nonnegative table") {
    CHECK(binom(4, 2) == 6);
    CHECK(binom(5, 5) == 1);
    CHECK(binom(5, 6) == 0);
    CHECK(binom(10, 3) == 120);
    CHECK(binom(52, 5) == 2598960);
}

TEST_CASE("binomial: negative upper argument via falling factorial") {
    // (-1)(-2)/2! = 1, (-2)(-3)/2! = 3, (-2)(-3)(-4)/3! = -4
    CHECK(binom(-1, 1) == -1);
    CHECK(binom(-1, 2) == 1);
    CHECK(binom(-2, 2) == 3);
    CHECK(binom(-2, 3) == -4);
    CHECK(binom(-3, 2) == 6);
}

TEST_CASE("binomial: Pascal recurrence holds on a wide window") {
    for (long m = -50; m <= 50; ++m) {
        for (long r = 1; r <= 20; ++r) {
            CAPTURE(m);
            CAPTURE(r);
            CHECK(binom(m, r) == binom(m - 1, r - 1) + binom(m - 1, r));
        }
    }
}

TEST_CASE("binomial: symmetry on nonnegative arguments") {
    for (long m = 0; m <= 30; ++m)
        for (long r = 0; r <= m; ++r) CHECK(binom(m, r) == binom(m, m - r));
}

TEST_CASE("rising factorial") {
    CHECK(rising_factorial(3, 0) == 1);
    CHECK(rising_factorial(3, 1) == 3);
    CHECK(rising_factorial(3, 4) == 3 * 4 * 5 * 6);
    CHECK(rising_factorial(1, 5) == 120);
    CHECK(rising_factorial(-2, 3) == 0); // passes through zero
    CHECK(rising_factorial(-3, 2) == 6); // (-3)(-2)
}

TEST_CASE("exact division succeeds only when exact") {
    CHECK(exact_div(Integer(84), Integer(7)) == 12);
    CHECK(exact_div(Integer(0), Integer(5)) == 0);
    CHECK_THROWS_AS(exact_div(Integer(10), Integer(4)), ktrees::NonExactDivision);
    CHECK_THROWS_AS(exact_div(Integer(1), Integer(0)), ktrees::InvalidParams);
}

TEST_CASE("rational to integer conversion") {
    CHECK(to_integer(Rational(12, 4)) == 3);
    CHECK(to_integer(Rational(0, 9)) == 0);
    CHECK(to_integer(Rational(-14, 7)) == -2);
    CHECK_THROWS_AS(to_integer(Rational(1, 2)), ktrees::NonExactDivision);
}

TEST_CASE("big values stay exact") {
    // C(100, 50) has 30 digits; check against the known value.
    Integer c(  "100891344545564193334812497256");
    CHECK(binom(100, 50) == c);
    CHECK(exact_div(c * 3, Integer(3)) == c);
}
