#include <catch2/catch_amalgamated.hpp>

#include "subdual/rational.hpp"
#include "subdual/rng.hpp"

using namespace subdual;

TEST_CASE("rational parsing accepts integers and p/q") {
    CHECK(parse_rational("3") == Rational(3));
    CHECK(parse_rational("-3") == Rational(-3));
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("-3/2") == Rational(-3, 2));
    CHECK(parse_rational("+7/14") == Rational(1, 2)); // normalized
    CHECK(format_rational(parse_rational("22/7")) == "22/7");
    CHECK(format_rational(Rational(4, 2)) == "2");
}

TEST_CASE("rational parsing rejects floating point and junk") {
    CHECK_THROWS_AS(parse_rational("1.5"), ParseError);
    CHECK_THROWS_AS(parse_rational("1e3"), ParseError);
    CHECK_THROWS_AS(parse_rational("0.0"), ParseError);
    CHECK_THROWS_AS(parse_rational(""), ParseError);
    CHECK_THROWS_AS(parse_rational("/3"), ParseError);
    CHECK_THROWS_AS(parse_rational("3/"), ParseError);
    CHECK_THROWS_AS(parse_rational("3/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("two"), ParseError);
}

TEST_CASE("floor and ceil behave on negatives") {
    CHECK(floor_rat(Rational(7, 2)) == 3);
    CHECK(ceil_rat(Rational(7, 2)) == 4);
    CHECK(floor_rat(Rational(-7, 2)) == -4);
    CHECK(ceil_rat(Rational(-7, 2)) == -3);
    CHECK(floor_rat(Rational(5)) == 5);
    CHECK(ceil_rat(Rational(5)) == 5);
    CHECK(frac_distance(Rational(1, 4)) == Rational(1, 4));
    CHECK(frac_distance(Rational(-1, 4)) == Rational(1, 4));
    CHECK(frac_distance(Rational(2)) == 0);
}

TEST_CASE("decimal rendering is exact integer arithmetic") {
    CHECK(decimal_approx(Rational(0)) == "0");
    CHECK(decimal_approx(Rational(1, 2)) == "0.5");
    CHECK(decimal_approx(Rational(2)) == "2");
    CHECK(decimal_approx(Rational(1, 3)) == "0.333333333333");
    CHECK(decimal_approx(Rational(-7, 6)) == "-1.16666666667");
    CHECK(decimal_approx(Rational(1, 1000000)) == "0.000001");
    CHECK(decimal_approx(Rational(999999999999999LL)) == "1000000000000000");
    CHECK(decimal_approx(Rational(2, 3) + Rational(1, 3)) == "1");
}

TEST_CASE("seeded rng is reproducible") {
    SeededRng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next_index(97) == b.next_index(97));
    SeededRng c(42);
    Rational r1 = c.rational_in(Rational(-1), Rational(1));
    SeededRng d(42);
    Rational r2 = d.rational_in(Rational(-1), Rational(1));
    CHECK(r1 == r2);
    CHECK(r1 >= -1);
    CHECK(r1 <= 1);
}
