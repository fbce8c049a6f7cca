#include <doctest.h>

#include "electra/rational.hpp"

using namespace electra;

TEST_CASE("parse_rational accepts fractions, integers and decimals") {
    CHECK(parse_rational("3/9") == Rational(1, 3));
    CHECK(parse_rational("-7") == Rational(-7));
    CHECK(parse_rational("0.125") == Rational(1, 8));
    CHECK(parse_rational("1.5e-2") == Rational(3, 200));
    CHECK(parse_rational(" 2/4 ") == Rational(1, 2));
    CHECK_THROWS_AS(parse_rational("1/0"), DomainError);
    CHECK_THROWS_AS(parse_rational("abc"), DomainError);
    CHECK_THROWS_AS(parse_rational(""), DomainError);
}

TEST_CASE("to_string prints lowest terms") {
    CHECK(to_string(Rational(6, 4)) == "3/2");
    CHECK(to_string(Rational(5)) == "5");
}

TEST_CASE("RationalDist lookups") {
    RationalDist d{2, {Rational(1, 4), Rational(3, 4)}};
    CHECK(d.lo() == 2);
    CHECK(d.hi() == 3);
    CHECK(d.at(1) == 0);
    CHECK(d.at(3) == Rational(3, 4));
    CHECK(d.total() == 1);
}
