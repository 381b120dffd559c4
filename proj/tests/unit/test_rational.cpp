#include "psearch/rational.hpp"

#include "psearch/rng.hpp"

#include <doctest.h>

#include <sstream>

using psearch::Rational;

TEST_CASE("canonical form") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, 4) == Rational(-1, 2));
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK(Rational(0, 7) == Rational(0));
    CHECK(Rational(0).str() == "0");
    CHECK(Rational(6, 3).str() == "2");
    CHECK(Rational(-3, 6).str() == "-1/2");
}

TEST_CASE("exact field arithmetic") {
    const Rational a(1, 3), b(1, 6);
    CHECK(a + b == Rational(1, 2));
    CHECK(a - b == Rational(1, 6));
    CHECK(a * b == Rational(1, 18));
    CHECK(a / b == Rational(2));
    CHECK(-a == Rational(-1, 3));
    CHECK_THROWS_AS(a / Rational(0), std::invalid_argument);
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("total order") {
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-5) < Rational(-1, 1000000));
    CHECK(Rational(7, 2) > Rational(3));
    CHECK(Rational(2, 6) <= Rational(1, 3));
    CHECK(Rational(2, 6) >= Rational(1, 3));
}

TEST_CASE("parsing") {
    CHECK(Rational::from_string("3/4") == Rational(3, 4));
    CHECK(Rational::from_string("-3/4") == Rational(-3, 4));
    CHECK(Rational::from_string("5") == Rational(5));
    CHECK(Rational::from_string("+5") == Rational(5));
    CHECK(Rational::from_string("-0") == Rational(0));
    CHECK(Rational::from_string("10/4") == Rational(5, 2));
    CHECK_THROWS_AS(Rational::from_string(""), std::invalid_argument);
    CHECK_THROWS_AS(Rational::from_string("1/2/3"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::from_string("a"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::from_string("1/-2"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::from_string("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::from_string("1 2"), std::invalid_argument);
}

TEST_CASE("str round trip on random values") {
    psearch::Rng rng(42);
    for (int i = 0; i < 200; ++i) {
        const auto num = static_cast<long long>(rng.below(2000001)) - 1000000;
        const auto den = static_cast<long long>(rng.below(1000000)) + 1;
        const Rational r(num, den);
        CHECK(Rational::from_string(r.str()) == r);
        std::ostringstream os;
        os << r;
        CHECK(os.str() == r.str());
    }
}

TEST_CASE("arbitrary precision") {
    // 10^30 as a value that does not fit 64 bits.
    Rational big(1);
    for (int i = 0; i < 30; ++i) big *= Rational(10);
    CHECK(big.numerator_str() == "1000000000000000000000000000000");
    CHECK((big + Rational(1, 3)) - Rational(1, 3) == big);
    CHECK(big / big == Rational(1));
}
