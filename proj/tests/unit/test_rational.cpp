#include <doctest.h>

#include <random>

#include "resavg/errors.hpp"
#include "resavg/rational.hpp"

using namespace resavg;

TEST_CASE("rationals stay canonical") {
  Rational q = make_rational(6, -4);
  CHECK(q.get_num() == -3);
  CHECK(q.get_den() == 2);
  CHECK_THROWS_AS(make_rational(1, 0), InvalidArgument);
}

TEST_CASE("parsing") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("2.5") == Rational(5, 2));
  CHECK(parse_rational("-0.125") == Rational(-1, 8));
  CHECK(parse_rational("1e-3") == Rational(1, 1000));
  CHECK(parse_rational("7") == 7);
  CHECK_THROWS_AS(parse_rational("1/0"), InvalidArgument);
  CHECK_THROWS_AS(parse_rational("x"), InvalidArgument);
  Integer v;
  CHECK(try_parse_integer("123456789012345678901234567890", v));
  CHECK(v.get_str() == "123456789012345678901234567890");
  CHECK_FALSE(try_parse_integer("12a", v));
  CHECK_FALSE(try_parse_integer("", v));
  CHECK_THROWS_AS(parse_integer("1.5"), InvalidArgument);
}

TEST_CASE("decimal rendering") {
  CHECK(to_decimal(Rational(2, 3)) == "0.6666666667");
  CHECK(to_decimal(Rational(8, 3)) == "2.666666667");
  CHECK(to_decimal(Rational(1, 2), 1) == "0.5");
  CHECK(to_decimal(Rational(0)) == "0");
  CHECK(to_decimal(Rational(-1, 4)) == "-0.25");
  CHECK(to_decimal(Rational(100)) == "100");
  CHECK(to_decimal(Rational(123456), 3) == "123000");
  // round half to even
  CHECK(to_decimal(Rational(1, 8), 2) == "0.12");
  CHECK(to_decimal(Rational(3, 8), 2) == "0.38");
  CHECK(to_decimal(make_rational(25, 10), 1) == "2");
  CHECK(to_decimal(make_rational(35, 10), 1) == "4");
  CHECK(to_decimal(make_rational(999, 1000), 2) == "1");
  CHECK(to_decimal(Rational(pow10(25)), 3) == "1e+25");
  CHECK(to_decimal(Rational(1, pow10(9)), 3) == "1e-9");
  CHECK_THROWS_AS(to_decimal(Rational(1), 0), InvalidArgument);
}

TEST_CASE("decimal fields are within 10^(1-D) relative error of the exact value") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-1000000000L, 1000000000L), den(1, 1000000000L);
  for (int i = 0; i < 2000; ++i) {
    Rational q = make_rational(num(rng), den(rng));
    if (q == 0) continue;
    int D = 1 + static_cast<int>(rng() % 15);
    Rational back = parse_rational(to_decimal(q, D));
    Rational rel = abs(back - q) / abs(q);
    REQUIRE(rel < Rational(1) / Rational(pow10(D - 1)));
  }
}

TEST_CASE("valuation") {
  CHECK(valuation(Integer(72), Integer(2)) == 3);
  CHECK(valuation(Integer(72), Integer(3)) == 2);
  CHECK(valuation(Integer(-50), Integer(5)) == 2);
  CHECK(valuation(Integer(7), Integer(2)) == 0);
  CHECK_THROWS_AS(valuation(Integer(0), Integer(2)), InvalidArgument);
}
