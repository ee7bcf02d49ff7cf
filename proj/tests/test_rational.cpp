#include <doctest.h>

#include "ergopt/rational.hpp"

using ergopt::Error;
using ergopt::Rat;

TEST_CASE("rational arithmetic stays reduced") {
  Rat a(2, 4);
  CHECK(a.num() == 1);
  CHECK(a.den() == 2);
  CHECK((a + Rat(1, 2)) == Rat(1));
  CHECK((Rat(1, 3) * Rat(3, 7)) == Rat(1, 7));
  CHECK((Rat(5) / Rat(-10)) == Rat(-1, 2));
  CHECK((Rat(-1, 2)).den() == 2);
  CHECK((Rat(-1, 2)).num() == -1);
  CHECK(Rat(7, -14) == Rat(-1, 2));
}

TEST_CASE("rational ordering is exact") {
  CHECK(Rat(1, 3) < Rat(34, 100));
  CHECK(Rat(-5) < Rat(-9, 2));
  CHECK_FALSE(Rat(2, 3) < Rat(2, 3));
  CHECK(ergopt::max(Rat(1, 2), Rat(2, 3)) == Rat(2, 3));
}

TEST_CASE("canonical formatting and parsing round-trip") {
  CHECK(Rat(5).str() == "5");
  CHECK(Rat(-3, 6).str() == "-1/2");
  CHECK(Rat::parse("22/7") == Rat(22, 7));
  CHECK(Rat::parse("-4") == Rat(-4));
  CHECK(Rat::parse("+9/3") == Rat(3));
  CHECK_THROWS_AS(Rat::parse("1.5"), Error);
  CHECK_THROWS_AS(Rat::parse(""), Error);
  CHECK_THROWS_AS(Rat::parse("3/0"), Error);
  CHECK_THROWS_AS(Rat::parse("a/b"), Error);
}

TEST_CASE("overflow is detected, not wrapped") {
  Rat big(std::int64_t{1} << 62);
  CHECK_THROWS_AS(big * big, Error);
  CHECK_THROWS_AS(big + big, Error);
  CHECK_NOTHROW(big + Rat(1));
  CHECK((big - big) == Rat(0));
}
