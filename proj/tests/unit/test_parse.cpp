#include <doctest.h>

#include "hecke/errors.hpp"
#include "hecke/parse.hpp"

using namespace hecke;

TEST_SUITE("parse") {
  TEST_CASE("slopes") {
    const SlopeSpec a = parse_slope("per:[;1]");
    CHECK(a.kind() == SlopeSpec::Kind::periodic);
    CHECK(a.period() == std::vector<std::uint64_t>{1});
    CHECK(a.to_string() == "per:[;1]");

    const SlopeSpec b = parse_slope("per:[2, 5;1,3]");
    CHECK(b.prefix() == std::vector<std::uint64_t>{2, 5});
    CHECK(b.period() == std::vector<std::uint64_t>{1, 3});
    CHECK(parse_slope(b.to_string()).to_string() == b.to_string());

    const SlopeSpec c = parse_slope("surd:(-3,13,2)");
    CHECK(c.kind() == SlopeSpec::Kind::surd);
    CHECK(c.value() == parse_slope("per:[;3]").value());
    CHECK(parse_slope(c.to_string()).value() == c.value());
  }

  TEST_CASE("bad slopes") {
    for (const char* s : {"", "per:[1]", "per:[;]", "per:[1;]", "per:[;0]", "per:[0;1]", "per:[;-1]",
                          "per:[;1", "per:[;x]", "surd:(1,2)", "surd:(-1,4,2)", "cf:[;1]", "per:[;1]x"}) {
      CAPTURE(s);
      CHECK_THROWS_AS(parse_slope(s), InvalidInput);
    }
  }

  TEST_CASE("intercepts") {
    const SlopeSpec s = parse_slope("per:[;3]");
    const InterceptSpec r = parse_intercept("rho:rat(1/3)", s);
    CHECK(r.kind() == InterceptSpec::Kind::numeric);
    CHECK(r.value() == QuadraticNumber::rational(Rational(1, 3)));

    const InterceptSpec d = parse_intercept("rho:digits[0,2,1]", s);
    CHECK(d.kind() == InterceptSpec::Kind::formal);
    CHECK(d.digits() == std::vector<std::uint64_t>{0, 2, 1});
    CHECK(d.formal_digit(7) == 0);
    CHECK(parse_intercept("digits[0,2,1]", s).digits() == d.digits());
    CHECK(parse_intercept(d.to_string(), s).digits() == d.digits());

    const InterceptSpec e = parse_intercept("digits[]", s);
    CHECK(e.digits().empty());
    CHECK(parse_intercept("rho:surd(-3,13,2)", s).kind() == InterceptSpec::Kind::numeric);
  }

  TEST_CASE("bad intercepts") {
    const SlopeSpec s = parse_slope("per:[;3]");
    for (const char* r : {"", "rho:", "rho:rat(1/0)", "rho:rat(3/2)", "rho:rat(-1/2)", "rho:digits[3]",
                          "rho:digits[0,4]", "rho:digits[1,3]", "rho:digits[a]", "rho:surd(1,-2,3)",
                          "rho:surd(1,2,0)", "rho:xyz"}) {
      CAPTURE(r);
      CHECK_THROWS_AS(parse_intercept(r, s), InvalidInput);
    }
    // b_1 <= a_1 - 1 = 0 for the golden slope.
    CHECK_THROWS_AS(parse_intercept("digits[1]", parse_slope("per:[;1]")), InvalidInput);
  }
}
