#include <doctest.h>

#include <random>

#include "hecke/errors.hpp"
#include "hecke/ostrowski.hpp"
#include "hecke/parse.hpp"

using namespace hecke;

namespace {

const SlopeSpec kGolden = SlopeSpec::periodic({}, {1});
const SlopeSpec kSilver = SlopeSpec::periodic({}, {2});
const SlopeSpec kThree = SlopeSpec::periodic({}, {3});

QuadraticNumber Q(long x) { return QuadraticNumber::rational(Rational(x)); }

}  // namespace

TEST_SUITE("ostrowski") {
  TEST_CASE("greedy digits of rho = theta vanish") {
    for (const SlopeSpec& s : {kGolden, kSilver, kThree, SlopeSpec::surd(-3, 13, 2)}) {
      const OstrowskiDigits d = digits_from_intercept(s, InterceptSpec::numeric(s.value()), 12);
      for (std::size_t k = 1; k <= 12; ++k) CHECK(d.b[k] == 0);
    }
  }

  TEST_CASE("greedy digits of simple intercepts") {
    const QuadraticNumber t2 = kSilver.value();
    OstrowskiDigits d = digits_from_intercept(kSilver, InterceptSpec::numeric(Q(2) * t2), 10);
    CHECK(d.b[1] == 1);
    for (std::size_t k = 2; k <= 10; ++k) CHECK(d.b[k] == 0);

    const QuadraticNumber t3 = kThree.value();
    d = digits_from_intercept(kThree, InterceptSpec::numeric(t3 + Q(2) * (Q(3) * t3 - Q(1))), 10);
    CHECK(d.b[1] == 0);
    CHECK(d.b[2] == 2);
    for (std::size_t k = 3; k <= 10; ++k) CHECK(d.b[k] == 0);
  }

  TEST_CASE("admissibility") {
    CHECK(validate_digits(kGolden, {0, 0, 0}));
    CHECK_FALSE(validate_digits(kGolden, {1}));
    CHECK_FALSE(validate_digits(kThree, {0, 3, 3}));
    CHECK(validate_digits(kThree, {0, 0, 3}));
    CHECK(validate_digits(kThree, {2, 3, 0}) == false);
    CHECK(validate_digits(kThree, {2, 0, 3}));
    CHECK(validate_digits(kThree, {2, 2, 2}));
  }

  TEST_CASE("intercept round trip for random admissible digits") {
    std::mt19937 rng(5);
    for (const SlopeSpec& s : {kSilver, kThree, SlopeSpec::periodic({1, 4}, {2, 1})}) {
      Convergents conv(s, 10);
      for (int trial = 0; trial < 25; ++trial) {
        std::vector<std::uint64_t> digits(1 + rng() % 6);
        for (std::size_t k = 1; k <= digits.size(); ++k)
          digits[k - 1] = rng() % ((k == 1 ? conv.a(1) - 1 : conv.a(k)) + 1);
        if (!validate_digits(s, digits)) continue;
        const QuadraticNumber rho = intercept_from_digits(s, digits);
        if (rho.sign() < 0 || !(rho < Q(1))) continue;
        const OstrowskiDigits d = digits_from_intercept(s, InterceptSpec::numeric(rho), digits.size() + 4);
        for (std::size_t k = 1; k <= d.depth(); ++k) CHECK(d.b[k] == (k <= digits.size() ? digits[k - 1] : 0));
      }
    }
  }

  TEST_CASE("greedy digits are admissible for rational intercepts") {
    std::mt19937 rng(9);
    for (int trial = 0; trial < 30; ++trial) {
      Rational rho(rng() % 997, 997);
      rho.canonicalize();
      const OstrowskiDigits d = digits_from_intercept(kThree, InterceptSpec::rational(rho), 10);
      const std::vector<std::uint64_t> digits(d.b.begin() + 1, d.b.end());
      CHECK(validate_digits(kThree, digits));
    }
  }

  TEST_CASE("derived sequences") {
    SturmianParams g(kGolden, InterceptSpec::formal({}));
    CHECK(g.r(0) == 1);
    CHECK(g.r_tilde(0) == 0);
    for (std::size_t k = 1; k <= 15; ++k) {
      CHECK(g.t(k) == 0);
      CHECK(g.t_tilde(k) == 0);
      CHECK(g.r(k) == g.q(static_cast<long>(k)));
      CHECK(g.r_tilde(k) == g.p(static_cast<long>(k)));
    }
    SturmianParams s(kThree, parse_intercept("digits[0,2]", kThree));
    CHECK(s.r(1) == 3);
    CHECK(s.r_tilde(1) == 1);
    CHECK(s.t(2) == 6);
    CHECK(s.r(2) == 4);
    SturmianParams one(kSilver, parse_intercept("digits[1]", kSilver));
    CHECK(one.r(1) == 1);
    CHECK(one.r_tilde(1) == 1);
  }

  TEST_CASE("derived_sequences agrees with the params tables") {
    SturmianParams s(kThree, parse_intercept("digits[1,0,3,0,2]", kThree));
    OstrowskiDigits d = s.snapshot(12);
    const OstrowskiDigits copy = d;
    derived_sequences(d, s.convergents(), 12);
    CHECK(d.t == copy.t);
    CHECK(d.r == copy.r);
    CHECK(d.t_tilde == copy.t_tilde);
    CHECK(d.r_tilde == copy.r_tilde);
  }

  TEST_CASE("shifted intercepts") {
    SturmianParams s(kThree, parse_intercept("digits[1,0,3,0,2]", kThree));
    for (std::size_t m = 1; m <= 4; ++m) {
      const auto v = shifted_intercept_value(s, m);
      REQUIRE(v);
      // Digits of the shifted intercept continue the parent's digits.
      const SlopeSpec sm = kThree.shifted(m);
      const Int L = v->floor();
      const QuadraticNumber frac = *v - QuadraticNumber::rational(Rational(L));
      if (L == 0) {
        const OstrowskiDigits d = digits_from_intercept(sm, InterceptSpec::numeric(frac), 4);
        for (std::size_t k = 1; k <= 4; ++k) CHECK(d.b[k] == s.b(m + k));
      }
    }
    auto parent = std::make_shared<SturmianParams>(s);
    const InterceptSpec f = shifted_formal_intercept(parent, 2);
    CHECK(f.formal_digit(1) == s.b(3));
    CHECK(f.formal_digit(2) == s.b(4));
  }
}
