#include <doctest.h>

#include <random>

#include "brute.hpp"
#include "hecke/cf_core.hpp"
#include "hecke/errors.hpp"
#include "hecke/interval.hpp"

using namespace hecke;

namespace {

std::vector<std::uint64_t> take(const SlopeSpec& s, std::size_t n) {
  SlopeCursor c = s.cursor();
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(c.next());
  return out;
}

}  // namespace

TEST_SUITE("cf_core") {
  TEST_CASE("periodic streams") {
    CHECK(take(SlopeSpec::periodic({}, {1}), 5) == std::vector<std::uint64_t>{1, 1, 1, 1, 1});
    CHECK(take(SlopeSpec::periodic({}, {2}), 4) == std::vector<std::uint64_t>{2, 2, 2, 2});
    CHECK(take(SlopeSpec::periodic({1, 2}, {3}), 5) == std::vector<std::uint64_t>{1, 2, 3, 3, 3});
    CHECK_THROWS_AS(SlopeSpec::periodic({1}, {}), InvalidInput);
  }

  TEST_CASE("surd streams") {
    CHECK(take(SlopeSpec::surd(-1, 5, 2), 6) == std::vector<std::uint64_t>(6, 1));
    CHECK(take(SlopeSpec::surd(-1, 2, 1), 6) == std::vector<std::uint64_t>(6, 2));
    CHECK(take(SlopeSpec::surd(-3, 13, 2), 6) == std::vector<std::uint64_t>(6, 3));
  }

  TEST_CASE("cursor reset and position") {
    SlopeCursor c = SlopeSpec::surd(-3, 13, 2).cursor();
    c.next();
    c.next();
    CHECK(c.position() == 2);
    c.reset();
    CHECK(c.position() == 0);
    CHECK(c.next() == 3);
  }

  TEST_CASE("surd and periodic representations agree") {
    // Random eventually periodic lists round-trip through their exact value.
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<std::uint64_t> pre(rng() % 3), per(1 + rng() % 3);
      for (auto& x : pre) x = 1 + rng() % 5;
      for (auto& x : per) x = 1 + rng() % 5;
      const SlopeSpec s = SlopeSpec::periodic(pre, per);
      const QuadraticNumber v = s.value();
      CHECK(v.sign() > 0);
      CHECK(v < QuadraticNumber::rational(1));
      const auto expect = take(s, 12);
      // Direct Gauss map on the exact value.
      QuadraticNumber x = v;
      for (std::size_t i = 0; i < 12; ++i) {
        x = QuadraticNumber::rational(1) / x;
        const Int a = x.floor();
        CHECK(a == Int(static_cast<unsigned long>(expect[i])));
        x = x - QuadraticNumber::rational(Rational(a));
      }
    }
  }

  TEST_CASE("detect_cycle") {
    const auto c = detect_cycle(SlopeSpec::surd(-3, 13, 2));
    REQUIRE(c);
    CHECK(c->period == 1);
  }

  TEST_CASE("convergents") {
    Convergents f(SlopeSpec::periodic({}, {1}), 4);
    for (long k = 0; k <= 4; ++k) {
      const int q[] = {1, 1, 2, 3, 5}, p[] = {0, 1, 1, 2, 3};
      CHECK(f.q(k) == q[k]);
      CHECK(f.p(k) == p[k]);
    }
    Convergents s(SlopeSpec::periodic({}, {2}), 3);
    for (long k = 0; k <= 3; ++k) {
      const int q[] = {1, 2, 5, 12}, p[] = {0, 1, 2, 5};
      CHECK(s.q(k) == q[k]);
      CHECK(s.p(k) == p[k]);
    }
    // Determinant and delta_k sign alternation.
    Convergents t(SlopeSpec::surd(-3, 13, 2), 20);
    for (long k = 0; k < 20; ++k) {
      CHECK(t.p(k + 1) * t.q(k) - t.p(k) * t.q(k + 1) == (k % 2 ? -1 : 1));
      CHECK(t.delta(k).sign() == (k % 2 ? -1 : 1));
    }
  }

  TEST_CASE("theta_interval") {
    const RealInterval g = theta_interval(SlopeSpec::periodic({}, {1}), 20);
    CHECK(g.narrower_than_bits(20));
    CHECK(g.contains(Rational(6180339, 10000000)));
    const RealInterval s = theta_interval(SlopeSpec::periodic({}, {2}), 10);
    CHECK(s.narrower_than_bits(10));
    CHECK(s.lower() < Rational(41421357, 100000000));
    CHECK(s.upper() > Rational(41421356, 100000000));
    for (long bits : {8l, 64l, 300l}) CHECK(theta_interval(SlopeSpec::surd(-3, 13, 2), bits).narrower_than_bits(bits));
    CHECK_THROWS_AS(theta_interval(SlopeSpec::surd(-3, 13, 2), 7), InvalidInput);
  }

  TEST_CASE("cf_extract") {
    const CfExtraction e = cf_extract(Rational(2, 3), Rational(2, 3), 10);
    CHECK(e.quotients == std::vector<Int>{1, 2});
    CHECK(e.certified_count == 2);
    const CfExtraction g = cf_extract(Rational(6180, 10000), Rational(6181, 10000), 20);
    REQUIRE(g.certified_count >= 3);
    for (std::size_t i = 0; i < g.certified_count; ++i) CHECK(g.quotients[i] == 1);
    CHECK(cf_extract(Rational(0), Rational(1), 5).certified_count == 0);
  }

  TEST_CASE("cf_extract reproduces Euclid on random rationals") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
      const Int q = 1 + rng() % 1000000;
      const Int p = rng() % q.get_ui();
      Rational x(p, q);
      x.canonicalize();
      if (sgn(x) == 0) continue;
      const CfExtraction e = cf_extract(x, x, 100);
      CHECK(e.quotients == brute::cf(x, 100));
      CHECK(e.certified_count == e.quotients.size());
    }
  }

  TEST_CASE("cf_extract certified quotients are shared by the endpoints") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
      Rational lo(rng() % 100000, 100000), hi = lo + Rational(1 + rng() % 50, 10000000);
      lo.canonicalize();
      hi.canonicalize();
      if (sgn(lo) == 0 || hi >= 1) continue;
      const CfExtraction e = cf_extract(lo, hi, 40);
      const auto a = brute::cf(lo, 60), b = brute::cf(hi, 60);
      for (std::size_t i = 0; i < e.certified_count; ++i) {
        REQUIRE(i < a.size());
        CHECK(e.quotients[i] == a[i]);
      }
    }
  }
}

TEST_SUITE("interval") {
  TEST_CASE("outward rounding") {
    const RealInterval x = RealInterval::enclose(Rational(1, 3), Rational(1, 3), 10);
    CHECK(x.contains(Rational(1, 3)));
    CHECK(x.narrower_than_bits(10));
    const RealInterval y = x * x + x.inverse();
    CHECK(y.contains(Rational(1, 9) + 3));
    CHECK((x - x).contains_zero());
  }
}
