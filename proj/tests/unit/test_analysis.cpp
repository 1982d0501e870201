#include <doctest.h>

#include <cmath>

#include "brute.hpp"
#include "hecke/analysis.hpp"
#include "hecke/errors.hpp"
#include "hecke/parse.hpp"
#include "hecke/words.hpp"

using namespace hecke;

namespace {

SturmianParams params(const char* slope, const char* rho) {
  const SlopeSpec s = parse_slope(slope);
  return SturmianParams(s, parse_intercept(rho, s));
}

const char* const kSlopes[] = {"per:[;1]", "per:[;2]", "per:[;3]"};

}  // namespace

TEST_SUITE("analysis") {
  TEST_CASE("direct evaluation against the binary expansion") {
    SturmianParams P = params("per:[;1]", "digits[]");
    const SeriesValue v = eval_to_precision(P, {2, 1}, 2000);
    CHECK(v.value.narrower_than_bits(2000));
    const auto [lo, hi] = brute::xi_binary({-1, 5, 2}, 2100);
    CHECK(v.value.intersects(RealInterval::enclose(lo, hi, 2200)));
  }

  TEST_CASE("direct evaluation against the brute-force series") {
    const brute::Line line{-3, 13, 2, 7, 2};
    SturmianParams P = params("per:[;3]", "digits[0,2]");
    for (const BasePoint pt : {BasePoint{2, 3}, BasePoint{3, 3}, BasePoint{5, 2}}) {
      const SeriesValue v = eval_to_precision(P, {Int(pt.b), Int(pt.a)}, 300);
      const auto [lo, hi] = brute::xi(line, pt.b, pt.a, 400);
      const Rational bm1(pt.b - 1);
      CHECK(v.value.intersects(RealInterval::enclose(lo / bm1, hi / bm1, 400)));
    }
  }

  TEST_CASE("beta = 1") {
    for (const char* s : kSlopes) {
      SturmianParams P = params(s, "digits[]");
      const SeriesValue v = eval_to_precision(P, {1, 2}, 200);
      CHECK(v.value.contains(Rational(1)));
      const SeriesValue w = eval_to_precision(P, {1, 5}, 200);
      CHECK(w.value.contains(Rational(1, 4)));
    }
  }

  TEST_CASE("non-contracting point") {
    SturmianParams P = params("per:[;1]", "digits[]");
    CHECK_THROWS_AS(eval_direct(P, {1, 1}, 10, 64), NonContracting);
  }

  TEST_CASE("alternating series matches direct evaluation") {
    for (const char* s : kSlopes)
      for (const char* rho : {"digits[]", "digits[1]"}) {
        try {
          parse_intercept(rho, parse_slope(s));
        } catch (const InvalidInput&) {
          continue;
        }
        for (const BasePoint pt : {BasePoint{2, 1}, BasePoint{2, 3}, BasePoint{3, 2}}) {
          SturmianParams P = params(s, rho);
          const SeriesValue d = eval_to_precision(P, {Int(pt.b), Int(pt.a)}, 512);
          const SeriesValue f = eval_fast(P, pt, 25, 512);
          CHECK(d.value.intersects(f.value));
          CHECK(f.value.log10_width() < -50);
        }
      }
  }

  TEST_CASE("functional equation") {
    SturmianParams P = params("per:[;3]", "digits[]");
    const FunctionalEquationReport r = verify_functional_equation(P, {2, 1}, 1, 256);
    CHECK(r.contains_zero());
    CHECK(r.residual.log10_width() < -40);
    for (const char* rho : {"digits[1]", "digits[0,2]", "digits[0,3,0,3]", "digits[2,0,1]"}) {
      SturmianParams Q = params("per:[;3]", rho);
      for (std::size_t m = 1; m <= 4; ++m) {
        CAPTURE(rho);
        CAPTURE(m);
        const FunctionalEquationReport x = verify_functional_equation(Q, {3, 2}, m, 320);
        CHECK(x.contains_zero());
        CHECK(x.residual.log10_width() < -40);
      }
    }
  }

  TEST_CASE("shifted words") {
    SturmianParams P = params("per:[;3]", "digits[1,0,2,0,1]");
    for (std::size_t m = 1; m <= 4; ++m) {
      SturmianParams S = shifted_params(P, m);
      const SlopeSpec theta_m = P.slope().shifted(m);
      std::vector<std::uint64_t> tail;
      for (std::size_t k = m + 1; k <= 6; ++k) tail.push_back(P.b(k));
      const QuadraticNumber rho = intercept_from_digits(theta_m, tail);
      CHECK(sturmian_prefix(S, 200) == sturmian_prefix_numeric(theta_m, rho, 200));
    }
  }

  TEST_CASE("exponent by formula") {
    SturmianParams F = params("per:[;1]", "digits[]");
    const ExponentReport r = exponent_by_formula(F, 40);
    for (std::size_t k = 0; k <= 40; ++k) {
      if (r.nu[0][k]) CHECK(*r.nu[0][k] == 2);
      REQUIRE(r.nu[3][k]);
      const long double expect = 1 + to_long_double(F.q(static_cast<long>(k) + 2)) /
                                         to_long_double(F.q(static_cast<long>(k) + 1));
      CHECK(std::fabs(static_cast<double>(*r.nu[3][k] - expect)) < 1e-15);
    }
    const double golden = (3 + std::sqrt(5.0)) / 2;
    REQUIRE(r.estimate);
    CHECK(std::fabs(static_cast<double>(*r.estimate) - golden) < 0.02);

    for (const char* rho : {"digits[]", "digits[0,2]", "digits[2,0,3,0,1]"}) {
      SturmianParams P = params("per:[;3]", rho);
      const ExponentReport q = exponent_by_formula(P, 30);
      for (std::size_t k = 0; k <= 30; ++k) {
        P.ensure(k + 2);
        const Int gap = P.q(static_cast<long>(k) + 1) - P.q(static_cast<long>(k));
        if (P.r(k + 1) >= gap) {
          CHECK(*q.nu[2][k] > 1);
          CHECK(*q.nu[2][k] <= 2);
        }
      }
    }
  }

  TEST_CASE("exponent by convergents") {
    const std::vector<Rational> ones(300, Rational(1));
    const ExponentReport r = exponent_by_convergents(ones, 2, 150);
    REQUIRE(r.estimate);
    CHECK(std::fabs(static_cast<double>(*r.estimate) - 2) < 0.01);

    LogQuotientStream s(params("per:[;1]", "digits[]"), {2, 1});
    const ExponentReport c = exponent_by_convergents(s, 200, 2, 100);
    SturmianParams F = params("per:[;1]", "digits[]");
    const ExponentReport f = exponent_by_formula(F, 40);
    REQUIRE(c.estimate);
    CHECK(std::fabs(static_cast<double>(*c.estimate - *f.estimate)) < 0.05);
    CHECK(std::fabs(static_cast<double>(*c.estimate) - (3 + std::sqrt(5.0)) / 2) < 0.02);
  }

  TEST_CASE("convergent bound with an improper head") {
    SturmianParams P = params("per:[;2]", "digits[1]");
    const BasePoint pt{3, 2};
    PartialQuotientStream s(params("per:[;2]", "digits[1]"), pt);
    std::vector<Rational> A{*s.head()};
    for (const Int& x : s.take(6)) A.emplace_back(x);
    const RealInterval xi = Rational(2) * eval_to_precision(P, {3, 2}, 4000).value;
    Rational P1 = 1, P0 = 0, Q1 = 0, Q0 = 1;  // P_{j-1}, P_j, ...
    std::vector<Rational> Ps, Qs;
    for (const Rational& a : A) {
      const Rational Pn = a * P0 + P1, Qn = a * Q0 + Q1;
      P1 = P0, P0 = Pn, Q1 = Q0, Q0 = Qn;
      Ps.push_back(P0);
      Qs.push_back(Q0);
    }
    for (std::size_t j = 0; j + 1 < Ps.size(); ++j) {
      const Rational approx = Ps[j] / Qs[j];
      const Rational bound = 1 / (Qs[j] * Qs[j + 1]);
      CHECK(xi.upper() - approx <= bound);
      CHECK(approx - xi.lower() <= bound);
    }
  }

  TEST_CASE("approximation errors") {
    for (const char* rho : {"digits[]", "digits[1]"}) {
      SturmianParams P = params("per:[;2]", rho);
      for (int family : {4, 3}) {
        long double lo = INFINITY, hi = -INFINITY;
        for (std::size_t k = 4; k <= 12; ++k) {
          const ApproximationError e = approximation_error(P, {2, 3}, family, k);
          lo = std::min(lo, e.normalized);
          hi = std::max(hi, e.normalized);
          if (const auto x = approximation_error_exact(P, {2, 3}, family, k, 1l << 14))
            CHECK(std::fabs(static_cast<double>(x->normalized - e.normalized)) < 1e-6);
        }
        CHECK(hi - lo < 6);
      }
    }
  }

  TEST_CASE("oracle") {
    SturmianParams P = params("per:[;2]", "digits[0,2]");
    const OracleResult o = oracle_cf(P, {2, 3}, 12);
    PartialQuotientStream s(params("per:[;2]", "digits[0,2]"), {2, 3});
    const auto A = s.take(o.certified);
    for (std::size_t i = 0; i < o.certified; ++i) CHECK(o.quotients[i] == A[i]);
    CHECK(o.certified >= 8);
  }
}
