#include <doctest.h>

#include <cmath>

#include "brute.hpp"
#include "hecke/analysis.hpp"
#include "hecke/errors.hpp"
#include "hecke/expansion.hpp"
#include "hecke/parse.hpp"

using namespace hecke;

namespace {

SturmianParams params(const char* slope, const char* rho) {
  const SlopeSpec s = parse_slope(slope);
  return SturmianParams(s, parse_intercept(rho, s));
}

std::vector<Int> ints(std::initializer_list<long> xs) {
  std::vector<Int> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

// Reference quotients of xi, with the improper head split off as 1/xi - head.
std::vector<Int> brute_quotients(const brute::Line& l, const BasePoint& pt, long terms, std::size_t n,
                                 const std::optional<Rational>& head = {}) {
  auto [lo, hi] = brute::xi(l, pt.b, pt.a, terms);
  if (head) {
    const Rational x = 1 / hi - *head, y = 1 / lo - *head;
    return brute::certified_cf(x, y, n);
  }
  return brute::certified_cf(lo, hi, n);
}

}  // namespace

TEST_SUITE("expansion") {
  TEST_CASE("element quads") {
    SturmianParams P = params("per:[;3]", "digits[]");
    const auto q = element_quads(P, {2, 1}, 3);
    CHECK(q[0].c == 6);
    CHECK(q[0].d == 0);
    CHECK(q[0].e == 1);
    CHECK(q[0].f == 0);
    CHECK(q[1].c == 144);
    const auto raw = raw_stream(q);
    const std::vector<Rational> head(raw.begin(), raw.begin() + 10);
    CHECK(head == std::vector<Rational>{6, 0, 1, 1, 0, 144, 0, 1, 7, 0});
    for (std::size_t k = 0; k < q.size(); ++k) CHECK(q[k].e + 1 == Int(1) << P.q(static_cast<long>(k)).get_ui());
    for (std::size_t k = 0; k < q.size(); ++k) CHECK(raw[5 * k + 3] == Rational(q[k].e));
  }

  TEST_CASE("vanishing elements") {
    for (const char* rho : {"digits[]", "digits[1]", "digits[0,1]", "digits[2,0,2,0,1]"}) {
      SturmianParams P = params("per:[;3,1,2]", rho);
      for (const BasePoint pt : {BasePoint{2, 1}, BasePoint{3, 2}}) {
        const auto q = element_quads(P, pt, 10);
        for (std::size_t k = 0; k < 10; ++k) {
          if (P.b(k + 1) == 0) CHECK(q[k].f == 0);
          if (P.a(k + 2) == P.b(k + 2) + 1) CHECK(sgn(q[k + 1].c) == 0);
        }
      }
    }
  }

  TEST_CASE("contracted stream against a brute-force series") {
    const struct {
      const char* slope;
      const char* rho;
      brute::Line line;
    } cases[] = {{"per:[;1]", "digits[]", {-1, 5, 2}},
                 {"per:[;2]", "digits[]", {-2, 8, 2}},
                 {"per:[;3]", "digits[]", {-3, 13, 2}},
                 {"per:[;2]", "digits[1]", {-2, 8, 2, 2, 0}},
                 {"per:[;3]", "digits[0,2]", {-3, 13, 2, 7, 2}},
                 {"per:[;2]", "digits[0,2]", {-2, 8, 2, 5, 2}}};
    for (const auto& c : cases) {
      for (const BasePoint pt : {BasePoint{2, 1}, BasePoint{2, 3}, BasePoint{3, 3}, BasePoint{3, 2}}) {
        CAPTURE(c.slope);
        CAPTURE(c.rho);
        CAPTURE(pt.b);
        CAPTURE(pt.a);
        PartialQuotientStream s(params(c.slope, c.rho), pt);
        const std::optional<Rational> head = s.head();
        const auto ref = brute_quotients(c.line, pt, 6000, 8, head);
        REQUIRE(ref.size() >= 3);
        LogQuotientStream ls(params(c.slope, c.rho), pt);
        std::size_t n = 0;
        long double bits = 0;
        for (long double x : ls.take(ref.size() + (head ? 1 : 0))) {
          bits += x / std::log(2.0L);
          if (bits > 12000) break;
          ++n;
        }
        const auto got = s.take(std::min(ref.size(), n - (head ? 1 : 0)));
        for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == ref[i]);
      }
    }
  }

  TEST_CASE("characteristic word of slope [0; 3, 3, ...] at b = 2, a = 1") {
    PartialQuotientStream s(params("per:[;3]", "digits[]"), {2, 1});
    const auto A = s.take(3);
    CHECK(A == ints({7, 146, 8396808}));
    const auto ref = brute_quotients({-3, 13, 2}, {2, 1}, 2000, 3);
    CHECK(ref == A);
  }

  TEST_CASE("Fibonacci word: 28 elements against the binary expansion") {
    PartialQuotientStream s(params("per:[;1]", "digits[]"), {2, 1});
    const auto A = s.take(28);
    const auto [lo, hi] = brute::xi_binary({-1, 5, 2}, 1l << 22);
    const auto ref = brute::certified_cf(lo, hi, 28);
    REQUIRE(ref.size() == 28);
    CHECK(A == ref);
  }

  TEST_CASE("only d_0 merges when every gap is at least 2 and every digit positive") {
    const SlopeSpec s = parse_slope("per:[;3]");
    for (const BasePoint pt : {BasePoint{2, 1}, BasePoint{2, 3}}) {
      SturmianParams P(s, InterceptSpec::formal([](std::size_t) { return std::uint64_t{1}; }, "ones"));
      const auto q = element_quads(P, pt, 3);
      std::vector<Int> expect = {floor(q[0].c) + 1, q[0].e, q[0].f};
      for (std::size_t k = 1; k <= 2; ++k)
        for (const Int& x : {floor(q[k].c), q[k].d, Int(1), q[k].e, q[k].f}) expect.push_back(x);
      PartialQuotientStream st(P, pt);
      CHECK(st.take(expect.size()) == expect);
      for (const CaseLogEntry& e : st.case_log()) CHECK(e.rule == "ii_0");
    }
  }

  TEST_CASE("improper heads") {
    CHECK_FALSE(is_improper({2, 5}));
    CHECK(is_improper({3, 2}));
    CHECK_FALSE(is_improper({3, 3}));
    PartialQuotientStream s(params("per:[;2]", "digits[1]"), {3, 2});
    CHECK(s.improper());
    const auto h = s.head();
    REQUIRE(h);
    CHECK(h->get_den() != 1);
    CHECK(2 % h->get_den() == 0);
    CHECK(sgn(*h) > 0);
  }

  TEST_CASE("case log preconditions hold") {
    for (const char* rho : {"digits[]", "digits[1]", "digits[0,2]", "digits[0,0,3]", "digits[2,0,3,0]"}) {
      SturmianParams P = params("per:[;3]", rho);
      const ExpansionResult r = expand_xi(P, {2, 3}, 6);
      CHECK_FALSE(r.case_log.empty());
      for (const CaseLogEntry& e : r.case_log) CHECK_NOTHROW(check_case_preconditions(P, e));
      for (const Int& a : r.A) CHECK(sgn(a) > 0);
    }
  }

  TEST_CASE("log stream follows the exact stream") {
    for (const BasePoint pt : {BasePoint{2, 3}, BasePoint{3, 2}}) {
      PartialQuotientStream s(params("per:[;2]", "digits[0,2]"), pt);
      LogQuotientStream ls(params("per:[;2]", "digits[0,2]"), pt);
      if (const auto h = s.head()) CHECK(std::fabs(static_cast<double>(ls.next() - log_abs(*h))) < 1e-9);
      for (const Int& a : s.take(9)) CHECK(std::fabs(static_cast<double>(ls.next() - log_abs(a))) < 1e-9);
    }
  }

  TEST_CASE("F and xi") {
    SturmianParams low = params("per:[;3]", "digits[]");
    CHECK(floor_theta_plus_rho(low) == 0);
    SturmianParams high = params("per:[;1]", "digits[]");
    CHECK(floor_theta_plus_rho(high) == 1);
    const BasePoint pt{3, 2};
    const Rational F(5, 7);
    CHECK(xi_from_F(F, pt, 0) == Rational(4, 3) * F);
    CHECK(xi_from_F(F, pt, 1) - xi_from_F(F, pt, 0) == Rational(1, 9));
    for (int fl : {0, 1}) CHECK(F_from_xi(xi_from_F(F, pt, fl), pt, fl) == F);
  }

  TEST_CASE("invalid points") {
    CHECK_THROWS_AS(validate({1, 1}), InvalidInput);
    CHECK_THROWS_AS(validate({2, 0}), InvalidInput);
  }
}
