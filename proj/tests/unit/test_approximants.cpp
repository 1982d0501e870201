#include <doctest.h>

#include "hecke/approximants.hpp"
#include "hecke/modular.hpp"
#include "hecke/parse.hpp"

using namespace hecke;

namespace {

SturmianParams params(const char* slope, const char* rho) {
  const SlopeSpec s = parse_slope(slope);
  return SturmianParams(s, parse_intercept(rho, s));
}

Rational pw(long b, long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), Int(b).get_mpz_t(), static_cast<unsigned long>(e));
  return Rational(r);
}

const char* const kRhos[] = {"digits[]", "digits[1]", "digits[0,2]", "digits[2,0,3,1]", "digits[0,3,0,3]"};
const BasePoint kPoints[] = {{2, 1}, {2, 3}, {3, 3}, {3, 2}, {5, 7}};

}  // namespace

TEST_SUITE("approximants") {
  TEST_CASE("k = 0 closed forms") {
    for (const char* rho : {"digits[]", "digits[1]", "digits[2]"}) {
      SturmianParams P = params("per:[;3]", rho);
      for (const BasePoint& pt : kPoints) {
        const long b = static_cast<long>(pt.b), a = static_cast<long>(pt.a);
        const long a1 = 3, b1 = static_cast<long>(P.b(1));
        const FractionFamily f = farey_chain(element_quads(P, pt, 0), pt)[0];
        if (pw(b, a1 - b1) * a == b)
          CHECK(sgn(f.one.den) == 0);
        else
          CHECK(f.one.value() == Rational(b - 1) / (pw(b, a1 - b1) * a - b));
        CHECK(f.two.value() == Rational(b - 1) / (pw(b, a1 - b1) * a - 1));
        CHECK(f.four.value() == pw(b, b1) * (b - 1) / (pw(b, a1) * a - 1));
      }
    }
    SturmianParams P = params("per:[;3]", "digits[]");
    const FractionFamily f = farey_chain(element_quads(P, {2, 1}, 0), {2, 1})[0];
    CHECK(f.one.value() == Rational(1, 6));
    CHECK(f.two.value() == Rational(1, 7));
    CHECK(f.four.value() == Rational(1, 7));
  }

  TEST_CASE("anchors") {
    CHECK(anchor_three({3, 2}) == ExactFraction(2, 0));
    CHECK(anchor_four({3, 2}) == ExactFraction(0, 2));
    CHECK(anchor_three({3, 2}).formal);
  }

  TEST_CASE("Farey chain, word values and matrix products agree") {
    for (const char* slope : {"per:[;3]", "per:[;1,2]"}) {
      for (const char* rho : kRhos) {
        const SlopeSpec s = parse_slope(slope);
        std::vector<std::uint64_t> digits;
        try {
          parse_intercept(rho, s);
        } catch (const std::exception&) {
          continue;
        }
        for (const BasePoint& pt : kPoints) {
          SturmianParams P = params(slope, rho);
          const std::size_t K = 7;
          const auto quads = element_quads(P, pt, K);
          const auto chain = farey_chain(quads, pt);
          const auto words = fraction_families(P, pt, K);
          const MatrixConvergents mc = matrix_convergents(raw_stream(quads), pt.b);
          for (std::size_t k = 0; k <= K; ++k) {
            CHECK(words[k] == chain[k]);
            CHECK(chain[k].two == ExactFraction::farey(Int(1), chain[k].two_minus_one, chain[k].one));
            const auto cyc = chain[k].cycle();
            for (std::size_t i = 0; i < 5; ++i) {
              const long j = static_cast<long>(5 * k + i + 1);
              CHECK(Rational(cyc[i]->num) == mc.p(j));
              CHECK(Rational(cyc[i]->den) == mc.q(j));
            }
          }
        }
      }
    }
  }

  TEST_CASE("matrix convergents") {
    SturmianParams P = params("per:[;3]", "digits[]");
    const auto raw = raw_stream(element_quads(P, {2, 1}, 5));
    const MatrixConvergents m = matrix_convergents(raw, 2);
    CHECK(m.q(0) == 1);
    CHECK(m.p(0) == 0);
    CHECK(m.q(-1) == 0);
    CHECK(m.p(-1) == 1);
    for (long j = 0; j < m.size(); ++j) {
      const Rational det = m.q(j) * m.p(j - 1) - m.q(j - 1) * m.p(j);
      CHECK((det == 1 || det == -1));
    }
    const MatrixConvergents m3 = matrix_convergents(raw_stream(element_quads(P, {3, 3}, 5)), 3);
    for (long j = 0; j < m3.size(); ++j) {
      const Rational det = m3.q(j) * m3.p(j - 1) - m3.q(j - 1) * m3.p(j);
      CHECK((det == 4 || det == -4));
    }
  }

  TEST_CASE("sigma and gamma") {
    SturmianParams P = params("per:[;3]", "digits[1]");
    const BasePoint pt{2, 3};
    const SigmaGamma sg = sigma_gamma(P, pt, 8);
    CHECK(sg.sigma(0) == 0);
    CHECK(sg.sigma(1) == 1 / (pw(2, 3 - 1) * 3));
    CHECK(sg.gamma(1) == 1 / (pw(2, 3) * 3));
    SturmianParams F = params("per:[;1]", "digits[]");
    const SigmaGamma fg = sigma_gamma(F, {2, 1}, 12);
    for (std::size_t k = 0; k <= 12; ++k) CHECK(fg.gamma(k) == 1 / pw(2, F.q(static_cast<long>(k)).get_si()));
  }

  TEST_CASE("exact identities") {
    for (const char* rho : kRhos) {
      for (const BasePoint& pt : kPoints) {
        SturmianParams P = params("per:[;3]", rho);
        const std::size_t K = 7;
        const SigmaGamma sg = sigma_gamma(P, pt, K + 1);
        const auto chain = farey_chain(element_quads(P, pt, K), pt);
        const WordFamily w = build_word_family(P, K);
        for (std::size_t k = 0; k <= K; ++k) {
          CHECK(telescoped_identity(P, pt, sg, k));
          CHECK(identity_difference(P, pt, k, chain));
          if (k >= 1) CHECK(sigma_period_identity(sg, pt, k, w, chain));
        }
      }
    }
  }

  TEST_CASE("identities detect a perturbed family") {
    SturmianParams P = params("per:[;2]", "digits[1]");
    const BasePoint pt{2, 3};
    auto chain = farey_chain(element_quads(P, pt, 4), pt);
    chain[3].three.num += 1;
    CHECK_FALSE(identity_difference(P, pt, 3, chain));
  }

  TEST_CASE("modular routes agree with the exact ones") {
    for (const char* rho : kRhos) {
      for (const BasePoint& pt : kPoints) {
        SturmianParams P = params("per:[;3]", rho);
        for (unsigned long p : kFingerprintPrimes) {
          CHECK(fraction_routes_mod(P, pt, 12, p).ok);
          CHECK(identities_mod(P, pt, 12, p).ok);
        }
      }
    }
  }

  TEST_CASE("error exponents") {
    SturmianParams F = params("per:[;1]", "digits[]");
    for (std::size_t k = 0; k <= 10; ++k) {
      const Int u = error_exponents(F, k).u;
      CHECK(u == Int(F.q(static_cast<long>(k) + 1)));
    }
    SturmianParams P = params("per:[;3]", "digits[0,0,3]");
    // a_3 = b_3 at k = 1.
    const Int u = error_exponents(P, 1).u;
    CHECK(u == Int(P.r(1) + P.q(2)));
    SturmianParams R = params("per:[;3]", "digits[0,2]");
    // a_2 - b_2 = 1 and a_3 - b_3 >= 1 at k = 0.
    const Int v = error_exponents(R, 0).v;
    CHECK(v == Int(R.r(1) + 2 * R.q(0)));
  }
}
