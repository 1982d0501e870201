#include "hecke/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <memory>

#include "hecke/approximants.hpp"
#include "hecke/errors.hpp"
#include "hecke/words.hpp"

namespace hecke {

namespace {

Int shifted(const Int& x, long s) {
  Int r;
  mpz_mul_2exp(r.get_mpz_t(), x.get_mpz_t(), static_cast<mp_bitcnt_t>(s));
  return r;
}

// Majorant sum_{m>=1} B^-m A^-floor(m p/q) = S_q / (1 - B^-q A^-p) for an even
// convergent p/q <= theta.
struct TailModel {
  Int p = 0, q = 1;
  Rational factor;     // S_q / (1 - ratio)
  long double rate = 0;  // bits per letter, log2 B + (p/q) log2 A
};

long double log2_of(const Int& x) { return log_abs(x) / std::log(2.0L); }

TailModel tail_model(Convergents& conv, const SeriesPoint& x) {
  TailModel t;  // p_0 / q_0 = 0 / 1 unless a better convergent is cheap
  for (long k = 2;; k += 2) {
    conv.extend(static_cast<std::size_t>(k));
    const Int& q = conv.q(k);
    if (q > 64) {
      if (k == 2 && q <= 4096) t.p = conv.p(k), t.q = q;
      break;
    }
    t.p = conv.p(k);
    t.q = q;
  }
  if (t.p == 0 && x.B == 1) throw NonContracting("tail majorant needs a convergent of slope > 0");
  const unsigned long qq = t.q.get_ui();
  Rational S = 0;
  for (unsigned long i = 1; i <= qq; ++i) {
    const Int e = floor_div(Int(t.p * i), t.q);
    S += Rational(1) / Rational(pow(x.B, i) * pow(x.A, to_exponent(e)));
  }
  const Rational ratio = Rational(1) / Rational(pow(x.B, qq) * pow(x.A, to_exponent(t.p)));
  check(ratio < 1, "tail ratio must be below one");
  t.factor = S / (1 - ratio);
  t.rate = log2_of(x.B) + to_long_double(Rational(t.p, t.q)) * log2_of(x.A);
  return t;
}

void check_contracting(const SeriesPoint& x) {
  if (x.B < 1 || x.A < 1) throw InvalidInput("series point needs B, A >= 1");
  if (x.B == 1 && x.A == 1) throw NonContracting("|beta alpha^theta| = 1");
}

struct DirectSum {
  RealInterval value;
  bool tail_below_target = false;  // tail <= 2^-(bits+2)
};

DirectSum direct_sum(SturmianParams& params, const SeriesPoint& x, std::size_t n, long bits, const TailModel& tail) {
  const BinaryWord w = sturmian_prefix(params, n, Variant::lower, std::max(kDefaultMaxLen, 64 * n));
  const Int W = word_value(w, x.B, x.A);
  const Int den = pow(x.B, n) * pow(x.A, w.ones());
  const long s = bits + 2;
  const Int lo = floor_div(shifted(W, s), den);
  const Int hi = ceil_div(shifted(W, s), den);
  const Int tail_den = tail.factor.get_den() * den;
  const Int tail_num = shifted(tail.factor.get_num(), s);
  const Int tail_up = ceil_div(tail_num, tail_den);
  const Rational unit = pow2(-s);
  return {RealInterval::enclose(Rational(lo) * unit, Rational(hi + tail_up) * unit, s), tail_num <= tail_den};
}

}  // namespace

SeriesValue eval_direct(SturmianParams& params, const SeriesPoint& x, std::size_t n_terms, long bits) {
  check_contracting(x);
  const TailModel tail = tail_model(params.convergents(), x);
  return {direct_sum(params, x, n_terms, bits, tail).value, n_terms, bits};
}

SeriesValue eval_to_precision(SturmianParams& params, const SeriesPoint& x, long bits) {
  check_contracting(x);
  const TailModel tail = tail_model(params.convergents(), x);
  std::size_t n = static_cast<std::size_t>(std::ceil((bits + 16) / tail.rate)) + tail.q.get_ui() + 8;
  for (;;) {
    DirectSum d = direct_sum(params, x, n, bits, tail);
    if (d.tail_below_target) return {std::move(d.value), n, bits};
    n += n / 2 + 1;
  }
}

SeriesValue eval_fast(SturmianParams& params, const BasePoint& pt, std::size_t K, long bits) {
  validate(pt);
  const Int b(pt.b), a(pt.a);
  const Rational beta(1, b);
  const long double lb = std::log2(static_cast<long double>(pt.b));
  params.ensure(K + 2);
  // Terms whose exponent already puts them below the target are left to the tail.
  std::size_t last = K;
  const auto E = [&](std::size_t k) -> Int { return params.r(k + 1) + params.q(static_cast<long>(k)); };
  for (std::size_t k = 0; k <= K; ++k) {
    if (to_long_double(E(k)) * lb > bits + 64) {
      last = k == 0 ? 0 : k - 1;
      if (k == 0) throw ExponentTooLarge("first term of the series is below the requested precision");
      break;
    }
  }
  const auto gamma = [&](std::size_t k) {
    const long kk = static_cast<long>(k);
    return Rational(1, monomial(b, a, params.q(kk), params.p(kk)));
  };
  Rational S = 0;
  for (std::size_t k = 0; k <= last; ++k) {
    const Int Et = params.r_tilde(k + 1) + params.p(static_cast<long>(k));
    Rational term = Rational(b - 1) / Rational(monomial(b, a, E(k), Et));
    term /= (1 - gamma(k + 1)) * (1 - gamma(k));
    if (k % 2) S -= term; else S += term;
  }
  // beta^e only needs to be resolved down to the target precision.
  const Int cap = static_cast<long>(std::ceil((bits + 64) / lb)) + 1;
  const Int next = std::min(Int(E(last + 1) - 1), cap);
  const Rational tail = 2 * Rational(1, pow(b, to_exponent(next))) / ((1 - beta) * (1 - beta));
  const long s = bits + 2;
  return {RealInterval::enclose(round_down(S - tail, s), round_up(S + tail, s), s), last + 1, bits};
}

SturmianParams shifted_params(SturmianParams& params, std::size_t m) {
  const SlopeSpec sm = params.slope().shifted(m);
  params.ensure(m + 1);
  if (m >= 1 && params.b(m + 1) < params.a(m + 1)) {
    auto parent = std::make_shared<SturmianParams>(params);
    return SturmianParams(sm, shifted_formal_intercept(parent, m), params.options());
  }
  if (const auto rho = shifted_intercept_value(params, m))
    return SturmianParams(sm, InterceptSpec::numeric(*rho, true), params.options());
  throw InvalidInput("shifted word with b_{m+1} = a_{m+1} needs an intercept in the slope's field");
}

FunctionalEquationReport verify_functional_equation(SturmianParams& params, const BasePoint& pt, std::size_t m,
                                                    long bits) {
  validate(pt);
  if (m < 1) throw InvalidInput("functional equation needs m >= 1");
  const Int b(pt.b), a(pt.a);
  params.ensure(m + 1);
  const auto gamma = [&](long k) { return Rational(1, monomial(b, a, params.q(k), params.p(k))); };
  const Rational one_minus_beta_alpha = Rational(b - 1, b) / Rational(a);

  FunctionalEquationReport rep;
  rep.m = m;
  rep.bits = bits;
  rep.lhs = eval_to_precision(params, {b, a}, bits).value;

  Rational finite = 0;
  Int X = 0, Y = 0;  // sum_{h<=k} (a_{h+1}-b_{h+1}) q_h and the same with p_h
  for (std::size_t k = 0; k < m; ++k) {
    const long kk = static_cast<long>(k);
    X += params.gap(k + 1) * params.q(kk);
    Y += params.gap(k + 1) * params.p(kk);
    Rational term = one_minus_beta_alpha / Rational(monomial(b, a, X, Y));
    term /= (1 - gamma(kk + 1)) * (1 - gamma(kk));
    if (k % 2) finite -= term; else finite += term;
  }
  const long mm = static_cast<long>(m);
  Rational factor = one_minus_beta_alpha / Rational(monomial(b, a, X, Y));
  factor /= (1 - gamma(mm)) * gamma(mm - 1);
  if (m % 2) factor = -factor;

  SturmianParams sm = shifted_params(params, m);
  rep.shifted_intercept = sm.intercept().to_string();
  const SeriesPoint x{monomial(b, a, params.q(mm), params.p(mm)), monomial(b, a, params.q(mm - 1), params.p(mm - 1))};
  const long extra = std::max(0l, static_cast<long>(std::ceil(log_abs(factor) / std::log(2.0L))));
  RealInterval inner = eval_to_precision(sm, x, bits + extra + 4).value;
  // Intercepts in [L, L+1) with L >= 1 put levels 1..L at n = 0:
  // xi = sum_{j<=L} alpha^j + alpha^L * (series over n >= 1 in the ones count).
  if (sm.intercept().kind() == InterceptSpec::Kind::numeric) {
    const Int L = sm.intercept().value().floor();
    if (sgn(L) < 0) throw InvalidInput("shifted intercept below zero");
    if (sgn(L) > 0) {
      const unsigned long l = to_exponent(L);
      Rational head = 0;
      for (unsigned long j = 1; j <= l; ++j) head += Rational(1) / Rational(pow(x.A, j));
      inner = head + (Rational(1) / Rational(pow(x.A, l))) * inner;
    }
  }
  rep.rhs = finite + factor * inner;
  rep.residual = rep.lhs - rep.rhs;
  return rep;
}

ExponentReport exponent_by_formula(SturmianParams& params, std::size_t K, std::optional<std::size_t> window_start) {
  ExponentReport rep;
  rep.route = "formula";
  rep.depth = K;
  rep.window_start = window_start.value_or(K / 2);
  params.ensure(K + 2);
  const auto ld = [](const Int& x) { return to_long_double(x); };
  for (auto& v : rep.nu) v.assign(K + 1, std::nullopt);
  for (std::size_t k = 0; k <= K; ++k) {
    const long kk = static_cast<long>(k);
    const bool g1 = params.gap(k + 1) >= 1, g2 = params.gap(k + 2) >= 1;
    if (g1 && g2) rep.nu[0][k] = 2 + ld(params.t(k)) / ld(params.r(k + 1));
    if (g2) rep.nu[1][k] = 2 + ld(params.r(k)) / ld(params.r(k + 1) + params.t(k));
    rep.nu[2][k] = 1 + ld(params.q(kk + 1)) / ld(params.r(k + 1) + params.q(kk));
    rep.nu[3][k] = 1 + ld(params.r(k + 2)) / ld(params.q(kk + 1));
    for (int i = 0; i < 4; ++i) {
      const auto& v = rep.nu[i][k];
      if (!v) continue;
      check(*v >= 1, "nu_k below one");
      rep.last_eligible[i] = k;
      if (k >= rep.window_start && (!rep.running_max[i] || *v > *rep.running_max[i])) rep.running_max[i] = *v;
    }
  }
  for (const auto& m : rep.running_max)
    if (m && (!rep.estimate || *m > *rep.estimate)) rep.estimate = *m;
  return rep;
}

namespace {

ExponentReport convergent_report(std::vector<long double> log_Q, std::size_t W) {
  ExponentReport rep;
  rep.route = "convergents";
  rep.depth = log_Q.empty() ? 0 : log_Q.size() - 1;
  rep.window_start = W;
  for (std::size_t j = 0; j + 1 < log_Q.size(); ++j) {
    if (log_Q[j] <= 0) {
      rep.ratios.push_back(std::nullopt);
      continue;
    }
    const long double r = 1 + log_Q[j + 1] / log_Q[j];
    rep.ratios.push_back(r);
    if (j >= W && (!rep.estimate || r > *rep.estimate)) rep.estimate = r;
  }
  rep.log_Q = std::move(log_Q);
  return rep;
}

}  // namespace

ExponentReport exponent_by_convergents(LogQuotientStream& stream, std::size_t J, unsigned long b, std::size_t W) {
  if (J < 2) throw InvalidInput("exponent_by_convergents needs J >= 2");
  std::vector<long double> log_Q{std::log(static_cast<long double>(b - 1))};
  long double ratio = 0;  // Q_{j-1} / Q_j
  for (std::size_t j = 1; j <= J; ++j) {
    const long double logA = stream.next();
    const long double inv = std::exp(-logA);
    log_Q.push_back(log_Q.back() + logA + std::log1p(ratio * inv));
    ratio = inv / (1 + ratio * inv);
  }
  return convergent_report(std::move(log_Q), W);
}

ExponentReport exponent_by_convergents(const std::vector<Rational>& elements, unsigned long b, std::size_t W) {
  const MatrixConvergents mc = matrix_convergents(elements, b);
  std::vector<long double> log_Q;
  for (long j = 0; j <= mc.size(); ++j) log_Q.push_back(log_abs(mc.q(j)));
  return convergent_report(std::move(log_Q), W);
}

namespace {

struct SeriesTerm {
  int sign;
  Int E, Et;
  std::size_t d1, d2;  // denominators (1 - gamma_d1)(1 - gamma_d2)
};

struct LogSigned {
  long double log;
  int sign;
};

}  // namespace

ApproximationError approximation_error(SturmianParams& params, const BasePoint& pt, int family, std::size_t k) {
  validate(pt);
  if (family != 3 && family != 4) throw InvalidInput("approximation family must be 3 or 4");
  if (family == 4 && k < 1) throw InvalidInput("(4)_{k-1} needs k >= 1");
  constexpr std::size_t kTerms = 6;
  params.ensure(k + kTerms + 3);
  const long double lb = std::log(static_cast<long double>(pt.b));
  const long double la = std::log(static_cast<long double>(pt.a));
  const auto lgamma = [&](std::size_t i) {
    const long ii = static_cast<long>(i);
    return -(to_long_double(params.q(ii)) * lb + to_long_double(params.p(ii)) * la);
  };
  const auto E = [&](std::size_t h) { return Int(params.r(h + 1) + params.q(static_cast<long>(h))); };
  const auto Et = [&](std::size_t h) { return Int(params.r_tilde(h + 1) + params.p(static_cast<long>(h))); };
  const auto sgn_of = [](std::size_t h) { return h % 2 ? -1 : 1; };

  // xi_s - (4)_{k-1}/(b-1) = sum_{h>=k} Gamma_h and
  // xi_s - (3)_k/(b-1) = gamma_{k+1} Gamma_k + sum_{h>k} Gamma_h.
  std::vector<SeriesTerm> terms;
  const long kk = static_cast<long>(k);
  if (family == 4) {
    terms.push_back({sgn_of(k), E(k), Et(k), k, k + 1});
  } else {
    terms.push_back({sgn_of(k), E(k) + params.q(kk + 1), Et(k) + params.p(kk + 1), k, k + 1});
  }
  for (std::size_t h = k + 1; h <= k + kTerms; ++h) terms.push_back({sgn_of(h), E(h), Et(h), h, h + 1});

  const auto log1m = [&](std::size_t i) { return std::log1p(-std::exp(lgamma(i))); };
  std::map<std::pair<Int, Int>, std::vector<SeriesTerm>> groups;
  for (const SeriesTerm& t : terms) groups[{t.E, pt.a == 1 ? Int(0) : t.Et}].push_back(t);

  std::vector<LogSigned> parts;
  for (const auto& [key, g] : groups) {
    const long double mono = -(to_long_double(g.front().E) * lb + to_long_double(g.front().Et) * la);
    int total = 0;
    for (const SeriesTerm& t : g) total += t.sign;
    if (total != 0) {
      long double s = 0;
      for (const SeriesTerm& t : g) s += t.sign * std::exp(-log1m(t.d1) - log1m(t.d2));
      parts.push_back({mono + std::log(std::fabs(s)), s < 0 ? -1 : 1});
      continue;
    }
    check(g.size() == 2, "cancelling group of unexpected size");
    const SeriesTerm& t1 = g[0];
    const SeriesTerm& t2 = g[1];
    std::size_t c, x, y;
    if (t1.d1 == t2.d1) { c = t1.d1; x = t1.d2; y = t2.d2; }
    else if (t1.d1 == t2.d2) { c = t1.d1; x = t1.d2; y = t2.d1; }
    else if (t1.d2 == t2.d1) { c = t1.d2; x = t1.d1; y = t2.d2; }
    else { check(t1.d2 == t2.d2, "cancelling pair without a shared denominator"); c = t1.d2; x = t1.d1; y = t2.d1; }
    // s1/((1-g_x)(1-g_c)) - s1/((1-g_y)(1-g_c)) = s1 (g_x - g_y) / ((1-g_x)(1-g_y)(1-g_c)).
    const long double lx = lgamma(x), ly = lgamma(y);
    const long double ld = std::max(lx, ly) + std::log1p(-std::exp(-std::fabs(lx - ly)));
    parts.push_back({mono + ld - log1m(x) - log1m(y) - log1m(c), t1.sign * (lx > ly ? 1 : -1)});
  }
  long double top = parts.front().log;
  for (const LogSigned& p : parts) top = std::max(top, p.log);
  long double acc = 0;
  for (const LogSigned& p : parts) acc += p.sign * std::exp(p.log - top);
  check(acc != 0, "approximation error series cancelled completely");

  ApproximationError out;
  out.k = k;
  out.family = family;
  out.log_error = std::log(static_cast<long double>(pt.b - 1)) + top + std::log(std::fabs(acc));
  const ErrorExponents ex = error_exponents(params, k);
  out.exponent = family == 4 ? Int(ex.u + params.q(kk)) : Int(ex.v + params.q(kk + 1));
  const long double theta = params.slope().value().to_long_double();
  out.normalized = out.log_error + to_long_double(out.exponent) * (lb + theta * la);
  return out;
}

std::optional<ApproximationError> approximation_error_exact(SturmianParams& params, const BasePoint& pt, int family,
                                                            std::size_t k, long max_bits) {
  const ApproximationError est = approximation_error(params, pt, family, k);
  const long bits = static_cast<long>(std::ceil(-est.log_error / std::log(2.0L))) + 64;
  if (bits > max_bits) return std::nullopt;
  const Int b(pt.b), a(pt.a);
  const std::size_t idx = family == 4 ? k - 1 : k;
  const std::vector<FractionFamily> chain = farey_chain(element_quads(params, pt, idx), pt);
  const ExactFraction& f = family == 4 ? chain.at(idx).four : chain.at(idx).three;
  const Rational approx = f.value() / Rational(b - 1);
  const RealInterval xi = eval_to_precision(params, {b, a}, bits).value;
  const RealInterval diff = xi - RealInterval::point(approx, bits + 2);
  if (diff.contains_zero()) return std::nullopt;
  ApproximationError out = est;
  out.exact = true;
  out.log_error = log_abs(diff.midpoint());
  const long double lb = std::log(static_cast<long double>(pt.b));
  const long double la = std::log(static_cast<long double>(pt.a));
  const long double theta = params.slope().value().to_long_double();
  out.normalized = out.log_error + to_long_double(out.exponent) * (lb + theta * la);
  return out;
}

OracleResult oracle_cf(SturmianParams& params, const BasePoint& pt, std::size_t n, const std::optional<Rational>& head,
                       long start_bits, long max_bits) {
  validate(pt);
  const Int b(pt.b), a(pt.a);
  OracleResult out;
  for (long bits = std::min(start_bits, max_bits);; bits = std::min(2 * bits, max_bits)) {
    const RealInterval xs = eval_to_precision(params, {b, a}, bits).value;
    out.xi = Rational(b - 1) * xs;
    out.bits = bits;
    RealInterval y = out.xi;
    if (head) {
      check(!out.xi.contains_zero(), "oracle value encloses zero");
      y = out.xi.inverse() - RealInterval::point(*head, bits + 8);
    }
    const CfExtraction cf = cf_extract(y, n);
    out.quotients = cf.quotients;
    out.certified = cf.certified_count;
    if (out.certified >= n || bits >= max_bits) return out;
  }
}

}  // namespace hecke
