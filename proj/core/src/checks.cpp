#include "hecke/checks.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "hecke/approximants.hpp"
#include "hecke/errors.hpp"
#include "hecke/modular.hpp"
#include "hecke/parse.hpp"
#include "hecke/words.hpp"

namespace hecke {

namespace {

const std::vector<std::string> kGridSlopes = {"per:[;1]", "per:[;2]", "per:[;3]", "surd:(-3,13,2)"};
const std::vector<std::string> kGridDigits = {"rho:digits[]", "rho:digits[1]", "rho:digits[0,2]"};
const std::vector<BasePoint> kGridPoints = {{2, 1}, {2, 3}, {3, 3}};

bool admissible(const std::string& slope, const std::string& intercept) {
  try {
    parse_intercept(intercept, parse_slope(slope));
    return true;
  } catch (const InvalidInput&) {
    return false;
  }
}

SturmianParams make_params(const SuiteCase& c) {
  const SlopeSpec s = parse_slope(c.slope);
  return SturmianParams(s, parse_intercept(c.intercept, s));
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

struct Outcome {
  bool pass;
  bool partial;
  std::string detail;
};

// Certifying A_1..A_N needs roughly 2 log2 Q_{N+1} bits; the log-domain stream
// estimates that before any exact work is done.
long double oracle_bits_needed(const SuiteCase& c, std::size_t N) {
  LogQuotientStream ls(make_params(c), c.pt);
  const std::size_t count = N + 1 + (is_improper(c.pt) ? 1 : 0);
  long double sum = 0;
  for (long double x : ls.take(count)) sum += std::max(0.0L, x) / std::log(2.0L);
  return 2 * sum + 64;
}

Outcome check_oracle(const SuiteCase& c, const SuiteOptions& opt) {
  SturmianParams P = make_params(c);
  const std::size_t N = opt.oracle_terms;
  const long double need = oracle_bits_needed(c, N);
  const bool feasible = need <= static_cast<long double>(opt.oracle_max_bits);
  std::optional<Rational> head;
  if (is_improper(c.pt)) {
    PartialQuotientStream s(make_params(c), c.pt);
    head = s.head();
  }
  const OracleResult orc = oracle_cf(P, c.pt, N, head, opt.oracle_start_bits, opt.oracle_max_bits);
  const std::size_t n = std::min(orc.certified, N);
  const ExpansionResult ex = expand_xi(make_params(c), c.pt, feasible ? N : n);
  for (const CaseLogEntry& e : ex.case_log) check_case_preconditions(P, e);
  for (std::size_t i = 0; i < n; ++i)
    if (orc.quotients[i] != ex.A[i])
      return {false, false,
              "mismatch at position " + std::to_string(i + 1) + ": stream " + ex.A[i].get_str() + ", oracle " +
                  orc.quotients[i].get_str()};
  std::string d = std::to_string(n) + "/" + std::to_string(N) + " certified positions match at " +
                  std::to_string(orc.bits) + " bits";
  if (ex.improper) d += " (improper head " + to_string(*ex.head) + ")";
  if (!feasible)
    return {true, true, d + "; all " + std::to_string(N) + " need about 2^" +
                            fmt(static_cast<double>(std::log2(need))) + " bits, beyond the cap"};
  return {orc.certified >= N, false, d};
}

// Deepest k <= K whose words through k+1 fit in max_len.
std::size_t word_depth(SturmianParams& P, std::size_t K, std::size_t max_len) {
  std::size_t k = 0;
  while (k < K && P.q(static_cast<long>(k) + 2) <= Int(static_cast<unsigned long>(max_len))) ++k;
  return k;
}

// Deepest k <= K whose exact integers stay below the exponent budget.
std::size_t exact_depth(SturmianParams& P, std::size_t K, unsigned long budget) {
  std::size_t k = 0;
  while (k < K && P.q(static_cast<long>(k) + 2) + P.q(static_cast<long>(k) + 1) <= Int(budget)) ++k;
  return k;
}

std::string modular_tail(std::size_t kx, std::size_t K) {
  return kx < K ? ", modulo " + std::to_string(kFingerprintPrimes.size()) + " primes for k <= " + std::to_string(K) +
                      " (exact integers beyond k = " + std::to_string(kx) + " exceed the size budget)"
                : "";
}

Outcome check_fractions(const SuiteCase& c, const SuiteOptions& opt) {
  SturmianParams P = make_params(c);
  const std::size_t K = opt.family_depth;
  const std::size_t kx = exact_depth(P, K, opt.exact_max_exponent);
  const std::vector<ElementQuad> quads = element_quads(P, c.pt, kx);
  const std::vector<FractionFamily> chain = farey_chain(quads, c.pt);
  const MatrixConvergents mc = matrix_convergents(raw_stream(quads), c.pt.b);
  for (std::size_t k = 0; k <= kx; ++k) {
    const auto cyc = chain[k].cycle();
    for (std::size_t i = 0; i < 5; ++i) {
      const long j = static_cast<long>(5 * k + i + 1);
      if (Rational(cyc[i]->num) != mc.p(j) || Rational(cyc[i]->den) != mc.q(j))
        return {false, false, std::string("matrix product differs from Farey chain at ") + kFamilyNames[i] + "_" +
                           std::to_string(k)};
    }
  }
  const std::size_t Kw = kx;
  const std::vector<FractionFamily> words = fraction_families(P, c.pt, Kw, opt.word_max_len);
  for (std::size_t k = 0; k <= Kw; ++k)
    if (!(words[k] == chain[k])) return {false, false, "word values differ from Farey chain at k = " + std::to_string(k)};
  if (kx < K)
    for (unsigned long p : kFingerprintPrimes)
      if (const ModularOutcome m = fraction_routes_mod(P, c.pt, K, p); !m.ok) return {false, false, m.failure};
  return {true, Kw < K, "Farey chain = matrix products for k <= " + std::to_string(kx) + ", = word values for k <= " +
                            std::to_string(Kw) + " (letter by letter for k <= " +
                            std::to_string(word_depth(P, Kw, opt.word_max_len)) + ")" + modular_tail(kx, K)};
}

Outcome check_identities(const SuiteCase& c, const SuiteOptions& opt) {
  SturmianParams P = make_params(c);
  const std::size_t K = opt.family_depth;
  const std::size_t kx = exact_depth(P, K, opt.exact_max_exponent);
  const SigmaGamma sg = sigma_gamma(P, c.pt, kx + 1, opt.word_max_len);
  const std::vector<FractionFamily> chain = farey_chain(element_quads(P, c.pt, kx), c.pt);
  const WordFamily words = build_word_family_capped(P, kx, opt.word_max_len);
  std::size_t periodic = 0;
  for (std::size_t k = 0; k <= kx; ++k) {
    if (!telescoped_identity(P, c.pt, sg, k)) return {false, false, "telescoped sigma identity fails at k = " + std::to_string(k)};
    if (!identity_difference(P, c.pt, k, chain)) return {false, false, "(3)_k - (4)_{k-1} identity fails at k = " + std::to_string(k)};
    if (k >= 1 && static_cast<long>(k) <= words.depth()) {
      if (!sigma_period_identity(sg, c.pt, k, words, chain))
        return {false, false, "sigma_k / (1 - gamma_k) identity fails at k = " + std::to_string(k)};
      ++periodic;
    }
  }
  if (kx < K)
    for (unsigned long p : kFingerprintPrimes)
      if (const ModularOutcome m = identities_mod(P, c.pt, K, p); !m.ok) return {false, false, m.failure};
  return {true, kx < K, "exact for k <= " + std::to_string(kx) + " (periodic-word form for " + std::to_string(periodic) +
                            " indices)" + modular_tail(kx, K)};
}

Outcome check_series(const SuiteCase& c, const SuiteOptions& opt) {
  SturmianParams P = make_params(c);
  const SeriesValue d = eval_to_precision(P, {Int(c.pt.b), Int(c.pt.a)}, opt.fast_bits);
  const SeriesValue f = eval_fast(P, c.pt, opt.fast_K, opt.fast_bits);
  const double w = std::log10(std::pow(10.0, d.value.log10_width()) + std::pow(10.0, f.value.log10_width()));
  const bool ok = d.value.intersects(f.value) && w <= std::log10(opt.fast_tolerance);
  return {ok, false, std::string(d.value.intersects(f.value) ? "intervals intersect" : "intervals disjoint") +
                  ", combined width 10^" + fmt(w)};
}

Outcome check_words(const SuiteCase& c, const SuiteOptions& opt) {
  SturmianParams P = make_params(c);
  const WordFamily w = build_word_family_capped(P, 200, opt.word_max_len);
  const auto rho = P.exact_intercept();
  for (long k = 0; k <= w.depth(); ++k) {
    const std::size_t kk = static_cast<std::size_t>(k);
    const BinaryWord& V = w.V(k);
    if (Int(static_cast<unsigned long>(V.size())) != P.q(k) || Int(static_cast<unsigned long>(V.ones())) != P.p(k))
      return {false, false, "|V_k| or ones(V_k) wrong at k = " + std::to_string(k)};
    if (!(w.M(k) == concat(w.T(k), w.R(k)))) return {false, false, "M_k != T_k R_k at k = " + std::to_string(k)};
    if (k >= 1 && k + 1 <= w.depth()) {
      BinaryWord rec = power(V, P.gap(kk + 1));
      rec.append(w.V(k - 1)).append_power(V, P.b(kk + 1));
      if (!(rec == w.V(k + 1))) return {false, false, "V recursion fails at k = " + std::to_string(k + 1)};
    }
    if (rho && V.size() >= 2) {
      const std::size_t n = V.size() - 1;
      const BinaryWord lower = sturmian_prefix_numeric(P.slope(), *rho, n, Variant::lower);
      const BinaryWord upper = sturmian_prefix_numeric(P.slope(), *rho, n, Variant::upper);
      if (!(lower == V.prefix(n)) && !(upper == V.prefix(n)))
        return {false, false, "V_k prefix differs from the Sturmian word at k = " + std::to_string(k)};
    }
  }
  return {true, false, "k <= " + std::to_string(w.depth()) + " (q_k <= " + std::to_string(opt.word_max_len) + ")" +
                    (rho ? "" : ", prefix agreement skipped: intercept outside the slope's field")};
}

Outcome check_exponents(const SuiteCase& c, const SuiteOptions& opt) {
  SturmianParams P = make_params(c);
  const ExponentReport f = exponent_by_formula(P, opt.exponent_K);
  LogQuotientStream s(make_params(c), c.pt);
  const ExponentReport g = exponent_by_convergents(s, opt.exponent_J, c.pt.b, opt.exponent_J / 2);
  if (!f.estimate || !g.estimate) return {false, false, "no estimate in the tail window"};
  const double diff = std::fabs(static_cast<double>(*f.estimate - *g.estimate));
  return {diff <= opt.exponent_tolerance, false, "formula " + fmt(static_cast<double>(*f.estimate)) + ", convergents " +
                                             fmt(static_cast<double>(*g.estimate)) + ", difference " + fmt(diff)};
}

Outcome check_errors(const SuiteCase& c, const SuiteOptions& opt) {
  SturmianParams P = make_params(c);
  std::string detail;
  bool ok = true;
  std::size_t exact_checked = 0;
  for (int family : {4, 3}) {
    long double lo = INFINITY, hi = -INFINITY;
    for (std::size_t k = opt.error_k_min; k <= opt.error_k_max; ++k) {
      const ApproximationError e = approximation_error(P, c.pt, family, k);
      lo = std::min(lo, e.normalized);
      hi = std::max(hi, e.normalized);
      if (const auto x = approximation_error_exact(P, c.pt, family, k, opt.error_exact_max_bits)) {
        ++exact_checked;
        if (std::fabs(static_cast<double>(x->normalized - e.normalized)) > 1e-6)
          return {false, false, "series and certified routes disagree for (" + std::to_string(family) + ") at k = " +
                             std::to_string(k)};
      }
    }
    const double band = static_cast<double>(hi - lo);
    ok = ok && band <= opt.error_band;
    detail += std::string(detail.empty() ? "" : ", ") + "band(" + std::to_string(family) + ") = " + fmt(band);
  }
  return {ok, false, detail + ", " + std::to_string(exact_checked) + " points certified"};
}

Outcome check_functional(const SuiteCase& c, const SuiteOptions& opt) {
  SturmianParams P = make_params(c);
  double worst = -INFINITY;
  for (std::size_t m = 1; m <= opt.fe_max_m; ++m) {
    const FunctionalEquationReport r = verify_functional_equation(P, c.pt, m, opt.fe_bits);
    const double w = r.residual.log10_width();
    worst = std::max(worst, w);
    if (!r.contains_zero()) return {false, false, "residual excludes 0 at m = " + std::to_string(m)};
    if (w > std::log10(opt.fe_tolerance)) return {false, false, "residual too wide at m = " + std::to_string(m)};
  }
  return {true, false, "m <= " + std::to_string(opt.fe_max_m) + ", widest residual 10^" + fmt(worst)};
}

using CheckFn = Outcome (*)(const SuiteCase&, const SuiteOptions&);
const std::vector<std::pair<const char*, CheckFn>> kChecks = {
    {kCheckWords, check_words},         {kCheckFractions, check_fractions}, {kCheckIdentities, check_identities},
    {kCheckSeries, check_series},       {kCheckFunctional, check_functional}, {kCheckExponent, check_exponents},
    {kCheckErrors, check_errors},       {kCheckOracle, check_oracle},
};

}  // namespace

std::string SuiteCase::name() const {
  return slope + " " + intercept + " b=" + std::to_string(pt.b) + " a=" + std::to_string(pt.a);
}

std::vector<SuiteCase> default_grid() {
  std::vector<SuiteCase> out;
  for (const auto& s : kGridSlopes)
    for (const auto& d : kGridDigits)
      if (admissible(s, d))
        for (const BasePoint& pt : kGridPoints) out.push_back({s, d, pt});
  return out;
}

std::vector<SuiteCase> a1_grid() {
  std::vector<SuiteCase> out;
  for (const auto& s : kGridSlopes)
    for (const auto& d : kGridDigits)
      if (admissible(s, d))
        for (unsigned long b : {2ul, 3ul}) out.push_back({s, d, {b, 1}});
  return out;
}

std::vector<SuiteCase> quick_grid() {
  std::vector<SuiteCase> out;
  for (const auto& s : kGridSlopes) out.push_back({s, "rho:digits[]", {2, 3}});
  return out;
}

std::vector<SuiteCase> fuzz_grid(unsigned long seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::vector<SuiteCase> out;
  while (out.size() < count) {
    const std::string& s = kGridSlopes[rng() % kGridSlopes.size()];
    const SlopeSpec slope = parse_slope(s);
    Convergents conv(slope, 8);
    std::vector<std::uint64_t> digits(1 + rng() % 6);
    for (std::size_t k = 1; k <= digits.size(); ++k) {
      const std::uint64_t top = k == 1 ? conv.a(1) - 1 : conv.a(k);
      digits[k - 1] = rng() % (top + 1);
      if (k >= 2 && digits[k - 1] == conv.a(k)) digits[k - 2] = 0;
    }
    if (!validate_digits(slope, digits)) continue;
    std::string d = "rho:digits[";
    for (std::size_t i = 0; i < digits.size(); ++i) d += (i ? "," : "") + std::to_string(digits[i]);
    out.push_back({s, d + "]", {2 + rng() % 3, 1 + rng() % 4}});
  }
  return out;
}

bool CaseReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& r) { return r.pass; });
}

const CheckResult* CaseReport::find(const std::string& name) const {
  for (const CheckResult& r : checks)
    if (r.name == name) return &r;
  return nullptr;
}

CaseReport run_case(const SuiteCase& c, const SuiteOptions& opt, const std::vector<std::string>& only) {
  CaseReport rep{c, {}};
  for (const auto& [name, fn] : kChecks) {
    if (!only.empty() && std::find(only.begin(), only.end(), name) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    CheckResult r;
    r.name = name;
    try {
      const Outcome o = fn(c, opt);
      r.pass = o.pass;
      r.partial = o.partial;
      r.detail = o.detail;
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rep.checks.push_back(std::move(r));
  }
  return rep;
}

std::vector<CaseReport> run_suite(const std::vector<SuiteCase>& cases, const SuiteOptions& opt, unsigned jobs,
                                  const std::vector<std::string>& only) {
  std::vector<CaseReport> out(cases.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < cases.size(); i = next++) out[i] = run_case(cases[i], opt, only);
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(cases.size(), 1))));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

std::string a1_fixture(const SuiteCase& c, std::size_t K, std::size_t N) {
  SturmianParams P = make_params(c);
  while (K > 1 && P.q(static_cast<long>(K) + 1) > 4096) --K;
  {
    LogQuotientStream ls(make_params(c), c.pt);
    long double total = 0;
    std::size_t n = 0;
    for (long double x : ls.take(N + 1)) {
      total += x / std::log(2.0L);
      if (total > 32768) break;
      ++n;
    }
    N = std::min(N, n);
  }
  std::ostringstream os;
  os << "case " << c.name() << "\n";
  os << "digits k a b t r t~ r~\n";
  for (std::size_t k = 1; k <= K; ++k)
    os << k << " " << P.a(k) << " " << P.b(k) << " " << P.t(k) << " " << P.r(k) << " " << P.t_tilde(k) << " "
       << P.r_tilde(k) << "\n";
  const std::vector<ElementQuad> quads = element_quads(P, c.pt, K);
  os << "quads k c d e f\n";
  for (std::size_t k = 0; k <= K; ++k)
    os << k << " " << to_string(quads[k].c) << " " << quads[k].d << " " << quads[k].e << " " << quads[k].f << "\n";
  const ExpansionResult ex = expand_xi(P, c.pt, N);
  os << "improper " << (ex.improper ? 1 : 0) << "\n";
  if (ex.head) os << "head " << to_string(*ex.head) << "\n";
  os << "A";
  for (const Int& x : ex.A) os << " " << x;
  os << "\ncase_log\n";
  for (const CaseLogEntry& e : ex.case_log) {
    os << e.rule << " " << e.k;
    for (const RawTag& t : e.zeros) os << " " << slot_name(t.slot) << "_" << t.k;
    os << "\n";
  }
  os << "families k (1) (2)-(1) (2) (3) (4)\n";
  const std::vector<FractionFamily> chain = farey_chain(quads, c.pt);
  for (std::size_t k = 0; k <= K; ++k) {
    os << k;
    for (const ExactFraction* f : chain[k].cycle()) os << " " << f->to_string();
    os << "\n";
  }
  return os.str();
}

std::string fixture_file_name(const SuiteCase& c) {
  std::string out;
  for (char ch : c.slope + "_" + c.intercept.substr(c.intercept.find(':') + 1)) {
    if (std::isalnum(static_cast<unsigned char>(ch)))
      out += ch;
    else if (ch == '-')
      out += 'm';
    else if (out.empty() || out.back() != '_')
      out += '_';
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out + "_b" + std::to_string(c.pt.b) + "a" + std::to_string(c.pt.a) + ".txt";
}

}  // namespace hecke
