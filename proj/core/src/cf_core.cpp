#include "hecke/cf_core.hpp"

#include <algorithm>

#include "hecke/errors.hpp"

namespace hecke {

namespace {

// Value of the purely periodic continued fraction [c_1; c_2, ..., c_n, c_1, ...] > 1.
QuadraticNumber purely_periodic_value(const std::vector<std::uint64_t>& period) {
  Int h1 = 1, h0 = 0, k1 = 0, k0 = 1;  // h_{j}, h_{j-1}, k_{j}, k_{j-1}
  for (auto c : period) {
    Int h = Int(static_cast<unsigned long>(c)) * h1 + h0;
    Int k = Int(static_cast<unsigned long>(c)) * k1 + k0;
    h0 = h1;
    h1 = h;
    k0 = k1;
    k1 = k;
  }
  // y = (h1 y + h0) / (k1 y + k0)  =>  k1 y^2 + (k0 - h1) y - h0 = 0.
  const Int disc = (k0 - h1) * (k0 - h1) + 4 * k1 * h0;
  Rational r(h1 - k0, 2 * k1);
  r.canonicalize();
  Rational s(1, 2 * k1);
  s.canonicalize();
  return QuadraticNumber(r, s, disc);
}

Int floor_surd(const Int& P, const Int& D, const Int& Q) {
  if (sgn(Q) > 0) return floor_quadratic(P, 1, D, Q);
  return floor_quadratic(-P, -1, D, -Q);
}

}  // namespace

SlopeSpec SlopeSpec::periodic(std::vector<std::uint64_t> prefix, std::vector<std::uint64_t> period) {
  if (period.empty()) throw InvalidInput("periodic slope needs a non-empty period");
  for (auto v : prefix)
    if (v == 0) throw InvalidInput("partial quotients must be positive");
  for (auto v : period)
    if (v == 0) throw InvalidInput("partial quotients must be positive");
  SlopeSpec s;
  s.kind_ = Kind::periodic;
  s.prefix_ = std::move(prefix);
  s.period_ = std::move(period);
  const QuadraticNumber y = purely_periodic_value(s.period_);
  // theta = [0; prefix, y] = (p_m y + p_{m-1}) / (q_m y + q_{m-1}).
  Int p1 = 0, p0 = 1, q1 = 1, q0 = 0;
  for (auto c : s.prefix_) {
    Int p = Int(static_cast<unsigned long>(c)) * p1 + p0;
    Int q = Int(static_cast<unsigned long>(c)) * q1 + q0;
    p0 = p1;
    p1 = p;
    q0 = q1;
    q1 = q;
  }
  const QuadraticNumber num = QuadraticNumber::rational(Rational(p1)) * y + QuadraticNumber::rational(Rational(p0));
  const QuadraticNumber den = QuadraticNumber::rational(Rational(q1)) * y + QuadraticNumber::rational(Rational(q0));
  s.value_ = num / den;
  return s;
}

SlopeSpec SlopeSpec::surd(const Int& P, const Int& D, const Int& Q) {
  if (Q == 0) throw InvalidInput("surd slope with Q = 0");
  if (sgn(D) <= 0 || is_square(D)) throw InvalidInput("surd slope needs a positive non-square D");
  SlopeSpec s;
  s.kind_ = Kind::surd;
  s.P_ = P;
  s.D_ = D;
  s.Q_ = Q;
  if ((D - P * P) % Q != 0) {
    const Int aq = abs(Q);
    s.D_ = D * Q * Q;
    s.P_ = P * aq;
    s.Q_ = Q * aq;
  }
  s.value_ = QuadraticNumber::surd(s.P_, s.D_, s.Q_);
  if (s.value_.sign() <= 0 || s.value_.floor() != 0) throw InvalidInput("surd slope must lie in (0,1)");
  return s;
}

SlopeCursor SlopeSpec::cursor() const { return SlopeCursor(*this); }

SlopeSpec SlopeSpec::shifted(std::size_t m) const {
  if (kind_ == Kind::periodic) {
    if (m < prefix_.size()) {
      return periodic(std::vector<std::uint64_t>(prefix_.begin() + static_cast<long>(m), prefix_.end()), period_);
    }
    const std::size_t r = (m - prefix_.size()) % period_.size();
    std::vector<std::uint64_t> rotated(period_.begin() + static_cast<long>(r), period_.end());
    rotated.insert(rotated.end(), period_.begin(), period_.begin() + static_cast<long>(r));
    return periodic({}, rotated);
  }
  SlopeCursor c = cursor();
  for (std::size_t i = 0; i < m; ++i) c.next();
  const auto [P, Q] = c.surd_state();
  return surd(P, D_, Q);
}

std::string SlopeSpec::to_string() const {
  if (kind_ == Kind::surd) return "surd:(" + P_.get_str() + "," + D_.get_str() + "," + Q_.get_str() + ")";
  std::string out = "per:[";
  for (std::size_t i = 0; i < prefix_.size(); ++i) out += (i ? "," : "") + std::to_string(prefix_[i]);
  out += ";";
  for (std::size_t i = 0; i < period_.size(); ++i) out += (i ? "," : "") + std::to_string(period_[i]);
  return out + "]";
}

SlopeCursor::SlopeCursor(const SlopeSpec& slope) : slope_(slope) { reset(); }

void SlopeCursor::reset() {
  position_ = 0;
  P_ = slope_.surd_P();
  Q_ = slope_.surd_Q();
  D_ = slope_.surd_D();
}

std::uint64_t SlopeCursor::next() {
  ++position_;
  if (slope_.kind() == SlopeSpec::Kind::periodic) {
    const auto& pre = slope_.prefix();
    const auto& per = slope_.period();
    const std::size_t i = position_ - 1;
    return i < pre.size() ? pre[i] : per[(i - pre.size()) % per.size()];
  }
  // Remainder y = (P + sqrt D)/Q in (0,1); 1/y = (-P + sqrt D) / ((D - P^2)/Q).
  const Int P1 = -P_;
  const Int Q1 = (D_ - P_ * P_) / Q_;
  const Int a = floor_surd(P1, D_, Q1);
  check(a >= 1 && a.fits_ulong_p(), "surd partial quotient out of range");
  P_ = P1 - a * Q1;
  Q_ = Q1;
  return a.get_ui();
}

std::optional<SurdCycle> detect_cycle(const SlopeSpec& slope, std::size_t max_steps) {
  SlopeCursor c = slope.cursor();
  std::map<std::pair<Int, Int>, std::size_t> seen;
  for (std::size_t i = 0; i <= max_steps; ++i) {
    auto state = c.surd_state();
    auto [it, inserted] = seen.emplace(state, i);
    if (!inserted) return SurdCycle{it->second, i - it->second};
    c.next();
  }
  return std::nullopt;
}

Convergents::Convergents(const SlopeSpec& slope, std::size_t depth)
    : slope_(slope), cursor_(slope), a_{0}, p_{1, 0}, q_{0, 1} {
  extend(depth);
}

void Convergents::extend(std::size_t depth) {
  while (a_.size() <= depth) {
    const std::uint64_t a = cursor_.next();
    const std::size_t n = p_.size();
    a_.push_back(a);
    Int pk = Int(static_cast<unsigned long>(a)) * p_[n - 1] + p_[n - 2];
    Int qk = Int(static_cast<unsigned long>(a)) * q_[n - 1] + q_[n - 2];
    p_.push_back(std::move(pk));
    q_.push_back(std::move(qk));
  }
}

QuadraticNumber Convergents::delta(long k) const {
  return QuadraticNumber::rational(Rational(q(k))) * slope_.value() - QuadraticNumber::rational(Rational(p(k)));
}

Convergents convergents(const SlopeSpec& slope, std::size_t K) { return Convergents(slope, K); }

RealInterval theta_interval(const SlopeSpec& slope, long bits) {
  if (bits < 8) throw InvalidInput("theta_interval needs at least 8 bits");
  Convergents c(slope, 2);
  const Rational target = pow2(-(bits + 1));
  std::size_t K = 1;
  for (;; ++K) {
    c.extend(K + 1);
    if (Rational(1, c.q(static_cast<long>(K)) * c.q(static_cast<long>(K + 1))) <= target) break;
  }
  Rational x(c.p(static_cast<long>(K)), c.q(static_cast<long>(K)));
  Rational y(c.p(static_cast<long>(K + 1)), c.q(static_cast<long>(K + 1)));
  x.canonicalize();
  y.canonicalize();
  if (x > y) std::swap(x, y);
  return RealInterval::enclose(x, y, bits + 2);
}

CfExtraction cf_extract(const Rational& lo, const Rational& hi, std::size_t max_terms) {
  CfExtraction out;
  if (lo > hi || sgn(lo) <= 0 || hi >= 1) return out;
  // Endpoints as unreduced fractions ln/ld <= hn/hd; the map x -> 1/x - A swaps them.
  Int ln = lo.get_num(), ld = lo.get_den(), hn = hi.get_num(), hd = hi.get_den();
  while (out.quotients.size() < max_terms) {
    if (sgn(ln) <= 0) break;
    Int a_hi, r_hi, a_lo, r_lo;
    mpz_fdiv_qr(a_lo.get_mpz_t(), r_lo.get_mpz_t(), hd.get_mpz_t(), hn.get_mpz_t());  // floor(1/hi)
    mpz_fdiv_qr(a_hi.get_mpz_t(), r_hi.get_mpz_t(), ld.get_mpz_t(), ln.get_mpz_t());  // floor(1/lo)
    if (a_lo != a_hi || sgn(a_lo) <= 0) break;
    out.quotients.push_back(a_lo);
    // New interval [1/hi - A, 1/lo - A] = [r_lo/hn, r_hi/ln].
    Int nln = std::move(r_lo), nld = std::move(hn), nhn = std::move(r_hi), nhd = std::move(ln);
    ln = std::move(nln);
    ld = std::move(nld);
    hn = std::move(nhn);
    hd = std::move(nhd);
    if (sgn(hn) == 0) break;
  }
  out.certified_count = out.quotients.size();
  return out;
}

CfExtraction cf_extract(const RealInterval& value, std::size_t max_terms) {
  return cf_extract(value.lower(), value.upper(), max_terms);
}

}  // namespace hecke
