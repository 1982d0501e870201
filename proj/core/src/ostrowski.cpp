#include "hecke/ostrowski.hpp"

#include "hecke/errors.hpp"

namespace hecke {

namespace {

QuadraticNumber q_of(const Int& x) { return QuadraticNumber::rational(Rational(x)); }

std::string join_digits(const std::vector<std::uint64_t>& d) {
  std::string out;
  for (std::size_t i = 0; i < d.size(); ++i) out += (i ? "," : "") + std::to_string(d[i]);
  return out;
}

}  // namespace

InterceptSpec InterceptSpec::numeric(QuadraticNumber rho, bool any_real) {
  if (!any_real && (rho.sign() < 0 || rho.floor() != 0)) throw InvalidInput("intercept must satisfy 0 <= rho < 1");
  InterceptSpec s;
  s.kind_ = Kind::numeric;
  s.value_ = std::move(rho);
  return s;
}

InterceptSpec InterceptSpec::formal(std::vector<std::uint64_t> digits) {
  InterceptSpec s;
  s.kind_ = Kind::formal;
  s.digits_ = std::move(digits);
  while (!s.digits_.empty() && s.digits_.back() == 0) s.digits_.pop_back();
  return s;
}

InterceptSpec InterceptSpec::formal(Generator gen, std::string label) {
  InterceptSpec s;
  s.kind_ = Kind::formal;
  s.gen_ = std::move(gen);
  s.label_ = std::move(label);
  return s;
}

std::uint64_t InterceptSpec::formal_digit(std::size_t k) const {
  if (gen_) return gen_(k);
  return k >= 1 && k <= digits_.size() ? digits_[k - 1] : 0;
}

std::string InterceptSpec::to_string() const {
  if (kind_ == Kind::formal) return gen_ ? "rho:generator(" + label_ + ")" : "rho:digits[" + join_digits(digits_) + "]";
  if (value_.is_rational()) return "rho:rat(" + hecke::to_string(value_.rational_part()) + ")";
  // r + s sqrt(D) = (P + sqrt(D')) / Q with Q = 1/s when s = 1/Q, otherwise scale into the radicand.
  const Rational& r = value_.rational_part();
  const Rational& s = value_.irrational_part();
  const Int Q = s.get_den() * r.get_den();
  const Int P = r.get_num() * s.get_den();
  const Int n = s.get_num() * r.get_den();
  const Int D = n * n * value_.radicand();
  if (sgn(n) > 0) return "rho:surd(" + P.get_str() + "," + D.get_str() + "," + Q.get_str() + ")";
  return "rho:surd(" + Int(-P).get_str() + "," + D.get_str() + "," + Int(-Q).get_str() + ")";
}

SturmianParams::SturmianParams(SlopeSpec slope, InterceptSpec intercept, DigitOptions options)
    : slope_(std::move(slope)), intercept_(std::move(intercept)), options_(options), conv_(slope_, 1) {
  if (intercept_.kind() == InterceptSpec::Kind::numeric) {
    rho_in_field_ = intercept_.value().in_field(slope_.value().radicand());
  }
}

std::optional<QuadraticNumber> SturmianParams::exact_intercept() const {
  if (intercept_.kind() == InterceptSpec::Kind::numeric) return rho_in_field_;
  if (intercept_.has_generator()) return std::nullopt;
  return intercept_from_digits(slope_, intercept_.digits());
}

void SturmianParams::ensure(std::size_t k) {
  while (b_.size() <= k) extend_one();
}

std::uint64_t SturmianParams::next_numeric_digit(std::size_t j) {
  // Digit b_{j+1}: with y = x_j / delta_j, b = max(0, floor(y - theta_{j+1}) + 1), and
  // y - theta_{j+1} = (x_j + delta_{j+1}) / delta_j.
  conv_.extend(j + 1);
  const long jj = static_cast<long>(j);
  const Int& pj = conv_.p(jj);
  const Int& qj = conv_.q(jj);
  const Int U1 = U_ - conv_.p(jj + 1);
  const Int V1 = V_ + conv_.q(jj + 1);
  const QuadraticNumber& theta = slope_.value();
  Int z_floor;
  if (rho_in_field_) {
    const QuadraticNumber delta = q_of(qj) * theta - q_of(pj);
    const QuadraticNumber z = (*rho_in_field_ + q_of(U1) + q_of(V1) * theta) / delta;
    const QuadraticNumber x_plus_delta = *rho_in_field_ + q_of(U_ - pj) + q_of(V_ + qj) * theta;
    if (z.is_integer() || x_plus_delta.sign() == 0)
      throw UndecidableDigit("intercept lies on an Ostrowski digit boundary at index " + std::to_string(j + 1) +
                             "; supply formal digits instead");
    z_floor = z.floor();
  } else {
    long bits = 64 + 2 * static_cast<long>(mpz_sizeinbase(conv_.q(jj + 1).get_mpz_t(), 2));
    for (;;) {
      const RealInterval th = theta.enclose(bits);
      const RealInterval rh = intercept_.value().enclose(bits);
      const RealInterval num = rh + (Rational(U1) + Rational(V1) * th);
      const RealInterval delta = Rational(qj) * th + RealInterval::point(Rational(-pj), bits);
      if (!delta.contains_zero()) {
        const RealInterval z = num / delta;
        const Int lo = floor(z.lower());
        if (lo == floor(z.upper())) {
          z_floor = lo;
          break;
        }
      }
      if (bits >= options_.max_bits)
        throw UndecidableDigit("Ostrowski digit " + std::to_string(j + 1) + " undecided at " +
                               std::to_string(options_.max_bits) + " bits");
      bits = std::min(options_.max_bits, 2 * bits);
    }
  }
  Int b = z_floor + 1;
  if (sgn(b) < 0) b = 0;
  const std::uint64_t a_next = conv_.a(j + 1);
  const Int limit = j == 0 ? Int(static_cast<unsigned long>(a_next - 1)) : Int(static_cast<unsigned long>(a_next));
  check(b <= limit, "greedy Ostrowski digit exceeds its bound");
  U_ += b * pj;
  V_ -= b * qj;
  return b.get_ui();
}

void SturmianParams::extend_one() {
  const std::size_t k = b_.size();  // computing index k >= 1
  conv_.extend(k + 1);
  std::uint64_t bk;
  if (intercept_.kind() == InterceptSpec::Kind::numeric) {
    bk = next_numeric_digit(k - 1);
  } else {
    bk = intercept_.formal_digit(k);
  }
  const std::uint64_t ak = conv_.a(k);
  if (k == 1 ? bk > ak - 1 : bk > ak) throw InvalidInput("digit b_" + std::to_string(k) + " exceeds its admissible bound");
  if (k >= 2 && bk == ak && b_[k - 1] != 0)
    throw InvalidInput("digit b_" + std::to_string(k) + " = a_" + std::to_string(k) + " requires b_" +
                       std::to_string(k - 1) + " = 0");
  b_.push_back(bk);
  const long km = static_cast<long>(k) - 1;
  const Int bb = Int(static_cast<unsigned long>(bk));
  t_.push_back(t_[k - 1] + bb * conv_.q(km));
  tt_.push_back(tt_[k - 1] + bb * conv_.p(km));
  const Int coef = Int(static_cast<unsigned long>(ak)) - bb - 1;
  r_.push_back(r_[k - 1] + coef * conv_.q(km) + conv_.q(km - 1));
  rt_.push_back(rt_[k - 1] + coef * conv_.p(km) + conv_.p(km - 1));
  const Int& qk = conv_.q(static_cast<long>(k));
  const Int& pk = conv_.p(static_cast<long>(k));
  check(r_[k] + t_[k] == qk && rt_[k] + tt_[k] == pk, "r_k + t_k = q_k failed");
  check(sgn(t_[k]) >= 0 && t_[k] < qk && sgn(tt_[k]) >= 0 && tt_[k] <= pk, "t_k range");
  check(r_[k] >= 1 && r_[k] <= qk && sgn(rt_[k]) >= 0 && rt_[k] <= pk, "r_k range");
}

OstrowskiDigits SturmianParams::snapshot(std::size_t K) {
  ensure(K);
  OstrowskiDigits d;
  d.b.assign(b_.begin(), b_.begin() + static_cast<long>(K + 1));
  d.t.assign(t_.begin(), t_.begin() + static_cast<long>(K + 1));
  d.t_tilde.assign(tt_.begin(), tt_.begin() + static_cast<long>(K + 1));
  d.r.assign(r_.begin(), r_.begin() + static_cast<long>(K + 1));
  d.r_tilde.assign(rt_.begin(), rt_.begin() + static_cast<long>(K + 1));
  return d;
}

bool validate_digits(const SlopeSpec& slope, const std::vector<std::uint64_t>& digits) {
  Convergents c(slope, digits.size() + 1);
  for (std::size_t k = 1; k <= digits.size(); ++k) {
    const std::uint64_t bk = digits[k - 1];
    const std::uint64_t ak = c.a(k);
    if (k == 1 ? bk > ak - 1 : bk > ak) return false;
    if (k >= 2 && bk == ak && digits[k - 2] != 0) return false;
  }
  return true;
}

OstrowskiDigits digits_from_intercept(const SlopeSpec& slope, const InterceptSpec& rho, std::size_t K,
                                      DigitOptions options) {
  if (rho.kind() != InterceptSpec::Kind::numeric) throw InvalidInput("digits_from_intercept needs a numeric intercept");
  if (K < 1) throw InvalidInput("K must be at least 1");
  SturmianParams params(slope, rho, options);
  return params.snapshot(K);
}

void derived_sequences(OstrowskiDigits& d, const Convergents& conv, std::size_t K) {
  check(d.b.size() > K && conv.depth() >= K, "derived_sequences needs digits and convergents through K");
  d.t.assign(K + 1, 0);
  d.t_tilde.assign(K + 1, 0);
  d.r.assign(K + 1, 0);
  d.r_tilde.assign(K + 1, 0);
  d.r[0] = 1;
  for (std::size_t k = 1; k <= K; ++k) {
    Int t = 0, tt = 0;
    for (std::size_t j = 1; j <= k; ++j) {
      t += Int(static_cast<unsigned long>(d.b[j])) * conv.q(static_cast<long>(j) - 1);
      tt += Int(static_cast<unsigned long>(d.b[j])) * conv.p(static_cast<long>(j) - 1);
    }
    d.t[k] = t;
    d.t_tilde[k] = tt;
    const long km = static_cast<long>(k) - 1;
    const Int coef = Int(static_cast<unsigned long>(conv.a(k))) - Int(static_cast<unsigned long>(d.b[k])) - 1;
    d.r[k] = d.r[k - 1] + coef * conv.q(km) + conv.q(km - 1);
    d.r_tilde[k] = d.r_tilde[k - 1] + coef * conv.p(km) + conv.p(km - 1);
    check(d.r[k] == conv.q(static_cast<long>(k)) - d.t[k], "dual route r_k = q_k - t_k failed");
    check(d.r_tilde[k] == conv.p(static_cast<long>(k)) - d.t_tilde[k], "dual route r~_k = p_k - t~_k failed");
  }
}

QuadraticNumber intercept_from_digits(const SlopeSpec& slope, const std::vector<std::uint64_t>& digits) {
  Convergents c(slope, digits.size());
  QuadraticNumber rho = slope.value();
  for (std::size_t k = 0; k < digits.size(); ++k) {
    if (digits[k] == 0) continue;
    rho = rho + q_of(Int(static_cast<unsigned long>(digits[k]))) * c.delta(static_cast<long>(k));
  }
  return rho;
}

std::optional<QuadraticNumber> shifted_intercept_value(SturmianParams& params, std::size_t m) {
  if (m == 0) return params.exact_intercept();
  const auto rho = params.exact_intercept();
  if (!rho) return std::nullopt;
  params.ensure(m);
  Convergents& c = params.convergents();
  // Tail sum_{k>=m} b_{k+1} delta_k = -delta_{m-1} (rho' - theta_m).
  QuadraticNumber head = params.slope().value();
  for (std::size_t k = 0; k < m; ++k) {
    const std::uint64_t bk = params.b(k + 1);
    if (bk) head = head + q_of(Int(static_cast<unsigned long>(bk))) * c.delta(static_cast<long>(k));
  }
  const QuadraticNumber theta_m = params.slope().shifted(m).value();
  const auto theta_m_field = theta_m.in_field(params.slope().value().radicand());
  check(theta_m_field.has_value(), "shifted slope left the quadratic field");
  return *theta_m_field - (*rho - head) / c.delta(static_cast<long>(m) - 1);
}

InterceptSpec shifted_formal_intercept(std::shared_ptr<SturmianParams> parent, std::size_t m) {
  return InterceptSpec::formal([parent, m](std::size_t k) { return parent->b(m + k); },
                               "shift " + std::to_string(m));
}

}  // namespace hecke
