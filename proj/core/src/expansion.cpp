#include "hecke/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "hecke/errors.hpp"

namespace hecke {

void validate(const BasePoint& pt) {
  if (pt.b < 2) throw InvalidInput("b must be at least 2");
  if (pt.a < 1) throw InvalidInput("a must be at least 1");
}

bool is_improper(const BasePoint& pt) { return (pt.a - 1) % (pt.b - 1) != 0; }

const char* slot_name(Slot s) {
  switch (s) {
    case Slot::c: return "c";
    case Slot::d: return "d";
    case Slot::one: return "1";
    case Slot::e: return "e";
    case Slot::f: return "f";
    case Slot::merged: return "c+e+1";
  }
  return "?";
}

ElementQuad element_quad(SturmianParams& params, const BasePoint& pt, std::size_t k) {
  validate(pt);
  const Int B = pt.b, A = pt.a;
  params.ensure(k + 1);
  const long kk = static_cast<long>(k);
  ElementQuad out;
  const Int X = monomial(B, A, params.q(kk), params.p(kk));
  const std::uint64_t gap = params.gap(k + 1);
  if (k == 0) {
    out.c = Rational(pow(B, static_cast<unsigned long>(gap)) * A - B, B - 1);
    out.c.canonicalize();
  } else if (gap >= 1) {
    out.c = Rational(monomial(B, A, params.r(k) + params.q(kk - 1), params.r_tilde(k) + params.p(kk - 1)) *
                     geometric_sum(X, gap - 1));
  } else {
    out.c = Rational(-monomial(B, A, params.r(k - 1), params.r_tilde(k - 1)));
  }
  const Int Tk = monomial(B, A, params.t(k), params.t_tilde(k));
  out.d = Tk - 1;
  out.e = monomial(B, A, params.r(k), params.r_tilde(k)) - 1;
  out.f = Tk * geometric_sum(X, params.b(k + 1));
  return out;
}

std::vector<ElementQuad> element_quads(SturmianParams& params, const BasePoint& pt, std::size_t K) {
  std::vector<ElementQuad> out;
  out.reserve(K + 1);
  for (std::size_t k = 0; k <= K; ++k) out.push_back(element_quad(params, pt, k));
  return out;
}

std::vector<Rational> raw_stream(const std::vector<ElementQuad>& quads) {
  std::vector<Rational> out;
  out.reserve(5 * quads.size());
  for (const auto& q : quads) {
    out.push_back(q.c);
    out.push_back(Rational(q.d));
    out.push_back(Rational(1));
    out.push_back(Rational(q.e));
    out.push_back(Rational(q.f));
  }
  return out;
}

namespace {

struct Mat2 {
  Rational m00, m01, m10, m11;
  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.m00 * y.m00 + x.m01 * y.m10, x.m00 * y.m01 + x.m01 * y.m11, x.m10 * y.m00 + x.m11 * y.m10,
            x.m10 * y.m01 + x.m11 * y.m11};
  }
  friend bool operator==(const Mat2& x, const Mat2& y) {
    return x.m00 == y.m00 && x.m01 == y.m01 && x.m10 == y.m10 && x.m11 == y.m11;
  }
};

Mat2 E(const Rational& x) { return {x, 1, 1, 0}; }

struct LogMag {
  bool zero = true;
  long double log = 0;
};

LogMag log_add(const LogMag& x, const LogMag& y) {
  if (x.zero) return y;
  if (y.zero) return x;
  const long double hi = std::max(x.log, y.log);
  const long double lo = std::min(x.log, y.log);
  return {false, hi + std::log1p(std::exp(lo - hi))};
}

// log(X^0 + ... + X^(m-1)) for log X = L > 0 and m >= 1.
long double log_geometric(long double L, std::uint64_t m) {
  long double s = 0;
  const std::uint64_t terms = std::min<std::uint64_t>(m, 256);
  for (std::uint64_t i = 0; i < terms; ++i) s += std::exp(-static_cast<long double>(i) * L);
  return static_cast<long double>(m - 1) * L + std::log(s);
}

// log(e^L - 1) for L > 0.
long double log_expm1(long double L) { return L > 40 ? L + std::log1p(-std::exp(-L)) : std::log(std::expm1(L)); }

// Element values per slot, exact.
class ExactElements {
 public:
  using Value = Rational;
  ExactElements(SturmianParams& p, BasePoint pt) : params_(p), pt_(pt) {}
  static bool is_zero(const Value& v) { return sgn(v) == 0; }
  static Value add(const Value& x, const Value& y) { return x + y; }
  static bool is_positive(const Value& v) { return sgn(v) > 0; }

  Value at(std::size_t k, Slot s) {
    const ElementQuad& q = quad(k);
    switch (s) {
      case Slot::c: return q.c;
      case Slot::d: return Rational(q.d);
      case Slot::one: return Rational(1);
      case Slot::e: return Rational(q.e);
      case Slot::f: return Rational(q.f);
      case Slot::merged: return q.c + Rational(quad(k + 1).e) + 1;
    }
    return 0;
  }

  // Rule (i) consistency: f_k = 0, c_{k+1} = -e_k - 1, d_{k+1} = d_k and the 9-block matrix identity.
  void verify_block(std::size_t k) {
    const ElementQuad& x = quad(k);
    const ElementQuad& y = quad(k + 1);
    check(sgn(x.f) == 0, "rule (i): f_k must vanish");
    check(y.c == Rational(-x.e - 1), "rule (i): c_{k+1} = -e_k - 1");
    check(y.d == x.d, "rule (i): d_{k+1} = d_k");
    Mat2 prod = E(x.c);
    for (const Rational& v : {Rational(x.d), Rational(1), Rational(x.e), Rational(x.f), y.c, Rational(y.d),
                              Rational(1), Rational(y.e)})
      prod = prod * E(v);
    check(prod == E(x.c + Rational(y.e) + 1), "rule (i): 9-block matrix identity");
  }

 private:
  const ElementQuad& quad(std::size_t k) {
    while (cache_.size() <= k) cache_.push_back(element_quad(params_, pt_, cache_.size()));
    return cache_[k];
  }
  SturmianParams& params_;
  BasePoint pt_;
  std::deque<ElementQuad> cache_;
};

// Element magnitudes as natural logarithms; zeros decided structurally.
class LogElements {
 public:
  using Value = LogMag;
  LogElements(SturmianParams& p, BasePoint pt)
      : params_(p), pt_(pt), lb_(std::log(static_cast<long double>(pt.b))), la_(std::log(static_cast<long double>(pt.a))) {}
  static bool is_zero(const Value& v) { return v.zero; }
  static Value add(const Value& x, const Value& y) { return log_add(x, y); }
  static bool is_positive(const Value& v) { return !v.zero; }

  Value at(std::size_t k, Slot s) {
    SturmianParams& P = params_;
    P.ensure(k + 2);
    const long kk = static_cast<long>(k);
    switch (s) {
      case Slot::c: {
        const std::uint64_t gap = P.gap(k + 1);
        if (k == 0) {
          const Int B = pt_.b;
          const Int num = pow(B, static_cast<unsigned long>(gap)) * Int(pt_.a) - B;
          if (sgn(num) == 0) return {};
          return {false, log_abs(num) - std::log(static_cast<long double>(pt_.b - 1))};
        }
        if (gap <= 1) {
          check(gap == 1, "log domain: negative c_k outside a rule (i) block");
          return {};
        }
        return {false, mono(P.r(k) + P.q(kk - 1), P.r_tilde(k) + P.p(kk - 1)) +
                           log_geometric(mono(P.q(kk), P.p(kk)), gap - 1)};
      }
      case Slot::d:
        if (sgn(P.t(k)) == 0) return {};
        return {false, log_expm1(mono(P.t(k), P.t_tilde(k)))};
      case Slot::one: return {false, 0};
      case Slot::e: return {false, log_expm1(mono(P.r(k), P.r_tilde(k)))};
      case Slot::f: {
        const std::uint64_t bk = P.b(k + 1);
        if (bk == 0) return {};
        return {false, mono(P.t(k), P.t_tilde(k)) + log_geometric(mono(P.q(kk), P.p(kk)), bk)};
      }
      case Slot::merged: {
        const LogMag c = at(k, Slot::c);
        return log_add(c, {false, mono(P.r(k + 1), P.r_tilde(k + 1))});
      }
    }
    return {};
  }

  void verify_block(std::size_t) {}

 private:
  long double mono(const Int& eb, const Int& ea) const {
    return to_long_double(eb) * lb_ + (pt_.a == 1 ? 0.0L : to_long_double(ea) * la_);
  }
  SturmianParams& params_;
  BasePoint pt_;
  long double lb_, la_;
};

template <class Elements>
class Contractor {
 public:
  using Value = typename Elements::Value;
  struct Item {
    Value v;
    bool zero;
    RawTag tag;
  };

  Contractor(SturmianParams& params, BasePoint pt, bool verify) : params_(params), elements_(params, pt), verify_(verify) {}

  Item next() {
    for (;;) {
      if (buf_.size() >= 2 && !buf_[1].zero) {
        Item out = std::move(buf_.front());
        buf_.pop_front();
        if (!Elements::is_positive(out.v))
          throw NonPositiveResidual("contraction left a non-positive element at block " + std::to_string(out.tag.k));
        return out;
      }
      if (pending_.empty()) refill();
      push(std::move(pending_.front()));
      pending_.pop_front();
    }
  }

  std::vector<CaseLogEntry> log;

 private:
  void emit(std::size_t k, Slot s) {
    Value v = elements_.at(k, s);
    const bool z = Elements::is_zero(v);
    pending_.push_back(Item{std::move(v), z, RawTag{k, s}});
  }

  bool rule_i_at(std::size_t k) { return params_.gap(k + 2) == 0; }

  void refill() {
    const std::size_t k = next_k_;
    if (rule_i_at(k)) {
      if (verify_) elements_.verify_block(k);
      log.push_back({"i", k, {}});
      emit(k, Slot::merged);
      emit(k + 1, Slot::f);
      next_k_ = k + 2;
    } else {
      for (Slot s : {Slot::c, Slot::d, Slot::one, Slot::e, Slot::f}) emit(k, s);
      next_k_ = k + 1;
    }
  }

  void push(Item item) {
    buf_.push_back(std::move(item));
    while (buf_.size() >= 3 && buf_[buf_.size() - 2].zero) {
      const std::size_t n = buf_.size();
      record_zero(buf_[n - 2].tag);
      Item merged{Elements::add(buf_[n - 3].v, buf_[n - 1].v), false, buf_[n - 3].tag};
      merged.zero = Elements::is_zero(merged.v);
      buf_.resize(n - 3);
      buf_.push_back(std::move(merged));
    }
  }

  void record_zero(const RawTag& z) {
    const std::size_t k = z.k;
    if (k == 0 && (z.slot == Slot::c || z.slot == Slot::d)) {
      log.push_back({"ii_0", 0, {z}});
      return;
    }
    if (z.slot == Slot::f) {
      if (rule_i_at(k + 1)) {
        log.push_back({"ii_1", k + 1, {z}});
        return;
      }
      const bool c_zero = params_.gap(k + 2) == 1;
      const bool d_zero = sgn(params_.t(k + 1)) == 0;
      CaseLogEntry e{"", k, {z}};
      if (c_zero) e.zeros.push_back({k + 1, Slot::c});
      if (d_zero) e.zeros.push_back({k + 1, Slot::d});
      e.rule = d_zero ? (c_zero ? "ii_6" : "ii_5") : (c_zero ? "ii_4" : "ii_2");
      log.push_back(std::move(e));
      return;
    }
    if (z.slot == Slot::c && params_.b(k) != 0) {
      log.push_back({"ii_3", k - 1, {z}});
      return;
    }
    // Remaining zeros (c_{k+1} after f_k = 0, d_{k+1}) belong to the entry logged at f_k.
    check(z.slot == Slot::c || z.slot == Slot::d, "unexpected zero element");
  }

  SturmianParams& params_;
  Elements elements_;
  bool verify_;
  std::size_t next_k_ = 0;
  std::deque<Item> pending_;
  std::deque<Item> buf_;
};

}  // namespace

void check_case_preconditions(SturmianParams& P, const CaseLogEntry& e) {
  const std::size_t k = e.k;
  const auto fail = [&](const char* why) {
    throw InternalCheckFailure("contraction case " + e.rule + " at k=" + std::to_string(k) + ": " + why);
  };
  if (e.rule == "i") {
    if (P.gap(k + 2) != 0) fail("needs a_{k+2} = b_{k+2}");
  } else if (e.rule == "ii_0") {
    if (k != 0) fail("leading zeros only at k = 0");
  } else if (e.rule == "ii_1") {
    if (k < 1 || P.b(k) != 0 || P.gap(k + 2) != 0) fail("needs b_k = 0 and a_{k+2} = b_{k+2}");
  } else if (e.rule == "ii_2") {
    if (P.b(k + 1) != 0 || sgn(P.t(k + 1)) == 0 || P.gap(k + 2) < 2) fail("needs b_{k+1}=0, t_{k+1}>=1, a_{k+2}>=b_{k+2}+2");
  } else if (e.rule == "ii_3") {
    if (P.b(k + 1) == 0 || P.gap(k + 2) != 1) fail("needs b_{k+1}>=1 and a_{k+2}=b_{k+2}+1");
  } else if (e.rule == "ii_4") {
    if (P.b(k + 1) != 0 || sgn(P.t(k + 1)) == 0 || P.gap(k + 2) != 1) fail("needs b_{k+1}=0, t_{k+1}>=1, a_{k+2}=b_{k+2}+1");
  } else if (e.rule == "ii_5") {
    if (sgn(P.t(k + 1)) != 0 || P.gap(k + 2) < 2) fail("needs t_{k+1}=0 and a_{k+2}>=b_{k+2}+2");
  } else if (e.rule == "ii_6") {
    if (sgn(P.t(k + 1)) != 0 || P.gap(k + 2) != 1) fail("needs t_{k+1}=0 and a_{k+2}=b_{k+2}+1");
  } else {
    fail("unknown rule");
  }
  if (e.rule.rfind("ii_", 0) == 0 && e.rule != "ii_0" && e.rule != "ii_1" && P.gap(k + 3) == 0)
    fail("zero pattern adjacent to a rule (i) block");
}

struct PartialQuotientStream::Impl {
  Impl(SturmianParams p, BasePoint b, bool verify) : params(std::move(p)), pt(b), contractor(params, pt, verify) {}
  SturmianParams params;
  BasePoint pt;
  Contractor<ExactElements> contractor;
  bool head_done = false;
  std::optional<Rational> head;
  std::size_t emitted = 0;
};

PartialQuotientStream::PartialQuotientStream(SturmianParams params, BasePoint pt, bool verify_blocks) {
  validate(pt);
  impl_ = std::make_unique<Impl>(std::move(params), pt, verify_blocks);
}
PartialQuotientStream::~PartialQuotientStream() = default;
PartialQuotientStream::PartialQuotientStream(PartialQuotientStream&&) noexcept = default;
PartialQuotientStream& PartialQuotientStream::operator=(PartialQuotientStream&&) noexcept = default;

bool PartialQuotientStream::improper() const { return is_improper(impl_->pt); }

const std::optional<Rational>& PartialQuotientStream::head() {
  if (!impl_->head_done && improper()) {
    auto item = impl_->contractor.next();
    check(item.v.get_den() != 1, "improper head is integral");
    check(((impl_->pt.b - 1) % item.v.get_den()) == 0, "head denominator must divide b-1");
    impl_->head = item.v;
    ++impl_->emitted;
  }
  impl_->head_done = true;
  return impl_->head;
}

Int PartialQuotientStream::next_tail() {
  head();
  auto item = impl_->contractor.next();
  check(item.v.get_den() == 1, "non-integral partial quotient after the head");
  ++impl_->emitted;
  return item.v.get_num();
}

std::vector<Int> PartialQuotientStream::take(std::size_t n) {
  std::vector<Int> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(next_tail());
  return out;
}

std::size_t PartialQuotientStream::emitted_count() const { return impl_->emitted; }

const std::vector<CaseLogEntry>& PartialQuotientStream::case_log() const { return impl_->contractor.log; }

struct LogQuotientStream::Impl {
  Impl(SturmianParams p, BasePoint b) : params(std::move(p)), contractor(params, b, false) {}
  SturmianParams params;
  Contractor<LogElements> contractor;
};

LogQuotientStream::LogQuotientStream(SturmianParams params, BasePoint pt) {
  validate(pt);
  impl_ = std::make_unique<Impl>(std::move(params), pt);
}
LogQuotientStream::~LogQuotientStream() = default;
LogQuotientStream::LogQuotientStream(LogQuotientStream&&) noexcept = default;

long double LogQuotientStream::next() { return impl_->contractor.next().v.log; }

std::vector<long double> LogQuotientStream::take(std::size_t n) {
  std::vector<long double> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(next());
  return out;
}

ExpansionResult expand_xi(SturmianParams params, const BasePoint& pt, std::size_t N) {
  if (N < 1) throw InvalidInput("N must be at least 1");
  PartialQuotientStream s(std::move(params), pt);
  ExpansionResult r;
  r.improper = s.improper();
  r.head = s.head();
  r.A = s.take(N);
  r.case_log = s.case_log();
  return r;
}

int floor_theta_plus_rho(SturmianParams& params) {
  const QuadraticNumber& theta = params.slope().value();
  if (const auto rho = params.exact_intercept()) return static_cast<int>((theta + *rho).floor().get_si());
  const QuadraticNumber& rho = params.intercept().value();
  for (long bits = 64; bits <= params.options().max_bits; bits *= 2) {
    const RealInterval s = theta.enclose(bits) + rho.enclose(bits);
    const Int lo = floor(s.lower());
    if (lo == floor(s.upper())) return static_cast<int>(lo.get_si());
  }
  throw UndecidableLetter("floor(theta + rho) undecided at the precision cap");
}

Rational xi_s_from_F(const Rational& F, const BasePoint& pt, int floor_sum) {
  const Rational beta(1, pt.b);
  const Rational alpha(1, pt.a);
  return (1 - beta) * F + beta * beta * alpha * floor_sum;
}

Rational xi_from_F(const Rational& F, const BasePoint& pt, int floor_sum) {
  return Rational(pt.b - 1) * xi_s_from_F(F, pt, floor_sum);
}

Rational F_from_xi(const Rational& xi, const BasePoint& pt, int floor_sum) {
  const Rational bm1(pt.b - 1);
  const Rational correction = Rational(floor_sum) * bm1 / Rational(pt.b * pt.b * pt.a);
  return (xi - correction) * Rational(pt.b) / (bm1 * bm1);
}

RealInterval xi_from_F(const RealInterval& F, const BasePoint& pt, int floor_sum) {
  const Rational bm1(pt.b - 1);
  Rational scale = bm1 * bm1 / Rational(pt.b);
  scale.canonicalize();
  Rational shift = Rational(floor_sum) * bm1 / Rational(pt.b * pt.b * pt.a);
  shift.canonicalize();
  return shift + scale * F;
}

}  // namespace hecke
