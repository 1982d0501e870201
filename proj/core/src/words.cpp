#include "hecke/words.hpp"

#include <bit>
#include <unordered_map>

#include "hecke/errors.hpp"

namespace hecke {

BinaryWord BinaryWord::from_string(std::string_view letters) {
  BinaryWord w;
  for (char c : letters) {
    if (c != '0' && c != '1') throw InvalidInput("words use only the letters 0 and 1");
    w.push_back(c == '1');
  }
  return w;
}

BinaryWord BinaryWord::repeat(bool letter, std::size_t n) {
  BinaryWord w;
  w.bits_.assign((n + 63) / 64, letter ? ~std::uint64_t{0} : 0);
  w.len_ = n;
  w.ones_ = letter ? n : 0;
  if (letter && (n & 63)) w.bits_.back() &= (std::uint64_t{1} << (n & 63)) - 1;
  return w;
}

void BinaryWord::push_back(bool letter) {
  if ((len_ & 63) == 0) bits_.push_back(0);
  if (letter) {
    bits_.back() |= std::uint64_t{1} << (len_ & 63);
    ++ones_;
  }
  ++len_;
}

BinaryWord& BinaryWord::append(const BinaryWord& w) {
  if (w.len_ == 0) return *this;
  if (&w == this) {
    const BinaryWord copy = w;
    return append(copy);
  }
  const std::size_t off = len_ & 63;
  const std::size_t base = len_ >> 6;
  const std::size_t new_len = len_ + w.len_;
  bits_.resize((new_len + 63) / 64, 0);
  if (off == 0) {
    for (std::size_t i = 0; i < w.bits_.size(); ++i) bits_[base + i] = w.bits_[i];
  } else {
    for (std::size_t i = 0; i < w.bits_.size(); ++i) {
      bits_[base + i] |= w.bits_[i] << off;
      if (base + i + 1 < bits_.size()) bits_[base + i + 1] |= w.bits_[i] >> (64 - off);
    }
  }
  len_ = new_len;
  ones_ += w.ones_;
  return *this;
}

BinaryWord& BinaryWord::append_power(const BinaryWord& w, std::uint64_t m) {
  const BinaryWord copy = w;
  for (std::uint64_t i = 0; i < m; ++i) append(copy);
  return *this;
}

BinaryWord BinaryWord::slice(std::size_t pos, std::size_t n) const {
  if (pos + n > len_) throw InvalidInput("word slice out of range");
  BinaryWord out;
  out.len_ = n;
  out.bits_.assign((n + 63) / 64, 0);
  const std::size_t off = pos & 63;
  const std::size_t base = pos >> 6;
  for (std::size_t i = 0; i < out.bits_.size(); ++i) {
    std::uint64_t v = bits_[base + i] >> off;
    if (off && base + i + 1 < bits_.size()) v |= bits_[base + i + 1] << (64 - off);
    out.bits_[i] = v;
  }
  if (n & 63) out.bits_.back() &= (std::uint64_t{1} << (n & 63)) - 1;
  for (auto v : out.bits_) out.ones_ += static_cast<std::size_t>(std::popcount(v));
  return out;
}

std::size_t BinaryWord::ones_in_prefix(std::size_t n) const {
  std::size_t c = 0;
  const std::size_t full = n >> 6;
  for (std::size_t i = 0; i < full; ++i) c += static_cast<std::size_t>(std::popcount(bits_[i]));
  if (n & 63) c += static_cast<std::size_t>(std::popcount(bits_[full] & ((std::uint64_t{1} << (n & 63)) - 1)));
  return c;
}

std::string BinaryWord::to_string(std::size_t max_letters) const {
  const std::size_t n = std::min(max_letters, len_);
  std::string s(n, '0');
  for (std::size_t i = 0; i < n; ++i)
    if ((*this)[i]) s[i] = '1';
  return s;
}

bool operator==(const BinaryWord& x, const BinaryWord& y) {
  return x.len_ == y.len_ && x.ones_ == y.ones_ && x.bits_ == y.bits_;
}

BinaryWord concat(const BinaryWord& x, const BinaryWord& y) {
  BinaryWord r = x;
  r.append(y);
  return r;
}

BinaryWord power(const BinaryWord& w, std::uint64_t m) {
  BinaryWord r;
  r.append_power(w, m);
  return r;
}

WordFamily build_word_family_capped(SturmianParams& params, std::size_t K, std::size_t max_len) {
  WordFamily f;
  f.M_ = {BinaryWord::from_string("1"), BinaryWord::from_string("0")};
  f.V_ = f.M_;
  f.T_ = {BinaryWord()};
  f.R_ = {BinaryWord::from_string("0")};
  for (std::size_t k = 0; k < K; ++k) {
    const Int& q_next = params.q(static_cast<long>(k + 1));
    if (q_next > max_len) break;
    const std::uint64_t a = params.a(k + 1);
    const std::uint64_t b = params.b(k + 1);
    const long kk = static_cast<long>(k);
    BinaryWord M, T, R;
    T = power(f.M(kk), b);
    T.append(f.T(kk));
    if (k == 0) {
      M = BinaryWord::repeat(false, a - 1);
      M.push_back(true);
      R = BinaryWord::repeat(false, a - b - 1);
      R.push_back(true);
    } else {
      M = power(f.M(kk), a);
      M.append(f.M(kk - 1));
      if (b == a) {
        R = f.R(kk - 1);
      } else {
        R = f.R(kk);
        R.append_power(f.M(kk), a - b - 1);
        R.append(f.M(kk - 1));
      }
    }
    BinaryWord V = concat(R, T);
    const std::size_t n = k + 1;
    check(V.size() == params.q(static_cast<long>(n)) && V.ones() == params.p(static_cast<long>(n)), "|V_k| = q_k");
    check(T.size() == params.t(n) && T.ones() == params.t_tilde(n), "|T_k| = t_k");
    check(R.size() == params.r(n) && R.ones() == params.r_tilde(n), "|R_k| = r_k");
    check(M == concat(T, R), "M_k = T_k R_k");
    // V_{k+1} = V_k^{a-b} V_{k-1} V_k^{b}, with the exponent a-b-1 at k = 0.
    BinaryWord W = power(f.V(kk), k == 0 ? a - b - 1 : a - b);
    W.append(f.V(kk - 1));
    W.append_power(f.V(kk), b);
    check(W == V, "V_{k+1} = V_k^{a-b} V_{k-1} V_k^b");
    f.M_.push_back(std::move(M));
    f.V_.push_back(std::move(V));
    f.T_.push_back(std::move(T));
    f.R_.push_back(std::move(R));
  }
  return f;
}

WordValue concat(const WordValue& x, const WordValue& y) {
  return {x.value * y.scale + y.value, x.scale * y.scale, x.len + y.len, x.ones + y.ones};
}

WordValue power(const WordValue& x, std::uint64_t m) {
  WordValue r, base = x;
  for (; m; m >>= 1) {
    if (m & 1) r = concat(r, base);
    if (m > 1) base = concat(base, base);
  }
  return r;
}

WordValueFamily build_word_value_family(SturmianParams& params, std::size_t K, const Int& b, const Int& a) {
  WordValueFamily f;
  const WordValue zero = word_value_of(BinaryWord::from_string("0"), b, a);
  const WordValue one = word_value_of(BinaryWord::from_string("1"), b, a);
  f.M_ = {one, zero};
  f.V_ = f.M_;
  f.T_ = {WordValue{}};
  f.R_ = {zero};
  for (std::size_t k = 0; k < K; ++k) {
    const std::uint64_t ak = params.a(k + 1);
    const std::uint64_t bk = params.b(k + 1);
    const long kk = static_cast<long>(k);
    WordValue M, R;
    const WordValue T = concat(power(f.M(kk), bk), f.T(kk));
    if (k == 0) {
      M = concat(power(zero, ak - 1), one);
      R = concat(power(zero, ak - bk - 1), one);
    } else {
      M = concat(power(f.M(kk), ak), f.M(kk - 1));
      R = bk == ak ? f.R(kk - 1) : concat(concat(f.R(kk), power(f.M(kk), ak - bk - 1)), f.M(kk - 1));
    }
    WordValue V = concat(R, T);
    const std::size_t n = k + 1;
    check(Int(static_cast<unsigned long>(V.len)) == params.q(static_cast<long>(n)) &&
              Int(static_cast<unsigned long>(V.ones)) == params.p(static_cast<long>(n)),
          "|V_k| = q_k");
    f.M_.push_back(std::move(M));
    f.V_.push_back(std::move(V));
    f.T_.push_back(T);
    f.R_.push_back(std::move(R));
  }
  return f;
}

WordFamily build_word_family(SturmianParams& params, std::size_t K, std::size_t max_len) {
  WordFamily f = build_word_family_capped(params, K, max_len);
  if (f.depth() < static_cast<long>(K))
    throw LengthCapExceeded("word V_" + std::to_string(f.depth() + 1) + " exceeds " + std::to_string(max_len) +
                                " letters",
                            f.depth());
  return f;
}

namespace {

struct LetterForm {
  // i*theta + rho = ((A1 i + A0) + (B1 i + B0) sqrt(D)) / C, C > 0.
  Int A1, A0, B1, B0, C, D;
};

LetterForm letter_form(const QuadraticNumber& theta, const QuadraticNumber& rho) {
  LetterForm f;
  f.D = theta.radicand();
  Int C = 1;
  for (const Rational* r : {&theta.rational_part(), &theta.irrational_part(), &rho.rational_part(),
                            &rho.irrational_part()})
    mpz_lcm(C.get_mpz_t(), C.get_mpz_t(), r->get_den_mpz_t());
  auto scale = [&](const Rational& r) { return Int(r.get_num() * (C / r.get_den())); };
  f.A1 = scale(theta.rational_part());
  f.A0 = scale(rho.rational_part());
  f.B1 = scale(theta.irrational_part());
  f.B0 = scale(rho.irrational_part());
  f.C = C;
  return f;
}

}  // namespace

BinaryWord sturmian_prefix_numeric(const SlopeSpec& slope, const QuadraticNumber& rho, std::size_t n,
                                   Variant variant, long max_bits) {
  const QuadraticNumber& theta = slope.value();
  std::vector<Int> level(n + 1);  // floor or ceiling of i*theta + rho
  const bool upper = variant == Variant::upper;
  if (const auto rho_f = rho.in_field(theta.radicand())) {
    const LetterForm f = letter_form(theta, *rho_f);
    for (std::size_t i = 0; i <= n; ++i) {
      const Int ii = Int(static_cast<unsigned long>(i));
      const Int A = f.A1 * ii + f.A0;
      const Int B = f.B1 * ii + f.B0;
      level[i] = upper ? Int(-floor_quadratic(-A, -B, f.D, f.C)) : floor_quadratic(A, B, f.D, f.C);
    }
  } else {
    std::vector<std::size_t> pending(n + 1);
    for (std::size_t i = 0; i <= n; ++i) pending[i] = i;
    long bits = 64 + 2 * static_cast<long>(std::bit_width(n + 1));
    while (!pending.empty()) {
      const RealInterval th = theta.enclose(bits);
      const RealInterval rh = rho.enclose(bits);
      std::vector<std::size_t> still;
      for (std::size_t i : pending) {
        const Rational ii = Rational(static_cast<unsigned long>(i));
        const Rational lo = ii * th.lower() + rh.lower();
        const Rational hi = ii * th.upper() + rh.upper();
        const Int a = upper ? ceil(lo) : floor(lo);
        const Int b = upper ? ceil(hi) : floor(hi);
        if (a == b) {
          level[i] = a;
        } else {
          still.push_back(i);
        }
      }
      pending.swap(still);
      if (pending.empty()) break;
      if (bits >= max_bits)
        throw UndecidableLetter("letter " + std::to_string(pending.front()) + " undecided at " +
                                std::to_string(max_bits) + " bits");
      bits = std::min(max_bits, 2 * bits);
    }
  }
  BinaryWord w;
  for (std::size_t i = 1; i <= n; ++i) {
    const Int d = level[i] - level[i - 1];
    check(d == 0 || d == 1, "Sturmian letter outside {0,1}");
    w.push_back(d == 1);
  }
  return w;
}

BinaryWord sturmian_prefix(SturmianParams& params, std::size_t n, Variant variant, std::size_t max_len) {
  if (params.intercept().kind() == InterceptSpec::Kind::numeric)
    return sturmian_prefix_numeric(params.slope(), params.intercept().value(), n, variant, params.options().max_bits);
  std::size_t k = 0;
  while (params.q(static_cast<long>(k)) < n + 1) ++k;
  if (params.q(static_cast<long>(k)) > max_len)
    throw LengthCapExceeded("prefix of " + std::to_string(n) + " letters needs V_" + std::to_string(k) +
                                " beyond the length cap",
                            -1);
  const WordFamily f = build_word_family(params, k, max_len);
  return f.V(static_cast<long>(k)).prefix(n);
}

namespace {

class WordEvaluator {
 public:
  WordEvaluator(const BinaryWord& w, const Int& b, const Int& a) : w_(w), b_(b), a_(a) {}

  // Value and number of ones of w[lo, hi).
  std::pair<Int, std::size_t> eval(std::size_t lo, std::size_t hi) {
    if (hi - lo <= 64) {
      Int v = 0;
      std::size_t ones = 0;
      for (std::size_t i = lo; i < hi; ++i) {
        v *= b_;
        if (w_[i]) {
          if (a_ != 1) v *= a_;
          v += 1;
          ++ones;
        }
      }
      return {v, ones};
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    auto [left, lones] = eval(lo, mid);
    auto [right, rones] = eval(mid, hi);
    left *= bpow(hi - mid);
    if (a_ != 1 && rones) left *= apow(rones);
    left += right;
    return {left, lones + rones};
  }

 private:
  const Int& bpow(std::size_t e) {
    auto it = bcache_.find(e);
    if (it == bcache_.end()) it = bcache_.emplace(e, pow(b_, static_cast<unsigned long>(e))).first;
    return it->second;
  }
  const Int& apow(std::size_t e) {
    auto it = acache_.find(e);
    if (it == acache_.end()) it = acache_.emplace(e, pow(a_, static_cast<unsigned long>(e))).first;
    return it->second;
  }

  const BinaryWord& w_;
  const Int& b_;
  const Int& a_;
  std::unordered_map<std::size_t, Int> bcache_, acache_;
};

}  // namespace

Int word_value(const BinaryWord& w, const Int& b, const Int& a) {
  if (w.empty()) return 0;
  WordEvaluator ev(w, b, a);
  return ev.eval(0, w.size()).first;
}

WordValue word_value_of(const BinaryWord& w, const Int& b, const Int& a) {
  return {word_value(w, b, a), pow(b, static_cast<unsigned long>(w.size())) * pow(a, static_cast<unsigned long>(w.ones())),
          w.size(), w.ones()};
}

ExactFraction periodic_value(const BinaryWord& Y, const BinaryWord& Z, const Int& b, const Int& a) {
  if (sgn(b) <= 0 || sgn(a) <= 0) throw InvalidInput("periodic_value needs b, a >= 1");
  const Int growth = pow(b, static_cast<unsigned long>(Z.size())) * pow(a, static_cast<unsigned long>(Z.ones()));
  if (growth <= 1) throw NonContracting("periodic word value diverges");
  const Int y = word_value(Y, b, a);
  const Int yz = word_value(concat(Y, Z), b, a);
  const Int scale = pow(b, static_cast<unsigned long>(Y.size())) * pow(a, static_cast<unsigned long>(Y.ones()));
  return ExactFraction(yz - y, scale * (growth - 1));
}

}  // namespace hecke
