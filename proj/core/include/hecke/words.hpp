#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hecke/bigint.hpp"
#include "hecke/fraction.hpp"
#include "hecke/ostrowski.hpp"

namespace hecke {

/// Finite word over {0,1}, bit-packed, with cached length and number of ones.
class BinaryWord {
 public:
  BinaryWord() = default;
  static BinaryWord from_string(std::string_view letters);
  static BinaryWord repeat(bool letter, std::size_t n);

  std::size_t size() const { return len_; }
  std::size_t ones() const { return ones_; }
  bool empty() const { return len_ == 0; }
  bool operator[](std::size_t i) const { return (bits_[i >> 6] >> (i & 63)) & 1u; }

  void push_back(bool letter);
  BinaryWord& append(const BinaryWord& w);
  BinaryWord& append_power(const BinaryWord& w, std::uint64_t m);

  BinaryWord prefix(std::size_t n) const { return slice(0, n); }
  BinaryWord slice(std::size_t pos, std::size_t n) const;
  /// Number of ones among the first n letters.
  std::size_t ones_in_prefix(std::size_t n) const;

  std::string to_string(std::size_t max_letters = std::string::npos) const;
  friend bool operator==(const BinaryWord& x, const BinaryWord& y);

 private:
  std::vector<std::uint64_t> bits_;
  std::size_t len_ = 0;
  std::size_t ones_ = 0;
};

BinaryWord concat(const BinaryWord& x, const BinaryWord& y);
BinaryWord power(const BinaryWord& w, std::uint64_t m);

inline constexpr std::size_t kDefaultMaxLen = 1'000'000;

/// M_k, T_k, R_k, V_k for k up to depth(); M and V also at k = -1.
class WordFamily {
 public:
  const BinaryWord& M(long k) const { return M_.at(static_cast<std::size_t>(k + 1)); }
  const BinaryWord& V(long k) const { return V_.at(static_cast<std::size_t>(k + 1)); }
  const BinaryWord& T(long k) const { return T_.at(static_cast<std::size_t>(k)); }
  const BinaryWord& R(long k) const { return R_.at(static_cast<std::size_t>(k)); }
  long depth() const { return static_cast<long>(T_.size()) - 1; }

 private:
  friend WordFamily build_word_family_capped(SturmianParams&, std::size_t, std::size_t);
  std::vector<BinaryWord> M_, V_, T_, R_;
};

/// Words through index K; throws LengthCapExceeded when q_k would exceed max_len.
WordFamily build_word_family(SturmianParams& params, std::size_t K, std::size_t max_len = kDefaultMaxLen);
/// Same, but stops quietly at the last index that fits.
WordFamily build_word_family_capped(SturmianParams& params, std::size_t K, std::size_t max_len = kDefaultMaxLen);

/// W(b,a) of a word with its length, number of ones and scale b^len a^ones, so
/// that W(XY) = W(X) scale(Y) + W(Y).
struct WordValue {
  Int value = 0;
  Int scale = 1;
  std::uint64_t len = 0, ones = 0;
};
WordValue word_value_of(const BinaryWord& w, const Int& b, const Int& a);
WordValue concat(const WordValue& x, const WordValue& y);
WordValue power(const WordValue& x, std::uint64_t m);

/// Values of M_k, T_k, R_k, V_k obtained along the word recursions, for depths
/// where the letters themselves are too long to store.
class WordValueFamily {
 public:
  const WordValue& M(long k) const { return M_.at(static_cast<std::size_t>(k + 1)); }
  const WordValue& V(long k) const { return V_.at(static_cast<std::size_t>(k + 1)); }
  const WordValue& T(long k) const { return T_.at(static_cast<std::size_t>(k)); }
  const WordValue& R(long k) const { return R_.at(static_cast<std::size_t>(k)); }
  long depth() const { return static_cast<long>(T_.size()) - 1; }

 private:
  friend WordValueFamily build_word_value_family(SturmianParams&, std::size_t, const Int&, const Int&);
  std::vector<WordValue> M_, V_, T_, R_;
};

WordValueFamily build_word_value_family(SturmianParams& params, std::size_t K, const Int& b, const Int& a);

enum class Variant { lower, upper };

/// First n letters of the Sturmian word. Numeric intercepts use floors (lower)
/// or ceilings (upper) decided exactly or with certified intervals; formal
/// intercepts read the prefix of V_k.
BinaryWord sturmian_prefix(SturmianParams& params, std::size_t n, Variant variant = Variant::lower,
                           std::size_t max_len = kDefaultMaxLen);
/// Letters floor(i theta + rho) - floor((i-1) theta + rho) for i = 1..n, any real rho.
BinaryWord sturmian_prefix_numeric(const SlopeSpec& slope, const QuadraticNumber& rho, std::size_t n,
                                   Variant variant = Variant::lower, long max_bits = 4096);

/// W(b,a) = sum_n w_n b^(l-n) a^(ones after position n).
Int word_value(const BinaryWord& w, const Int& b, const Int& a);
/// Value of the eventually periodic word Y Z Z Z ... at (1/b, 1/a).
ExactFraction periodic_value(const BinaryWord& Y, const BinaryWord& Z, const Int& b, const Int& a);

}  // namespace hecke
