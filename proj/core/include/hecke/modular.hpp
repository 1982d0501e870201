#pragma once

#include <array>
#include <cstddef>
#include <string>

#include "hecke/bigint.hpp"
#include "hecke/expansion.hpp"
#include "hecke/ostrowski.hpp"

namespace hecke {

/// Fixed primes for residue checks of identities whose integers are too large to hold.
inline constexpr std::array<unsigned long, 3> kFingerprintPrimes = {2305843009213693951ul, 4611686018427387847ul,
                                                                   9223372036854775783ul};

struct ModularOutcome {
  bool ok = true;
  std::string failure;
};

/// Farey chain against matrix products of the raw elements, modulo p, for k = 0..K.
ModularOutcome fraction_routes_mod(SturmianParams& params, const BasePoint& pt, std::size_t K, unsigned long p);
/// The telescoped sigma identity, the (3)_k - (4)_{k-1} identity and
/// sigma_k / (1 - gamma_k) = (4)_{k-1} / (b-1), modulo p, for k = 0..K.
ModularOutcome identities_mod(SturmianParams& params, const BasePoint& pt, std::size_t K, unsigned long p);

}  // namespace hecke
