#pragma once

#include <string_view>

#include "hecke/cf_core.hpp"
#include "hecke/ostrowski.hpp"

namespace hecke {

/// `per:[a1,...;c1,...]` (prefix and non-empty period) or `surd:(P,D,Q)`.
SlopeSpec parse_slope(std::string_view text);

/// `rho:rat(p/q)`, `rho:surd(P,D,Q)` or `rho:digits[b1,...]`; the `rho:` prefix is optional.
/// Digits are checked against the slope's admissibility rules.
InterceptSpec parse_intercept(std::string_view text, const SlopeSpec& slope);

}  // namespace hecke
