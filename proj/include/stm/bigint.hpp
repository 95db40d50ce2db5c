#pragma once

#include <gmpxx.h>

#include <string>

namespace stm {

/// Arbitrary-precision integer. Invariant dimensions overflow 64 bits
/// already for moderate tensor degrees, so all moment values use this type.
using Int = mpz_class;
using Rat = mpq_class;

inline std::string to_dec(const Int& v) { return v.get_str(); }

/// Parses a decimal integer (optional leading '-'). Throws on anything else.
Int from_dec(const std::string& s);

Int factorial(unsigned n);
Int binomial(unsigned n, unsigned k);
Int int_pow(const Int& base, unsigned e);

}  // namespace stm
