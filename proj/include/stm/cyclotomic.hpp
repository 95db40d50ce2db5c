#pragma once

#include <cstdint>
#include <vector>

#include "stm/bigint.hpp"

namespace stm {

/// Dense integer polynomial, coefficient of X^i at index i. Trailing zeros
/// are allowed; helpers below treat them as absent.
using IntPoly = std::vector<Int>;

/// M-th cyclotomic polynomial, computed by the Mobius-product recursion
/// Phi_M = (X^M - 1) / prod_{d | M, d < M} Phi_d with exact integer division.
/// Results are memoized per process.
const IntPoly& cyclotomic_poly(std::int64_t m);

/// Remainder of p modulo the monic divisor d (exact integer arithmetic).
IntPoly poly_mod(IntPoly p, const IntPoly& d);

/// Degree ignoring trailing zeros; -1 for the zero polynomial.
int poly_degree(const IntPoly& p);

}  // namespace stm
