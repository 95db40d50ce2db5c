#pragma once

// Independent oracles for the exact engine. Each one computes expected values
// by a route disjoint from the implementation under test: tableau counting by
// the hook length formula, invariant counts of SU(2) by lattice-walk DP, and
// finite class averages in floating point.

#include <vector>

#include "stm/bigint.hpp"
#include "stm/group.hpp"

namespace oracle {

using stm::Int;

/// Number of standard Young tableaux of the given partition shape
/// (hook length formula, exact arithmetic).
Int syt_count(const std::vector<int>& shape);

/// Sum of (f^lambda)^2 over partitions lambda of a with at most n rows:
/// the diagonal moment of U(n) acting on its natural representation.
Int syt_diagonal_moment(int n, int a);

/// Number of +-1 walks of the given length from 0 to 0 that stay >= 0:
/// the invariant count of SU(2) in (std)^{(x) length}. Zero for odd length.
Int ballot_walks(int length);

/// Class-sum average (1/|G|) sum size * tr^a * conj(tr)^b evaluated in
/// floating point and rounded; asserts the result is within 1e-6 of an
/// integer. Exponent data must already describe the acting representation.
Int class_sum_moment(const stm::FiniteClassesSpec& fc, int a, int b);

/// All partitions of a with at most n rows (helper, exposed for tests).
std::vector<std::vector<int>> partitions_max_rows(int a, int n);

/// Invariant count for U(n) by direct Weyl integration: the constant term of
///   (1/n!) * prod_{i<j} (x_i - x_j) * prod_{i<j} (1/x_i - 1/x_j) * w^a * dual(w)^b
/// computed with full polynomial expansion. A second exact route through the
/// same lattice-polynomial primitives, independent of the shifted-alternation
/// evaluator it checks.
Int weyl_integration_moment(int n, const stm::WeightPoly& weights, int a, int b);

}  // namespace oracle
