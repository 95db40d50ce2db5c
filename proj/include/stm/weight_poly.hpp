#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "stm/bigint.hpp"

namespace stm {

/// A point of the weight lattice Z^r: the character of a rank-r torus.
/// Comparison is lexicographic (std::vector's operator<), which is the
/// canonical term order everywhere in this library.
using WeightVector = std::vector<std::int32_t>;

std::int64_t l1_norm(const WeightVector& w);
std::int64_t total_degree(const WeightVector& w);  // coordinate sum

struct WeightVectorHash {
  std::size_t operator()(const WeightVector& w) const noexcept;
};

/// Sparse Laurent polynomial over Z^r with arbitrary-precision integer
/// coefficients. Terms are kept sorted in lexicographic key order with no
/// zero coefficients stored; values are immutable after construction and
/// freely shareable across threads.
///
/// This is the workhorse of the exact engine: a representation restricted
/// to a maximal torus is such a polynomial with nonnegative coefficients,
/// and tensor products of characters are polynomial products.
class WeightPoly {
public:
  using Term = std::pair<WeightVector, Int>;

  WeightPoly() : rank_(0) {}
  explicit WeightPoly(int rank) : rank_(rank) {}

  /// The multiplicative identity {0-vector : 1}.
  static WeightPoly one(int rank);

  /// Builds from an arbitrary term list: sorts, merges duplicate keys,
  /// drops zeros. Throws if a key has the wrong length.
  static WeightPoly from_terms(int rank, std::vector<Term> terms);

  /// Builds from a weight multiset (multiplicity by repetition), all
  /// coefficients 1 per occurrence.
  static WeightPoly from_weights(int rank, const std::vector<WeightVector>& ws);

  int rank() const { return rank_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  /// Stored coefficient of w, or zero. w must have length = rank.
  const Int& coefficient(const WeightVector& w) const;

  /// Sum of all coefficients = evaluation at the identity element of the
  /// torus; equals dim V when the polynomial is a genuine character.
  Int coefficient_sum() const;

  /// max over terms of l1_norm(key); 0 for the zero polynomial.
  std::int64_t max_l1() const;

  /// [min, max] coordinate-sum over terms. Requires a nonzero polynomial.
  std::pair<std::int64_t, std::int64_t> total_degree_range() const;

  WeightPoly add(const WeightPoly& q) const;

  /// Convolution product. Accumulates into a hash-indexed builder and
  /// normalizes once; large products partition one operand across worker
  /// threads, with a result bit-identical to sequential execution.
  WeightPoly multiply(const WeightPoly& q) const;

  /// w -> -w on every key (V -> V* on characters).
  WeightPoly dualize() const;

  /// k-fold product; power(p, 0) = one(rank). Without a bound this uses
  /// repeated squaring. With l1_bound it multiplies incrementally and prunes
  /// every partial term that provably cannot reach a final term of L1 norm
  /// <= l1_bound (each remaining factor moves a term by at most max_l1()).
  /// The result then agrees with the full power on every key with
  /// l1_norm <= l1_bound; other keys may be absent.
  WeightPoly power(std::uint32_t k,
                   std::optional<std::int64_t> l1_bound = std::nullopt) const;

  /// Drops terms with l1_norm(key) > radius.
  WeightPoly pruned(std::int64_t radius) const;

  bool operator==(const WeightPoly& q) const {
    return rank_ == q.rank_ && terms_ == q.terms_;
  }

private:
  int rank_;
  std::vector<Term> terms_;  // sorted lex, nonzero coefficients only

  friend Int convolve_coefficient(const WeightPoly&, const WeightPoly&,
                                  const WeightVector&);
};

/// Coefficient of w in p*q, computed by direct convolution over the smaller
/// operand without materializing the product. This is what makes the Weyl
/// alternation cheap: n! point lookups instead of a full product expansion.
Int convolve_coefficient(const WeightPoly& p, const WeightPoly& q,
                         const WeightVector& w);

}  // namespace stm
