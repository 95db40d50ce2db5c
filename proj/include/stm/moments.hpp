#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>

#include "stm/bigint.hpp"
#include "stm/group.hpp"

namespace stm {

/// Exact values of the Sato-Tate function F(a,b) = dim(V^{(x)a} (x) V*^{(x)b})^G
/// on a rectangle of exponents. Entries are always present for the full
/// [0,amax] x [0,bmax] box.
struct MomentTable {
  std::string group_id;
  std::string rep_id;
  std::int64_t dim = 0;
  int amax = 0;
  int bmax = 0;
  std::map<std::pair<int, int>, Int> entries;

  const Int& at(int a, int b) const;
};

/// Exact invariant dimension dim(V^{(x)a} (x) V*^{(x)b})^G. Dispatches on the
/// group variant: constant-term extraction for tori, Weyl-group alternation
/// for U(n)/SU(n), exact class averaging in a cyclotomic quotient for finite
/// groups, and the factorwise product rule for product groups with external
/// tensor representations.
Int moment(const GroupSpec& g, const RepSpec& v, int a, int b);

/// Batch driver sharing incremental tensor-power state across cells.
/// Symmetric entries are computed once; cells may be evaluated concurrently.
/// Per-cell failures are rethrown with the cell coordinates attached.
MomentTable moment_table(const GroupSpec& g, const RepSpec& v, int amax, int bmax,
                         std::string group_id = "", std::string rep_id = "");

// --- individual evaluators (exposed for tests and cross-checks) ------------

/// Constant term of w^a * dual(w)^b — invariants under a torus.
Int torus_invariants(const TorusWeightData& w, int a, int b);

/// Trivial-isotypic multiplicity for U(n) (special_unitary=false) or SU(n)
/// (true) via the alternating Weyl-group sum
///   N_lambda = sum_{sigma in S_n} sgn(sigma) m(sigma(lambda+rho) - rho),
/// rho = (n-1,...,0), m = weight multiplicity of w^a * dual(w)^b.
/// U(n) takes lambda = 0; SU(n) sums N over the determinant twists
/// lambda = (k,...,k) allowed by the character's total-degree range.
/// A negative alternating sum raises ErrorKind::Internal, never clamps.
Int weyl_invariants(bool special_unitary, int n, const TorusWeightData& w, int a,
                    int b);

/// Exact class-sum average: per class expand
///   (sum_j X^{e_j})^a (sum_j X^{-e_j mod M})^b  in  Z[X]/(X^M - 1),
/// combine with class-size weights, reduce mod the cyclotomic polynomial
/// Phi_M, and demand the result be the constant |G| * F. Non-vanishing
/// higher coordinates or non-divisibility by |G| raise ErrorKind::DataCorrupt.
/// The input must already carry the derived representation's exponents
/// (see finite_rep_classes).
Int finite_invariants(const FiniteClassesSpec& fc, int a, int b);

/// Maximum Weyl rank the alternation evaluator accepts (S_n enumeration is
/// n! terms). Default 6.
int weyl_rank_bound();
void set_weyl_rank_bound(int n);

// --- shared evaluator (used by the analyzer's cell scans) -------------------

/// Holds per-(group, rep) DP state so that repeated cell queries share the
/// incremental power caches. Thread-safe; cached and uncached paths agree.
class MomentEvaluator {
 public:
  virtual ~MomentEvaluator() = default;

  /// Shared-cache evaluation (table / scan workloads).
  virtual Int cell(int a, int b) = 0;

  /// One-shot evaluation with support pruning against the target coefficients;
  /// bypasses the caches.
  virtual Int single_cell(int a, int b) = 0;

  virtual std::int64_t dim() const = 0;

  static std::unique_ptr<MomentEvaluator> create(const GroupSpec& g, const RepSpec& v);
};

}  // namespace stm
