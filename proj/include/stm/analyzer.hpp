#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stm/bigint.hpp"
#include "stm/group.hpp"
#include "stm/moments.hpp"
#include "stm/sampler.hpp"

namespace stm {

// ---------------------------------------------------------------------------
// Separation
// ---------------------------------------------------------------------------

/// Two norms on exponent cells: the theory alternates between "all a,b <= N"
/// and "a+b <= N", so both are supported. Total degree is the default.
enum class NormKind { TotalDegree, Box };

std::int64_t cell_norm(NormKind norm, int a, int b);

/// Cells of the given norm level, lexicographic (a ascending, then b):
/// deterministic witnesses matter for test stability.
std::vector<std::pair<int, int>> cells_at_norm(NormKind norm, int level);

struct SeparationWitness {
  int a = 0;
  int b = 0;
  Int left_value;
  Int right_value;
};

struct SeparationReport {
  std::string left_id;
  std::string right_id;
  NormKind norm = NormKind::TotalDegree;
  int bound = 0;
  /// First norm level at which some cell differs; empty when the functions
  /// agree on every cell of norm <= bound (inconclusive, not equality).
  std::optional<int> index;
  std::optional<SeparationWitness> witness;

  bool separated() const { return index.has_value(); }
};

/// Scans cells in increasing norm (lexicographic within a level) and reports
/// the first disagreement between the two Sato-Tate functions, or exhaustion.
SeparationReport separation_index(const GroupSpec& g1, const RepSpec& v1,
                                  const GroupSpec& g2, const RepSpec& v2,
                                  NormKind norm = NormKind::TotalDegree,
                                  int bound = 30, std::string left_id = "",
                                  std::string right_id = "");

/// Largest separation bound accepted by default (scan cost grows quadratically).
int separation_bound_limit();

// ---------------------------------------------------------------------------
// Torsion approximants
// ---------------------------------------------------------------------------

/// A finite approximant of a group with positive-dimensional center: every
/// torus factor is replaced by its n-torsion subgroup, semisimple and finite
/// factors stay untouched, and the product structure is preserved. Unitary
/// factors are first split as SpecialUnitary x Torus(1) acting through the
/// standard cover (invariant dimensions are unchanged by the finite cover).
struct TorsionApproximant {
  std::string base_id;
  std::int64_t n = 1;
  GroupSpec group;
  RepPtr rep;
};

TorsionApproximant torsion_approximant(const GroupSpec& g, const RepSpec& v,
                                       std::int64_t n, std::string base_id = "");

struct TorsionCell {
  int a = 0;
  int b = 0;
  Int base_value;
  Int approx_value;
  bool agree = false;
};

struct TorsionAgreementReport {
  std::string base_id;
  std::int64_t n = 1;
  int degree = 0;
  std::vector<TorsionCell> cells;  // all cells with total degree <= degree
  std::optional<int> first_disagreement_norm;
  std::optional<std::pair<int, int>> first_disagreement_cell;
  bool full_agreement = false;
};

/// Compares F_{G,V} with F_{G_n,V} on every cell of total degree <= degree.
TorsionAgreementReport verify_torsion_agreement(const GroupSpec& g, const RepSpec& v,
                                                std::int64_t n, int degree,
                                                std::string base_id = "");

// ---------------------------------------------------------------------------
// Dimension detection and the crude bound
// ---------------------------------------------------------------------------

struct DimensionCertificate {
  /// Inferred dimension window; lo == hi when the diagonal pins dim V.
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  /// a maximizing F(a,a) / lo^(2a) — the tightest cell of the upper bound.
  int upper_tight_a = 0;
  /// a witnessing F(a,a) > (lo-1)^(2a) — what rules out lo - 1.
  int lower_witness_a = 0;

  bool pinned() const { return lo == hi; }
};

/// Least d with F(a,a) <= d^(2a) for all recorded a >= 1 and
/// F(a,a) > (d-1)^(2a) for some recorded a. The minimality of d makes the
/// second condition automatic for exact data; it can fail for noisy input,
/// in which case the certificate carries a bracket instead of a point.
DimensionCertificate infer_dimension(const MomentTable& table, int amax);

/// Same inference on a real-valued diagonal (index a = 0..amax), for
/// empirical moment data.
DimensionCertificate infer_dimension_real(const std::vector<double>& diagonal);

struct CrudeBoundReport {
  int n = 0;
  int amax = 0;
  /// Least N such that F(a,a) > (n-1)^(2a) for all N < a <= amax.
  int threshold = 0;
  /// Whether the inequality holds at the window end a = amax.
  bool holds_at_end = false;
  /// F(a,a) for a = 1..amax.
  std::vector<Int> diagonal;
  /// F(a,a) / (n-1)^(2a) as doubles, for the report.
  std::vector<double> ratios;
  /// Smallest a0 with the ratio strictly increasing on [a0, amax]; exact
  /// cross-multiplied comparison, no floating point.
  int increasing_from = 0;
};

CrudeBoundReport crude_bound_threshold(int n, int amax);

/// dim End_G(V) = F(1,1) = 1 detects irreducibility.
bool check_irreducible(const GroupSpec& g, const RepSpec& v);

// ---------------------------------------------------------------------------
// Finite-limit experiment
// ---------------------------------------------------------------------------

enum class FiniteLimitTarget { TorusWeightOne, SpecialUnitary2Std };

struct FiniteLimitRow {
  std::string subgroup;
  std::optional<int> index;  // separation index from the target, if <= bound
  std::optional<std::pair<int, int>> witness;
};

/// Contrasts the toric and nontoric cases: cyclic approximants separate from
/// U(1) at an index that grows without bound, while every finite subgroup of
/// SU(2) separates from (SU(2), std) at a bounded index.
struct FiniteLimitReport {
  FiniteLimitTarget target;
  int bound = 0;
  std::vector<FiniteLimitRow> rows;
  std::optional<int> max_index;
  std::string max_index_subgroup;
};

FiniteLimitReport finite_limit_experiment(FiniteLimitTarget target,
                                          const std::vector<std::string>& subgroups,
                                          int bound);

}  // namespace stm
