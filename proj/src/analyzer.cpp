#include "stm/analyzer.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "stm/catalog.hpp"
#include "stm/error.hpp"
#include "stm/parallel.hpp"

namespace stm {

namespace {

constexpr int kSeparationBoundLimit = 64;

}  // namespace

int separation_bound_limit() { return kSeparationBoundLimit; }

std::int64_t cell_norm(NormKind norm, int a, int b) {
  return norm == NormKind::TotalDegree ? a + b : std::max(a, b);
}

std::vector<std::pair<int, int>> cells_at_norm(NormKind norm, int level) {
  std::vector<std::pair<int, int>> cells;
  if (norm == NormKind::TotalDegree) {
    for (int a = 0; a <= level; ++a) cells.emplace_back(a, level - a);
  } else {
    for (int a = 0; a < level; ++a) cells.emplace_back(a, level);
    for (int b = 0; b <= level; ++b) cells.emplace_back(level, b);
  }
  // already lexicographic (a ascending, then b) by construction
  return cells;
}

// ---------------------------------------------------------------------------
// Separation
// ---------------------------------------------------------------------------

SeparationReport separation_index(const GroupSpec& g1, const RepSpec& v1,
                                  const GroupSpec& g2, const RepSpec& v2,
                                  NormKind norm, int bound, std::string left_id,
                                  std::string right_id) {
  if (bound < 0 || bound > kSeparationBoundLimit) {
    raise(ErrorKind::InvalidSpec,
          "separation bound must lie in [0, " + std::to_string(kSeparationBoundLimit) + "]");
  }
  auto left = MomentEvaluator::create(g1, v1);
  auto right = MomentEvaluator::create(g2, v2);

  SeparationReport report;
  report.left_id = left_id.empty() ? describe_group(g1) : std::move(left_id);
  report.right_id = right_id.empty() ? describe_group(g2) : std::move(right_id);
  report.norm = norm;
  report.bound = bound;

  for (int level = 0; level <= bound; ++level) {
    auto cells = cells_at_norm(norm, level);
    // evaluate the level concurrently, then take the first disagreement in
    // scan order so the witness matches a sequential scan
    std::vector<std::optional<std::pair<Int, Int>>> values(cells.size());
    std::vector<std::optional<Error>> failures(cells.size());
    parallel_for(cells.size(), [&](std::size_t i) {
      auto [a, b] = cells[i];
      try {
        values[i] = std::make_pair(left->cell(a, b), right->cell(a, b));
      } catch (const Error& e) {
        failures[i] = e;
      }
    });
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (!values[i].has_value()) {
        raise(failures[i]->kind(),
              "cell (" + std::to_string(cells[i].first) + "," +
                  std::to_string(cells[i].second) + "): " + failures[i]->what());
      }
      if (values[i]->first != values[i]->second) {
        report.index = level;
        report.witness = SeparationWitness{cells[i].first, cells[i].second,
                                           values[i]->first, values[i]->second};
        return report;
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Torsion approximants
// ---------------------------------------------------------------------------

namespace {

FiniteClassesSpec cyclic_power_classes(std::int64_t n, int rank,
                                       const WeightPoly& weights) {
  // (Z/n)^rank acting through the weight data: the torsion point k acts on
  // each weight occurrence w with eigenphase <w, k> mod n. Points with equal
  // phase vectors act identically, so the class data describes the image
  // group (each fiber of the quotient has equal size and constant trace,
  // leaving every moment unchanged); this also keeps the identity class
  // unique when the weight map has a kernel.
  double size_estimate = 1;
  for (int i = 0; i < rank; ++i) size_estimate *= static_cast<double>(n);
  if (size_estimate > 1e6) {
    raise(ErrorKind::Unsupported, "torsion approximant order exceeds 10^6 elements");
  }
  std::int64_t points = 1;
  for (int i = 0; i < rank; ++i) points *= n;

  std::set<std::vector<std::int64_t>> distinct;
  std::vector<std::int64_t> point(static_cast<std::size_t>(rank), 0);
  for (std::int64_t idx = 0; idx < points; ++idx) {
    std::int64_t rem = idx;
    for (int i = 0; i < rank; ++i) {
      point[static_cast<std::size_t>(i)] = rem % n;
      rem /= n;
    }
    std::vector<std::int64_t> phases;
    for (const auto& [w, mult] : weights.terms()) {
      std::int64_t phase = 0;
      for (int i = 0; i < rank; ++i) {
        phase += static_cast<std::int64_t>(w[static_cast<std::size_t>(i)]) *
                 point[static_cast<std::size_t>(i)];
      }
      phase %= n;
      if (phase < 0) phase += n;
      unsigned long reps = mpz_get_ui(mult.get_mpz_t());
      for (unsigned long r = 0; r < reps; ++r) phases.push_back(phase);
    }
    distinct.insert(std::move(phases));
  }

  FiniteClassesSpec fc;
  fc.modulus = n;
  fc.order = static_cast<std::int64_t>(distinct.size());
  for (const auto& phases : distinct) fc.classes.push_back({1, phases});
  return fc;
}

/// Total weight degree of a representation node over a rank-1 center: needed
/// to split a unitary factor as SU(n) x U(1). Defined only for nodes whose
/// weights sit in a single degree; a mixed direct sum has no central
/// character and cannot be split.
std::int64_t central_degree(const GroupSpec& g, const RepSpec& v) {
  return std::visit(
      [&](const auto& node) -> std::int64_t {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, RepStd>) {
          return 1;
        } else if constexpr (std::is_same_v<T, RepDual>) {
          return -central_degree(g, *node.of);
        } else if constexpr (std::is_same_v<T, RepDirectSum>) {
          std::int64_t d = central_degree(g, *node.summands.front());
          for (const auto& s : node.summands) {
            if (central_degree(g, *s) != d) {
              raise(ErrorKind::Unsupported,
                    "cannot split a unitary factor: direct sum mixes central characters");
            }
          }
          return d;
        } else if constexpr (std::is_same_v<T, RepTensor>) {
          std::int64_t d = 0;
          for (const auto& f : node.factors) d += central_degree(g, *f);
          return d;
        } else if constexpr (std::is_same_v<T, RepExterior>) {
          return node.k * central_degree(g, *node.of);
        } else if constexpr (std::is_same_v<T, RepSymmetric>) {
          return node.k * central_degree(g, *node.of);
        } else {
          raise(ErrorKind::Unsupported, "unexpected atom under a unitary factor");
        }
      },
      v.node);
}

/// Rebuilds a unitary-factor representation over SU(n) (same expression tree,
/// atoms reused).
RepPtr clone_for_su(const RepSpec& v) {
  return std::visit(
      [&](const auto& node) -> RepPtr {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, RepStd>) {
          return RepSpec::std_rep();
        } else if constexpr (std::is_same_v<T, RepDual>) {
          return RepSpec::dual(clone_for_su(*node.of));
        } else if constexpr (std::is_same_v<T, RepDirectSum>) {
          std::vector<RepPtr> xs;
          for (const auto& s : node.summands) xs.push_back(clone_for_su(*s));
          return RepSpec::direct_sum(std::move(xs));
        } else if constexpr (std::is_same_v<T, RepTensor>) {
          std::vector<RepPtr> xs;
          for (const auto& f : node.factors) xs.push_back(clone_for_su(*f));
          return RepSpec::tensor(std::move(xs));
        } else if constexpr (std::is_same_v<T, RepExterior>) {
          return RepSpec::exterior(node.k, clone_for_su(*node.of));
        } else if constexpr (std::is_same_v<T, RepSymmetric>) {
          return RepSpec::symmetric(node.k, clone_for_su(*node.of));
        } else {
          raise(ErrorKind::Unsupported, "unexpected atom under a unitary factor");
        }
      },
      v.node);
}

struct ApproxFactor {
  GroupSpec group;
  RepPtr rep;
  bool replaced = false;  // contained a torus that became torsion
};

std::vector<ApproxFactor> approximate_factor(const GroupSpec& g, const RepSpec& v,
                                             std::int64_t n);

std::vector<ApproxFactor> approximate_factors(const std::vector<GroupSpec>& factors,
                                              const std::vector<RepPtr>& legs,
                                              std::int64_t n) {
  std::vector<ApproxFactor> out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    auto part = approximate_factor(factors[i], *legs[i], n);
    for (auto& p : part) out.push_back(std::move(p));
  }
  return out;
}

std::vector<ApproxFactor> approximate_factor(const GroupSpec& g, const RepSpec& v,
                                             std::int64_t n) {
  return std::visit(
      [&](const auto& node) -> std::vector<ApproxFactor> {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, TorusSpec>) {
          TorusWeightData data = torus_restriction(g, v);
          FiniteClassesSpec fc = cyclic_power_classes(n, node.rank, data.weights);
          return {{GroupSpec::finite(std::move(fc)), RepSpec::finite_given(), true}};
        } else if constexpr (std::is_same_v<T, UnitarySpec>) {
          // U(m) = (SU(m) x U(1)) / mu_m through (s, z) -> z s; passing to the
          // finite cover leaves every invariant dimension unchanged, so the
          // torsion construction applies to the U(1) part of the cover. The
          // representation must carry a single central character.
          std::int64_t deg = central_degree(g, v);
          std::vector<ApproxFactor> out;
          if (node.n >= 2) {
            out.push_back({GroupSpec::special_unitary(node.n), clone_for_su(v), false});
          }
          // the central U(1) of the cover acts by z^deg; for U(1) itself the
          // whole d-dimensional representation sits on that one weight
          std::int64_t mult = node.n >= 2 ? 1 : rep_dim(g, v);
          WeightPoly wp = WeightPoly::from_terms(
              1, {{WeightVector{static_cast<std::int32_t>(deg)}, Int(mult)}});
          FiniteClassesSpec fc = cyclic_power_classes(n, 1, wp);
          out.push_back({GroupSpec::finite(std::move(fc)), RepSpec::finite_given(), true});
          return out;
        } else if constexpr (std::is_same_v<T, SpecialUnitarySpec>) {
          return {{g, std::make_shared<RepSpec>(v), false}};
        } else if constexpr (std::is_same_v<T, FiniteClassesSpec>) {
          return {{g, std::make_shared<RepSpec>(v), false}};
        } else {
          const auto* xt = std::get_if<RepExternalTensor>(&v.node);
          if (!xt || xt->legs.size() != node.factors.size()) {
            raise(ErrorKind::InvalidSpec,
                  "a product group requires an ExternalTensor representation");
          }
          return approximate_factors(node.factors, xt->legs, n);
        }
      },
      g.node);
}

}  // namespace

TorsionApproximant torsion_approximant(const GroupSpec& g, const RepSpec& v,
                                       std::int64_t n, std::string base_id) {
  if (n < 1) raise(ErrorKind::InvalidSpec, "torsion level must be positive");
  validate_group(g);
  rep_dim(g, v);
  auto factors = approximate_factor(g, v, n);
  bool any_replaced = false;
  for (const auto& f : factors) any_replaced |= f.replaced;
  if (!any_replaced) {
    raise(ErrorKind::Unsupported,
          "already semisimple-by-finite: no torus factor to approximate");
  }
  TorsionApproximant out;
  out.base_id = base_id.empty() ? describe_group(g) : std::move(base_id);
  out.n = n;
  if (factors.size() == 1) {
    out.group = std::move(factors.front().group);
    out.rep = std::move(factors.front().rep);
  } else {
    std::vector<GroupSpec> gs;
    std::vector<RepPtr> legs;
    for (auto& f : factors) {
      gs.push_back(std::move(f.group));
      legs.push_back(std::move(f.rep));
    }
    out.group = GroupSpec::product(std::move(gs));
    out.rep = RepSpec::external_tensor(std::move(legs));
  }
  validate_group(out.group);
  if (rep_dim(out.group, *out.rep) != rep_dim(g, v)) {
    raise(ErrorKind::Internal, "torsion approximant changed the representation dimension");
  }
  return out;
}

TorsionAgreementReport verify_torsion_agreement(const GroupSpec& g, const RepSpec& v,
                                                std::int64_t n, int degree,
                                                std::string base_id) {
  if (degree < 0) raise(ErrorKind::InvalidSpec, "degree must be >= 0");
  TorsionApproximant approx = torsion_approximant(g, v, n, base_id);
  auto base_eval = MomentEvaluator::create(g, v);
  auto approx_eval = MomentEvaluator::create(approx.group, *approx.rep);

  TorsionAgreementReport report;
  report.base_id = approx.base_id;
  report.n = n;
  report.degree = degree;
  for (int level = 0; level <= degree; ++level) {
    for (auto [a, b] : cells_at_norm(NormKind::TotalDegree, level)) {
      TorsionCell cell;
      cell.a = a;
      cell.b = b;
      cell.base_value = base_eval->cell(a, b);
      cell.approx_value = approx_eval->cell(a, b);
      cell.agree = cell.base_value == cell.approx_value;
      if (!cell.agree && !report.first_disagreement_norm.has_value()) {
        report.first_disagreement_norm = level;
        report.first_disagreement_cell = {a, b};
      }
      report.cells.push_back(std::move(cell));
    }
  }
  report.full_agreement = !report.first_disagreement_norm.has_value();
  return report;
}

// ---------------------------------------------------------------------------
// Dimension detection
// ---------------------------------------------------------------------------

namespace {

constexpr std::int64_t kDimScanLimit = 4096;

template <typename Value, typename Exceeds, typename RatioGreater>
DimensionCertificate infer_from_diagonal(const std::vector<Value>& diag,
                                         const Exceeds& exceeds,
                                         const RatioGreater& ratio_greater) {
  // diag[a-1] = F(a,a) for a = 1..amax; exceeds(v, d, a) <=> v > d^(2a);
  // ratio_greater(v1, a1, v2, a2, d) <=> v1/d^(2a1) > v2/d^(2a2)
  const int amax = static_cast<int>(diag.size());
  if (amax < 1) raise(ErrorKind::InvalidSpec, "dimension inference needs a >= 1 entries");
  for (std::int64_t d = 1; d <= kDimScanLimit; ++d) {
    bool ok = true;
    for (int a = 1; a <= amax; ++a) {
      if (exceeds(diag[static_cast<std::size_t>(a - 1)], d, a)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    // minimality of d: some a already violated the (d-1) bound
    int witness = 0;
    for (int a = 1; a <= amax; ++a) {
      if (exceeds(diag[static_cast<std::size_t>(a - 1)], d - 1, a)) {
        witness = a;
        break;
      }
    }
    // tightest cell of the upper bound: argmax of F(a,a) / d^(2a)
    int tight = 1;
    for (int a = 2; a <= amax; ++a) {
      if (ratio_greater(diag[static_cast<std::size_t>(a - 1)], a,
                        diag[static_cast<std::size_t>(tight - 1)], tight, d)) {
        tight = a;
      }
    }
    DimensionCertificate cert;
    if (witness == 0) {
      // degenerate data: d-1 was never ruled out; report a bracket
      cert.lo = 1;
      cert.hi = d;
      cert.upper_tight_a = tight;
      cert.lower_witness_a = 0;
      return cert;
    }
    cert.lo = d;
    cert.hi = d;
    cert.upper_tight_a = tight;
    cert.lower_witness_a = witness;
    return cert;
  }
  raise(ErrorKind::DataCorrupt,
        "diagonal violates the d^(2a) bound for every d <= " +
            std::to_string(kDimScanLimit));
}

}  // namespace

DimensionCertificate infer_dimension(const MomentTable& table, int amax) {
  if (amax > std::min(table.amax, table.bmax)) {
    raise(ErrorKind::InvalidSpec, "table does not reach the requested diagonal");
  }
  std::vector<Int> diag;
  for (int a = 1; a <= amax; ++a) diag.push_back(table.at(a, a));
  return infer_from_diagonal(
      diag,
      [](const Int& v, std::int64_t d, int a) {
        return v > int_pow(Int(d), static_cast<unsigned>(2 * a));
      },
      [](const Int& v1, int a1, const Int& v2, int a2, std::int64_t d) {
        return v1 * int_pow(Int(d), static_cast<unsigned>(2 * a2)) >
               v2 * int_pow(Int(d), static_cast<unsigned>(2 * a1));
      });
}

DimensionCertificate infer_dimension_real(const std::vector<double>& diagonal) {
  std::vector<double> diag(diagonal.begin() + std::min<std::size_t>(1, diagonal.size()),
                           diagonal.end());
  return infer_from_diagonal(
      diag,
      [](double v, std::int64_t d, int a) {
        return v > std::pow(static_cast<double>(d), 2.0 * a);
      },
      [](double v1, int a1, double v2, int a2, std::int64_t d) {
        double base = 2.0 * std::log(static_cast<double>(d));
        return std::log(std::max(v1, 1e-300)) - a1 * base >
               std::log(std::max(v2, 1e-300)) - a2 * base;
      });
}

// ---------------------------------------------------------------------------
// Crude bound
// ---------------------------------------------------------------------------

CrudeBoundReport crude_bound_threshold(int n, int amax) {
  if (n < 2) raise(ErrorKind::InvalidSpec, "crude bound needs a unitary rank >= 2");
  if (amax < 1 || amax > 20) {
    raise(ErrorKind::InvalidSpec, "crude bound window must lie in [1, 20]");
  }
  GroupSpec g = GroupSpec::unitary(n);
  RepPtr v = RepSpec::std_rep();
  auto table = moment_table(g, *v, amax, amax);

  CrudeBoundReport report;
  report.n = n;
  report.amax = amax;
  const Int base = n - 1;
  std::vector<Int> bounds;  // (n-1)^(2a)
  for (int a = 1; a <= amax; ++a) {
    report.diagonal.push_back(table.at(a, a));
    bounds.push_back(int_pow(base, static_cast<unsigned>(2 * a)));
  }
  int last_violation = 0;
  for (int a = 1; a <= amax; ++a) {
    if (report.diagonal[static_cast<std::size_t>(a - 1)] <=
        bounds[static_cast<std::size_t>(a - 1)]) {
      last_violation = a;
    }
  }
  report.threshold = last_violation;
  report.holds_at_end =
      report.diagonal.back() > bounds.back();
  for (int a = 1; a <= amax; ++a) {
    Rat ratio(report.diagonal[static_cast<std::size_t>(a - 1)],
              bounds[static_cast<std::size_t>(a - 1)]);
    report.ratios.push_back(ratio.get_d());
  }
  // strictly increasing tail, compared exactly: F(a+1) * (n-1)^(2a) >
  // F(a) * (n-1)^(2a+2)
  int from = amax;
  for (int a = amax - 1; a >= 1; --a) {
    Int lhs = report.diagonal[static_cast<std::size_t>(a)] *
              bounds[static_cast<std::size_t>(a - 1)];
    Int rhs = report.diagonal[static_cast<std::size_t>(a - 1)] *
              bounds[static_cast<std::size_t>(a)];
    if (lhs > rhs) {
      from = a;
    } else {
      break;
    }
  }
  report.increasing_from = from;
  return report;
}

bool check_irreducible(const GroupSpec& g, const RepSpec& v) {
  return moment(g, v, 1, 1) == 1;
}

// ---------------------------------------------------------------------------
// Finite-limit experiment
// ---------------------------------------------------------------------------

FiniteLimitReport finite_limit_experiment(FiniteLimitTarget target,
                                          const std::vector<std::string>& subgroups,
                                          int bound) {
  FiniteLimitReport report;
  report.target = target;
  report.bound = bound;

  CatalogEntry base = target == FiniteLimitTarget::TorusWeightOne
                          ? catalog_load("u1-wt1")
                          : catalog_load("su2-std");

  std::vector<std::string> names = subgroups;
  if (names.empty()) {
    if (target == FiniteLimitTarget::TorusWeightOne) {
      for (int n = 3; n <= 12; ++n) names.push_back("cyclic(" + std::to_string(n) + ")");
    } else {
      for (int n = 1; n <= 30; ++n) {
        names.push_back("binary_dihedral(" + std::to_string(4 * n) + ")");
      }
      names.push_back("binary_tetrahedral");
      names.push_back("binary_octahedral");
      names.push_back("binary_icosahedral");
    }
  }

  for (const auto& name : names) {
    CatalogEntry sub = catalog_load(name);
    SeparationReport sep =
        separation_index(base.group, *base.rep, sub.group, *sub.rep,
                         NormKind::TotalDegree, bound, base.name, sub.name);
    FiniteLimitRow row;
    row.subgroup = name;
    row.index = sep.index;
    if (sep.witness) row.witness = {sep.witness->a, sep.witness->b};
    if (sep.index && (!report.max_index || *sep.index > *report.max_index)) {
      report.max_index = sep.index;
      report.max_index_subgroup = name;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace stm
