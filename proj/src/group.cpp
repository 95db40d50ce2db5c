#include "stm/group.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "stm/error.hpp"

namespace stm {

namespace {

constexpr int kMaxProductDepth = 4;
constexpr std::int64_t kMaxDerivedDim = 200000;  // guard for Exterior/Symmetric blowup

int product_depth(const GroupSpec& g) {
  if (const auto* p = std::get_if<ProductSpec>(&g.node)) {
    int d = 0;
    for (const auto& f : p->factors) d = std::max(d, product_depth(f));
    return d + 1;
  }
  return 0;
}

void validate_finite(const FiniteClassesSpec& fc) {
  if (fc.modulus < 1) raise(ErrorKind::InvalidSpec, "finite group modulus must be positive");
  if (fc.order < 1) raise(ErrorKind::InvalidSpec, "finite group order must be positive");
  if (fc.classes.empty()) raise(ErrorKind::InvalidSpec, "finite group needs classes");
  const std::size_t d = fc.classes.front().exponents.size();
  std::int64_t size_sum = 0;
  int identity_classes = 0;
  for (const auto& c : fc.classes) {
    if (c.size < 1) raise(ErrorKind::DataCorrupt, "class size must be positive");
    if (c.exponents.size() != d) {
      raise(ErrorKind::DataCorrupt, "inconsistent exponent lengths across classes");
    }
    bool all_zero = true;
    for (auto e : c.exponents) {
      if (e < 0 || e >= fc.modulus) {
        raise(ErrorKind::DataCorrupt, "class exponent outside [0, modulus)");
      }
      if (e != 0) all_zero = false;
    }
    if (c.size == 1 && all_zero) ++identity_classes;
    size_sum += c.size;
    // |trace| <= dim, checked numerically
    double re = 0, im = 0;
    for (auto e : c.exponents) {
      double phi = 2.0 * std::numbers::pi * static_cast<double>(e) /
                   static_cast<double>(fc.modulus);
      re += std::cos(phi);
      im += std::sin(phi);
    }
    if (std::sqrt(re * re + im * im) > static_cast<double>(d) + 1e-9) {
      raise(ErrorKind::DataCorrupt, "class trace exceeds dimension");
    }
  }
  if (size_sum != fc.order) {
    raise(ErrorKind::DataCorrupt, "class sizes sum to " + std::to_string(size_sum) +
                                      ", order is " + std::to_string(fc.order));
  }
  if (identity_classes != 1) {
    raise(ErrorKind::DataCorrupt, "expected exactly one identity class, found " +
                                      std::to_string(identity_classes));
  }
}

}  // namespace

void validate_group(const GroupSpec& g) {
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, TorusSpec>) {
          if (node.rank < 1) raise(ErrorKind::InvalidSpec, "torus rank must be positive");
        } else if constexpr (std::is_same_v<T, UnitarySpec>) {
          if (node.n < 1) raise(ErrorKind::InvalidSpec, "unitary degree must be positive");
        } else if constexpr (std::is_same_v<T, SpecialUnitarySpec>) {
          if (node.n < 2) raise(ErrorKind::InvalidSpec, "special unitary degree must be >= 2");
        } else if constexpr (std::is_same_v<T, FiniteClassesSpec>) {
          validate_finite(node);
        } else if constexpr (std::is_same_v<T, ProductSpec>) {
          if (node.factors.size() < 2) {
            raise(ErrorKind::InvalidSpec, "product needs at least two factors");
          }
          if (product_depth(g) > kMaxProductDepth) {
            raise(ErrorKind::InvalidSpec, "product nesting exceeds depth 4");
          }
          for (const auto& f : node.factors) validate_group(f);
        }
      },
      g.node);
}

Int group_order(const GroupSpec& g) {
  if (const auto* fc = std::get_if<FiniteClassesSpec>(&g.node)) return Int(fc->order);
  if (const auto* p = std::get_if<ProductSpec>(&g.node)) {
    Int o = 1;
    for (const auto& f : p->factors) o *= group_order(f);
    return o;
  }
  raise(ErrorKind::Unsupported, "order of a positive-dimensional group");
}

bool is_torus(const GroupSpec& g) { return std::holds_alternative<TorusSpec>(g.node); }
bool is_unitary(const GroupSpec& g) { return std::holds_alternative<UnitarySpec>(g.node); }
bool is_special_unitary(const GroupSpec& g) {
  return std::holds_alternative<SpecialUnitarySpec>(g.node);
}
bool is_finite(const GroupSpec& g) {
  return std::holds_alternative<FiniteClassesSpec>(g.node);
}
bool is_product(const GroupSpec& g) { return std::holds_alternative<ProductSpec>(g.node); }

// ---------------------------------------------------------------------------
// Dimension
// ---------------------------------------------------------------------------

namespace {

Int binom_i64_checked(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  return binomial(static_cast<unsigned>(n), static_cast<unsigned>(k));
}

std::int64_t check_dim(const Int& d, const char* what) {
  if (d <= 0) raise(ErrorKind::InvalidSpec, std::string(what) + ": dimension must be positive");
  if (d > kMaxDerivedDim) {
    raise(ErrorKind::Unsupported, std::string(what) + ": derived dimension too large");
  }
  return d.get_si();
}

std::int64_t rep_dim_node(const GroupSpec& g, const RepSpec& v);

std::int64_t atom_dim(const GroupSpec& g, const RepSpec& v) {
  return std::visit(
      [&](const auto& node) -> std::int64_t {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, RepStd>) {
          if (const auto* u = std::get_if<UnitarySpec>(&g.node)) return u->n;
          if (const auto* su = std::get_if<SpecialUnitarySpec>(&g.node)) return su->n;
          raise(ErrorKind::InvalidSpec, "Std atom needs a unitary or special unitary group");
        } else if constexpr (std::is_same_v<T, RepTorusWeights>) {
          const auto* t = std::get_if<TorusSpec>(&g.node);
          if (!t) raise(ErrorKind::InvalidSpec, "TorusWeights atom needs a torus group");
          if (node.weights.empty()) {
            raise(ErrorKind::InvalidSpec, "TorusWeights needs at least one weight");
          }
          for (const auto& w : node.weights) {
            if (static_cast<int>(w.size()) != t->rank) {
              raise(ErrorKind::InvalidSpec, "torus weight length differs from rank");
            }
          }
          return static_cast<std::int64_t>(node.weights.size());
        } else if constexpr (std::is_same_v<T, RepFiniteGiven>) {
          const auto* fc = std::get_if<FiniteClassesSpec>(&g.node);
          if (!fc) raise(ErrorKind::InvalidSpec, "FiniteGiven atom needs a finite group");
          if (fc->classes.empty()) raise(ErrorKind::InvalidSpec, "finite group has no classes");
          return static_cast<std::int64_t>(fc->classes.front().exponents.size());
        } else {
          raise(ErrorKind::Internal, "atom_dim called on a non-atom");
        }
      },
      v.node);
}

std::int64_t rep_dim_node(const GroupSpec& g, const RepSpec& v) {
  return std::visit(
      [&](const auto& node) -> std::int64_t {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, RepStd> || std::is_same_v<T, RepTorusWeights> ||
                      std::is_same_v<T, RepFiniteGiven>) {
          return atom_dim(g, v);
        } else if constexpr (std::is_same_v<T, RepDual>) {
          return rep_dim_node(g, *node.of);
        } else if constexpr (std::is_same_v<T, RepDirectSum>) {
          if (node.summands.empty()) raise(ErrorKind::InvalidSpec, "empty direct sum");
          Int d = 0;
          for (const auto& s : node.summands) d += rep_dim_node(g, *s);
          return check_dim(d, "direct sum");
        } else if constexpr (std::is_same_v<T, RepTensor>) {
          if (node.factors.empty()) raise(ErrorKind::InvalidSpec, "empty tensor product");
          Int d = 1;
          for (const auto& f : node.factors) d *= rep_dim_node(g, *f);
          return check_dim(d, "tensor product");
        } else if constexpr (std::is_same_v<T, RepExterior>) {
          if (node.k < 0) raise(ErrorKind::InvalidSpec, "exterior power degree must be >= 0");
          Int d = binom_i64_checked(rep_dim_node(g, *node.of), node.k);
          return check_dim(d, "exterior power");
        } else if constexpr (std::is_same_v<T, RepSymmetric>) {
          if (node.k < 0) raise(ErrorKind::InvalidSpec, "symmetric power degree must be >= 0");
          std::int64_t base = rep_dim_node(g, *node.of);
          Int d = binom_i64_checked(base + node.k - 1, node.k);
          return check_dim(d, "symmetric power");
        } else if constexpr (std::is_same_v<T, RepExternalTensor>) {
          const auto* p = std::get_if<ProductSpec>(&g.node);
          if (!p) raise(ErrorKind::InvalidSpec, "ExternalTensor needs a product group");
          if (p->factors.size() != node.legs.size()) {
            raise(ErrorKind::InvalidSpec,
                  "ExternalTensor must have exactly one leg per product factor");
          }
          Int d = 1;
          for (std::size_t i = 0; i < node.legs.size(); ++i) {
            d *= rep_dim_node(p->factors[i], *node.legs[i]);
          }
          return check_dim(d, "external tensor");
        }
      },
      v.node);
}

}  // namespace

std::int64_t rep_dim(const GroupSpec& g, const RepSpec& v) { return rep_dim_node(g, v); }

// ---------------------------------------------------------------------------
// Torus restriction
// ---------------------------------------------------------------------------

namespace {

int torus_rank_of(const GroupSpec& g) {
  return std::visit(
      [&](const auto& node) -> int {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, TorusSpec>) {
          return node.rank;
        } else if constexpr (std::is_same_v<T, UnitarySpec>) {
          return node.n;
        } else if constexpr (std::is_same_v<T, SpecialUnitarySpec>) {
          return node.n;
        } else if constexpr (std::is_same_v<T, ProductSpec>) {
          int r = 0;
          for (const auto& f : node.factors) r += torus_rank_of(f);
          return r;
        } else {
          raise(ErrorKind::InvalidSpec,
                "torus restriction needs a torus, unitary, special unitary or product group");
        }
      },
      g.node);
}

WeightPoly restrict_node(const GroupSpec& g, const RepSpec& v);

/// Weight multiset of Exterior(k): DP over individual weight occurrences,
/// each used at most once (elementary symmetric expansion).
WeightPoly exterior_weights(const WeightPoly& base, int k) {
  const int rank = base.rank();
  if (k == 0) return WeightPoly::one(rank);
  std::vector<WeightPoly> e(static_cast<std::size_t>(k) + 1, WeightPoly(rank));
  e[0] = WeightPoly::one(rank);
  for (const auto& [w, mult] : base.terms()) {
    WeightPoly mono = WeightPoly::from_terms(rank, {{w, Int(1)}});
    // mult must be a small nonnegative integer: it is a weight multiplicity
    if (mult < 0) raise(ErrorKind::Internal, "negative weight multiplicity");
    unsigned long reps = mpz_get_ui(mult.get_mpz_t());
    for (unsigned long r = 0; r < reps; ++r) {
      for (int j = k; j >= 1; --j) {
        e[j] = e[j].add(e[j - 1].multiply(mono));
      }
    }
  }
  return e[static_cast<std::size_t>(k)];
}

/// Weight multiset of Symmetric(k): each occurrence reusable without bound
/// (complete homogeneous expansion).
WeightPoly symmetric_weights(const WeightPoly& base, int k) {
  const int rank = base.rank();
  if (k == 0) return WeightPoly::one(rank);
  std::vector<WeightPoly> h(static_cast<std::size_t>(k) + 1, WeightPoly(rank));
  h[0] = WeightPoly::one(rank);
  for (const auto& [w, mult] : base.terms()) {
    WeightPoly mono = WeightPoly::from_terms(rank, {{w, Int(1)}});
    if (mult < 0) raise(ErrorKind::Internal, "negative weight multiplicity");
    unsigned long reps = mpz_get_ui(mult.get_mpz_t());
    for (unsigned long r = 0; r < reps; ++r) {
      for (int j = 1; j <= k; ++j) {
        h[j] = h[j].add(h[j - 1].multiply(mono));
      }
    }
  }
  return h[static_cast<std::size_t>(k)];
}

/// Embeds a rank-r polynomial into coordinates [offset, offset+r) of a
/// rank-R lattice.
WeightPoly embed_block(const WeightPoly& p, int total_rank, int offset) {
  std::vector<WeightPoly::Term> terms;
  terms.reserve(p.term_count());
  for (const auto& [w, c] : p.terms()) {
    WeightVector big(total_rank, 0);
    for (std::size_t i = 0; i < w.size(); ++i) big[offset + static_cast<int>(i)] = w[i];
    terms.emplace_back(std::move(big), c);
  }
  return WeightPoly::from_terms(total_rank, std::move(terms));
}

WeightPoly restrict_node(const GroupSpec& g, const RepSpec& v) {
  return std::visit(
      [&](const auto& node) -> WeightPoly {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, RepStd>) {
          int n = 0;
          if (const auto* u = std::get_if<UnitarySpec>(&g.node)) {
            n = u->n;
          } else if (const auto* su = std::get_if<SpecialUnitarySpec>(&g.node)) {
            n = su->n;
          } else {
            raise(ErrorKind::InvalidSpec, "Std atom needs a unitary or special unitary group");
          }
          std::vector<WeightVector> ws;
          ws.reserve(static_cast<std::size_t>(n));
          for (int i = 0; i < n; ++i) {
            WeightVector e(n, 0);
            e[i] = 1;
            ws.push_back(std::move(e));
          }
          return WeightPoly::from_weights(n, ws);
        } else if constexpr (std::is_same_v<T, RepTorusWeights>) {
          const auto* t = std::get_if<TorusSpec>(&g.node);
          if (!t) raise(ErrorKind::InvalidSpec, "TorusWeights atom needs a torus group");
          atom_dim(g, v);  // validates lengths
          return WeightPoly::from_weights(t->rank, node.weights);
        } else if constexpr (std::is_same_v<T, RepFiniteGiven>) {
          raise(ErrorKind::InvalidSpec, "finite groups have no torus restriction");
        } else if constexpr (std::is_same_v<T, RepDual>) {
          return restrict_node(g, *node.of).dualize();
        } else if constexpr (std::is_same_v<T, RepDirectSum>) {
          if (node.summands.empty()) raise(ErrorKind::InvalidSpec, "empty direct sum");
          WeightPoly acc = restrict_node(g, *node.summands.front());
          for (std::size_t i = 1; i < node.summands.size(); ++i) {
            acc = acc.add(restrict_node(g, *node.summands[i]));
          }
          return acc;
        } else if constexpr (std::is_same_v<T, RepTensor>) {
          if (node.factors.empty()) raise(ErrorKind::InvalidSpec, "empty tensor product");
          WeightPoly acc = restrict_node(g, *node.factors.front());
          for (std::size_t i = 1; i < node.factors.size(); ++i) {
            acc = acc.multiply(restrict_node(g, *node.factors[i]));
          }
          return acc;
        } else if constexpr (std::is_same_v<T, RepExterior>) {
          return exterior_weights(restrict_node(g, *node.of), node.k);
        } else if constexpr (std::is_same_v<T, RepSymmetric>) {
          return symmetric_weights(restrict_node(g, *node.of), node.k);
        } else if constexpr (std::is_same_v<T, RepExternalTensor>) {
          const auto* p = std::get_if<ProductSpec>(&g.node);
          if (!p) raise(ErrorKind::InvalidSpec, "ExternalTensor needs a product group");
          if (p->factors.size() != node.legs.size()) {
            raise(ErrorKind::InvalidSpec,
                  "ExternalTensor must have exactly one leg per product factor");
          }
          const int total = torus_rank_of(g);
          int offset = 0;
          WeightPoly acc = WeightPoly::one(total);
          for (std::size_t i = 0; i < node.legs.size(); ++i) {
            int r = torus_rank_of(p->factors[i]);
            WeightPoly leg = restrict_node(p->factors[i], *node.legs[i]);
            acc = acc.multiply(embed_block(leg, total, offset));
            offset += r;
          }
          return acc;
        }
      },
      v.node);
}

}  // namespace

TorusWeightData torus_restriction(const GroupSpec& g, const RepSpec& v) {
  TorusWeightData data;
  data.rank = torus_rank_of(g);
  data.weights = restrict_node(g, v);
  // character sanity: nonnegative multiplicities summing to dim V
  Int sum = 0;
  for (const auto& [w, c] : data.weights.terms()) {
    if (c < 0) raise(ErrorKind::Internal, "torus restriction produced a virtual character");
    sum += c;
  }
  if (sum != rep_dim(g, v)) {
    raise(ErrorKind::Internal, "torus restriction weight count differs from dim V");
  }
  return data;
}

// ---------------------------------------------------------------------------
// Finite class pushforward
// ---------------------------------------------------------------------------

namespace {

using ExponentList = std::vector<std::int64_t>;

ExponentList derived_exponents(const FiniteClassesSpec& fc, const ExponentList& base,
                               const RepSpec& v);

ExponentList derive_node(const FiniteClassesSpec& fc, const ExponentList& base,
                         const RepSpec& v) {
  const std::int64_t M = fc.modulus;
  return std::visit(
      [&](const auto& node) -> ExponentList {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, RepFiniteGiven>) {
          return base;
        } else if constexpr (std::is_same_v<T, RepDual>) {
          ExponentList out = derive_node(fc, base, *node.of);
          for (auto& e : out) e = (M - e) % M;
          return out;
        } else if constexpr (std::is_same_v<T, RepDirectSum>) {
          ExponentList out;
          for (const auto& s : node.summands) {
            ExponentList part = derive_node(fc, base, *s);
            out.insert(out.end(), part.begin(), part.end());
          }
          if (out.empty()) raise(ErrorKind::InvalidSpec, "empty direct sum");
          return out;
        } else if constexpr (std::is_same_v<T, RepTensor>) {
          if (node.factors.empty()) raise(ErrorKind::InvalidSpec, "empty tensor product");
          ExponentList acc = derive_node(fc, base, *node.factors.front());
          for (std::size_t i = 1; i < node.factors.size(); ++i) {
            ExponentList next = derive_node(fc, base, *node.factors[i]);
            if (acc.size() * next.size() > static_cast<std::size_t>(kMaxDerivedDim)) {
              raise(ErrorKind::Unsupported, "derived finite representation too large");
            }
            ExponentList prod;
            prod.reserve(acc.size() * next.size());
            for (auto a : acc) {
              for (auto b : next) prod.push_back((a + b) % M);
            }
            acc = std::move(prod);
          }
          return acc;
        } else if constexpr (std::is_same_v<T, RepExterior>) {
          ExponentList sub = derive_node(fc, base, *node.of);
          const int d = static_cast<int>(sub.size());
          const int k = node.k;
          if (k < 0) raise(ErrorKind::InvalidSpec, "exterior power degree must be >= 0");
          if (k > d) return {};  // zero rep — rejected by dimension check upstream
          ExponentList out;
          std::vector<int> idx(static_cast<std::size_t>(k));
          // strictly increasing k-subsets
          for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
          for (;;) {
            std::int64_t s = 0;
            for (int i = 0; i < k; ++i) s += sub[static_cast<std::size_t>(idx[i])];
            out.push_back(s % M);
            int pos = k - 1;
            while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == d - k + pos) --pos;
            if (pos < 0) break;
            ++idx[static_cast<std::size_t>(pos)];
            for (int i = pos + 1; i < k; ++i) {
              idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
            }
            if (out.size() > static_cast<std::size_t>(kMaxDerivedDim)) {
              raise(ErrorKind::Unsupported, "derived finite representation too large");
            }
          }
          return out;
        } else if constexpr (std::is_same_v<T, RepSymmetric>) {
          ExponentList sub = derive_node(fc, base, *node.of);
          const int d = static_cast<int>(sub.size());
          const int k = node.k;
          if (k < 0) raise(ErrorKind::InvalidSpec, "symmetric power degree must be >= 0");
          if (k == 0) return {0};
          if (d == 0) return {};
          ExponentList out;
          std::vector<int> idx(static_cast<std::size_t>(k), 0);
          // weakly increasing k-multisets
          for (;;) {
            std::int64_t s = 0;
            for (int i = 0; i < k; ++i) s += sub[static_cast<std::size_t>(idx[i])];
            out.push_back(s % M);
            int pos = k - 1;
            while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == d - 1) --pos;
            if (pos < 0) break;
            ++idx[static_cast<std::size_t>(pos)];
            for (int i = pos + 1; i < k; ++i) {
              idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(pos)];
            }
            if (out.size() > static_cast<std::size_t>(kMaxDerivedDim)) {
              raise(ErrorKind::Unsupported, "derived finite representation too large");
            }
          }
          return out;
        } else {
          raise(ErrorKind::InvalidSpec,
                "representation atom incompatible with a finite-classes group");
        }
      },
      v.node);
}

ExponentList derived_exponents(const FiniteClassesSpec& fc, const ExponentList& base,
                               const RepSpec& v) {
  return derive_node(fc, base, v);
}

}  // namespace

FiniteClassesSpec finite_rep_classes(const FiniteClassesSpec& g, const RepSpec& v) {
  FiniteClassesSpec out;
  out.modulus = g.modulus;
  out.order = g.order;
  out.classes.reserve(g.classes.size());
  for (const auto& c : g.classes) {
    ClassDatum d;
    d.size = c.size;
    d.exponents = derived_exponents(g, c.exponents, v);
    if (d.exponents.empty()) {
      raise(ErrorKind::InvalidSpec, "derived representation has dimension zero");
    }
    out.classes.push_back(std::move(d));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Descriptions
// ---------------------------------------------------------------------------

std::string describe_group(const GroupSpec& g) {
  return std::visit(
      [&](const auto& node) -> std::string {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, TorusSpec>) {
          return "T(" + std::to_string(node.rank) + ")";
        } else if constexpr (std::is_same_v<T, UnitarySpec>) {
          return "U(" + std::to_string(node.n) + ")";
        } else if constexpr (std::is_same_v<T, SpecialUnitarySpec>) {
          return "SU(" + std::to_string(node.n) + ")";
        } else if constexpr (std::is_same_v<T, FiniteClassesSpec>) {
          return "finite[order=" + std::to_string(node.order) +
                 ",classes=" + std::to_string(node.classes.size()) + "]";
        } else {
          std::string s = "(";
          for (std::size_t i = 0; i < node.factors.size(); ++i) {
            if (i) s += " x ";
            s += describe_group(node.factors[i]);
          }
          return s + ")";
        }
      },
      g.node);
}

std::string describe_rep(const RepSpec& v) {
  return std::visit(
      [&](const auto& node) -> std::string {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, RepStd>) {
          return "std";
        } else if constexpr (std::is_same_v<T, RepTorusWeights>) {
          return "weights[" + std::to_string(node.weights.size()) + "]";
        } else if constexpr (std::is_same_v<T, RepFiniteGiven>) {
          return "given";
        } else if constexpr (std::is_same_v<T, RepDual>) {
          return "dual(" + describe_rep(*node.of) + ")";
        } else if constexpr (std::is_same_v<T, RepDirectSum>) {
          std::string s = "sum(";
          for (std::size_t i = 0; i < node.summands.size(); ++i) {
            if (i) s += ",";
            s += describe_rep(*node.summands[i]);
          }
          return s + ")";
        } else if constexpr (std::is_same_v<T, RepTensor>) {
          std::string s = "tensor(";
          for (std::size_t i = 0; i < node.factors.size(); ++i) {
            if (i) s += ",";
            s += describe_rep(*node.factors[i]);
          }
          return s + ")";
        } else if constexpr (std::is_same_v<T, RepExterior>) {
          return "ext^" + std::to_string(node.k) + "(" + describe_rep(*node.of) + ")";
        } else if constexpr (std::is_same_v<T, RepSymmetric>) {
          return "sym^" + std::to_string(node.k) + "(" + describe_rep(*node.of) + ")";
        } else {
          std::string s = "boxtensor(";
          for (std::size_t i = 0; i < node.legs.size(); ++i) {
            if (i) s += ",";
            s += describe_rep(*node.legs[i]);
          }
          return s + ")";
        }
      },
      v.node);
}

}  // namespace stm
