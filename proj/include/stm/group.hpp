#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "stm/weight_poly.hpp"

namespace stm {

// ---------------------------------------------------------------------------
// Group descriptions
// ---------------------------------------------------------------------------

struct TorusSpec {
  int rank = 1;
};

struct UnitarySpec {
  int n = 1;
};

struct SpecialUnitarySpec {
  int n = 2;
};

/// One conjugacy class of a finite group, given by its size and the
/// eigenphase exponents of a class representative on V: the eigenvalues are
/// e^{2*pi*i*e_j/M} for the owning spec's common modulus M. Class data is all
/// the moment engine ever needs from a finite group — roots of unity keep the
/// arithmetic exact.
struct ClassDatum {
  std::int64_t size = 1;
  std::vector<std::int64_t> exponents;
};

struct FiniteClassesSpec {
  std::int64_t modulus = 1;
  std::int64_t order = 1;
  std::vector<ClassDatum> classes;
};

struct GroupSpec;

struct ProductSpec {
  std::vector<GroupSpec> factors;
};

struct GroupSpec {
  std::variant<TorusSpec, UnitarySpec, SpecialUnitarySpec, FiniteClassesSpec,
               ProductSpec>
      node;

  static GroupSpec torus(int rank) { return {TorusSpec{rank}}; }
  static GroupSpec unitary(int n) { return {UnitarySpec{n}}; }
  static GroupSpec special_unitary(int n) { return {SpecialUnitarySpec{n}}; }
  static GroupSpec finite(FiniteClassesSpec fc) { return {std::move(fc)}; }
  static GroupSpec product(std::vector<GroupSpec> factors) {
    return {ProductSpec{std::move(factors)}};
  }
};

/// Validates every structural invariant: FiniteClasses class sizes summing to
/// the order, a unique identity class, exponents in [0, M), uniform exponent
/// length, numeric |trace| <= dim to 1e-9; positive ranks; Product arity >= 2
/// and nesting depth <= 4. Throws ErrorKind::InvalidSpec / DataCorrupt.
void validate_group(const GroupSpec& g);

/// Total Haar-volume style order: only defined for finite specs (products of
/// FiniteClasses). Throws otherwise.
Int group_order(const GroupSpec& g);

// ---------------------------------------------------------------------------
// Representation expressions
// ---------------------------------------------------------------------------

struct RepSpec;
using RepPtr = std::shared_ptr<const RepSpec>;

struct RepStd {};                                    // natural rep of U(n)/SU(n)
struct RepTorusWeights {                             // explicit torus character
  std::vector<WeightVector> weights;                 // multiplicity = repetition
};
struct RepFiniteGiven {};                            // eigenphases stored in the group
struct RepDual {
  RepPtr of;
};
struct RepDirectSum {
  std::vector<RepPtr> summands;
};
struct RepTensor {
  std::vector<RepPtr> factors;
};
struct RepExterior {
  int k = 1;
  RepPtr of;
};
struct RepSymmetric {
  int k = 1;
  RepPtr of;
};
struct RepExternalTensor {                           // one leg per Product factor
  std::vector<RepPtr> legs;
};

struct RepSpec {
  std::variant<RepStd, RepTorusWeights, RepFiniteGiven, RepDual, RepDirectSum,
               RepTensor, RepExterior, RepSymmetric, RepExternalTensor>
      node;

  static RepPtr std_rep() { return std::make_shared<RepSpec>(RepSpec{RepStd{}}); }
  static RepPtr torus_weights(std::vector<WeightVector> ws) {
    return std::make_shared<RepSpec>(RepSpec{RepTorusWeights{std::move(ws)}});
  }
  static RepPtr finite_given() {
    return std::make_shared<RepSpec>(RepSpec{RepFiniteGiven{}});
  }
  static RepPtr dual(RepPtr of) {
    return std::make_shared<RepSpec>(RepSpec{RepDual{std::move(of)}});
  }
  static RepPtr direct_sum(std::vector<RepPtr> xs) {
    return std::make_shared<RepSpec>(RepSpec{RepDirectSum{std::move(xs)}});
  }
  static RepPtr tensor(std::vector<RepPtr> xs) {
    return std::make_shared<RepSpec>(RepSpec{RepTensor{std::move(xs)}});
  }
  static RepPtr exterior(int k, RepPtr of) {
    return std::make_shared<RepSpec>(RepSpec{RepExterior{k, std::move(of)}});
  }
  static RepPtr symmetric(int k, RepPtr of) {
    return std::make_shared<RepSpec>(RepSpec{RepSymmetric{k, std::move(of)}});
  }
  static RepPtr external_tensor(std::vector<RepPtr> legs) {
    return std::make_shared<RepSpec>(RepSpec{RepExternalTensor{std::move(legs)}});
  }
};

/// Dimension of the representation over the given group; validates that every
/// atom is compatible with the group variant (Std needs U(n)/SU(n),
/// FiniteGiven needs FiniteClasses, ExternalTensor legs must match Product
/// factors one-to-one). Throws ErrorKind::InvalidSpec on mismatch.
std::int64_t rep_dim(const GroupSpec& g, const RepSpec& v);

// ---------------------------------------------------------------------------
// Derived data
// ---------------------------------------------------------------------------

/// A representation restricted to the maximal torus: the weight multiset as a
/// polynomial with nonnegative coefficients summing to dim V.
///
/// Torus conventions: Torus(r) is its own maximal torus with lattice Z^r;
/// Unitary(n) uses the diagonal torus with Std weights e_1..e_n in Z^n;
/// SpecialUnitary(n) keeps the ambient Z^n lattice (the all-ones direction is
/// handled by the determinant-twist sum in the moment evaluator). Product
/// groups concatenate their factors' coordinate blocks.
struct TorusWeightData {
  int rank = 0;
  WeightPoly weights;
};

TorusWeightData torus_restriction(const GroupSpec& g, const RepSpec& v);

/// Pushes a representation expression through finite class data: Dual negates
/// exponents mod M, DirectSum concatenates, Tensor forms all pairwise sums,
/// Exterior(k) sums over strictly increasing k-subsets, Symmetric(k) over
/// weakly increasing ones. Class sizes, order and modulus are unchanged.
FiniteClassesSpec finite_rep_classes(const FiniteClassesSpec& g, const RepSpec& v);

// ---------------------------------------------------------------------------
// Structure helpers
// ---------------------------------------------------------------------------

bool is_torus(const GroupSpec& g);
bool is_unitary(const GroupSpec& g);
bool is_special_unitary(const GroupSpec& g);
bool is_finite(const GroupSpec& g);
bool is_product(const GroupSpec& g);

/// Human-readable one-line description, e.g. "U(3)" or "finite[order=120]".
std::string describe_group(const GroupSpec& g);
std::string describe_rep(const RepSpec& v);

}  // namespace stm
