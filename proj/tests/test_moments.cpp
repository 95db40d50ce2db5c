#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "stm/catalog.hpp"
#include "stm/error.hpp"
#include "stm/moments.hpp"
#include "stm/parallel.hpp"

using namespace stm;

TEST_CASE("weight-one circle group: F(a,b) is the Kronecker delta") {
  GroupSpec g = GroupSpec::torus(1);
  auto v = RepSpec::torus_weights({{1}});
  for (int a = 0; a <= 5; ++a) {
    for (int b = 0; b <= 5; ++b) {
      CHECK(moment(g, *v, a, b) == (a == b ? 1 : 0));
    }
  }
}

TEST_CASE("torus invariants: worked examples") {
  // weights [1]: (x)^4 (1/x)^4 has constant term 1
  auto w1 = torus_restriction(GroupSpec::torus(1), *RepSpec::torus_weights({{1}}));
  CHECK(torus_invariants(w1, 4, 4) == 1);
  // weights [1,-1]: <(x+1/x)^2, constant> = 2
  auto wpm = torus_restriction(GroupSpec::torus(1), *RepSpec::torus_weights({{1}, {-1}}));
  CHECK(torus_invariants(wpm, 1, 1) == 2);
  // rank 2, weights e1,e2: constant term of ((x+y)(1/x+1/y))^2; direct
  // expansion gives sum_k C(2,k)^2 = 6
  auto we = torus_restriction(GroupSpec::torus(2),
                              *RepSpec::torus_weights({{1, 0}, {0, 1}}));
  CHECK(torus_invariants(we, 2, 2) == 6);
  Int direct = 0;
  for (unsigned k = 0; k <= 2; ++k) direct += binomial(2, k) * binomial(2, k);
  CHECK(torus_invariants(we, 2, 2) == direct);
}

TEST_CASE("factorial identity on the unitary diagonal") {
  for (int n = 2; n <= 5; ++n) {
    GroupSpec g = GroupSpec::unitary(n);
    auto v = RepSpec::std_rep();
    for (int a = 0; a <= n; ++a) {
      CHECK(moment(g, *v, a, a) == factorial(static_cast<unsigned>(a)));
    }
  }
}

TEST_CASE("unitary diagonal equals the tableau-pair count") {
  for (int n = 2; n <= 3; ++n) {
    GroupSpec g = GroupSpec::unitary(n);
    auto v = RepSpec::std_rep();
    auto table = moment_table(g, *v, 8, 8);
    for (int a = 0; a <= 8; ++a) {
      CHECK(table.at(a, a) == oracle::syt_diagonal_moment(n, a));
    }
  }
}

TEST_CASE("U(2) diagonal 1..4 is the Catalan sequence") {
  GroupSpec g = GroupSpec::unitary(2);
  auto v = RepSpec::std_rep();
  CHECK(moment(g, *v, 1, 1) == 1);
  CHECK(moment(g, *v, 2, 2) == 2);
  CHECK(moment(g, *v, 3, 3) == 5);
  CHECK(moment(g, *v, 4, 4) == 14);
}

TEST_CASE("SU(2) invariants match the ballot-walk oracle") {
  GroupSpec g = GroupSpec::special_unitary(2);
  auto v = RepSpec::std_rep();
  for (int a = 0; a <= 8; ++a) {
    for (int b = 0; b <= 8 - a; ++b) {
      CHECK(moment(g, *v, a, b) == oracle::ballot_walks(a + b));
    }
  }
}

TEST_CASE("SU(3) pure tensor powers count rectangular tableaux") {
  // invariants of std^(x)3k under SU(3) are the trivial-twist multiplicities
  // f^(k,k,k): 1, 5, 42, 462 — an independent route through the hook-length
  // oracle that exercises the determinant-twist sum off the diagonal
  GroupSpec g = GroupSpec::special_unitary(3);
  auto v = RepSpec::std_rep();
  for (int k = 1; k <= 4; ++k) {
    CHECK(moment(g, *v, 3 * k, 0) == oracle::syt_count({k, k, k}));
    CHECK(moment(g, *v, 3 * k - 1, 0) == 0);
    CHECK(moment(g, *v, 3 * k - 2, 0) == 0);
  }
}

TEST_CASE("subgroup inequality extends to derived representations") {
  GroupSpec su2 = GroupSpec::special_unitary(2);
  CatalogEntry ico = catalog_load("binary_icosahedral");
  const auto& fc = std::get<FiniteClassesSpec>(ico.group.node);
  auto sym2_cont = RepSpec::symmetric(2, RepSpec::std_rep());
  auto sym2_fin = RepSpec::symmetric(2, RepSpec::finite_given());
  auto ten_cont = RepSpec::tensor({RepSpec::std_rep(), RepSpec::dual(RepSpec::std_rep())});
  auto ten_fin = RepSpec::tensor({RepSpec::finite_given(), RepSpec::dual(RepSpec::finite_given())});
  for (int a = 0; a <= 3; ++a) {
    for (int b = 0; b <= 3; ++b) {
      CHECK(moment(su2, *sym2_cont, a, b) <= moment(ico.group, *sym2_fin, a, b));
      CHECK(moment(su2, *ten_cont, a, b) <= moment(ico.group, *ten_fin, a, b));
    }
  }
  // and the finite side still matches its floating oracle on a derived rep
  auto derived = finite_rep_classes(fc, *sym2_fin);
  for (int a = 0; a <= 3; ++a) {
    CHECK(finite_invariants(derived, a, a) == oracle::class_sum_moment(derived, a, a));
  }
}

TEST_CASE("SU(2) determinant twists: F(4,0) = 2, F(2,0) = 1, odd degrees vanish") {
  GroupSpec g = GroupSpec::special_unitary(2);
  auto v = RepSpec::std_rep();
  auto w = torus_restriction(g, *v);
  CHECK(weyl_invariants(true, 2, w, 4, 0) == 2);
  CHECK(weyl_invariants(true, 2, w, 2, 0) == 1);
  CHECK(weyl_invariants(true, 2, w, 3, 0) == 0);
  CHECK(weyl_invariants(true, 2, w, 2, 2) == 2);
}

TEST_CASE("Weyl evaluator with n = 1 degenerates to the torus evaluator") {
  GroupSpec u1 = GroupSpec::unitary(1);
  GroupSpec t1 = GroupSpec::torus(1);
  // weights [2, 0, -1] over U(1), assembled from Std atoms
  auto v_u1 = RepSpec::direct_sum(
      {RepSpec::tensor({RepSpec::std_rep(), RepSpec::std_rep()}),
       RepSpec::tensor({RepSpec::std_rep(), RepSpec::dual(RepSpec::std_rep())}),
       RepSpec::dual(RepSpec::std_rep())});
  auto v_t1 = RepSpec::torus_weights({{2}, {0}, {-1}});
  auto w_u1 = torus_restriction(u1, *v_u1);
  auto w_t1 = torus_restriction(t1, *v_t1);
  CHECK(w_u1.weights == w_t1.weights);
  for (int a = 0; a <= 4; ++a) {
    for (int b = 0; b <= 4; ++b) {
      CHECK(weyl_invariants(false, 1, w_u1, a, b) == torus_invariants(w_t1, a, b));
    }
  }
}

TEST_CASE("Weyl alternation agrees with direct Weyl integration") {
  // second exact route: Vandermonde-squared constant term; covers
  // off-diagonal cells and derived representations
  for (int n = 2; n <= 3; ++n) {
    GroupSpec g = GroupSpec::unitary(n);
    std::vector<RepPtr> reps{RepSpec::std_rep(),
                             RepSpec::symmetric(2, RepSpec::std_rep()),
                             RepSpec::exterior(2, RepSpec::std_rep()),
                             RepSpec::direct_sum({RepSpec::std_rep(),
                                                  RepSpec::dual(RepSpec::std_rep())})};
    for (const auto& v : reps) {
      auto w = torus_restriction(g, *v);
      for (int a = 0; a <= 4; ++a) {
        for (int b = 0; b <= 4 - a + 1; ++b) {
          CHECK(weyl_invariants(false, n, w, a, b) ==
                oracle::weyl_integration_moment(n, w.weights, a, b));
        }
      }
    }
  }
}

TEST_CASE("cyclic groups: congruence counting") {
  CatalogEntry c5 = catalog_load("cyclic(5)");
  for (int a = 0; a <= 7; ++a) {
    for (int b = 0; b <= 7; ++b) {
      CHECK(moment(c5.group, *c5.rep, a, b) == ((a - b) % 5 == 0 ? 1 : 0));
    }
  }
  CHECK(moment(c5.group, *c5.rep, 6, 1) == 1);
}

TEST_CASE("binary tetrahedral agrees with SU(2) at degree 4") {
  CatalogEntry t = catalog_load("binary_tetrahedral");
  CHECK(moment(t.group, *t.rep, 2, 2) == 2);
  const auto& fc = std::get<FiniteClassesSpec>(t.group.node);
  CHECK(finite_invariants(fc, 2, 2) == oracle::class_sum_moment(fc, 2, 2));
}

TEST_CASE("binary icosahedral: first excess over SU(2) at degree 12") {
  CatalogEntry ico = catalog_load("binary_icosahedral");
  GroupSpec su2 = GroupSpec::special_unitary(2);
  auto v = RepSpec::std_rep();
  Int f_su2 = moment(su2, *v, 6, 6);
  Int f_ico = moment(ico.group, *ico.rep, 6, 6);
  CHECK(f_ico - f_su2 >= 1);
  CHECK(f_ico == oracle::class_sum_moment(std::get<FiniteClassesSpec>(ico.group.node), 6, 6));
  CHECK(f_ico - f_su2 == 1);  // the class-sum oracle pins the excess exactly
}

TEST_CASE("finite invariants agree with the floating class-sum oracle") {
  for (const char* name : {"binary_tetrahedral", "binary_octahedral",
                           "binary_icosahedral", "binary_dihedral(12)",
                           "binary_dihedral(40)", "cyclic(6)"}) {
    CatalogEntry e = catalog_load(name);
    const auto& fc = std::get<FiniteClassesSpec>(e.group.node);
    for (int a = 0; a <= 4; ++a) {
      for (int b = 0; b <= 4; ++b) {
        CHECK(finite_invariants(fc, a, b) == oracle::class_sum_moment(fc, a, b));
      }
    }
  }
}

TEST_CASE("finite invariants stay integral and nonnegative to degree 24") {
  for (const char* name : {"binary_icosahedral", "binary_dihedral(120)", "cyclic(7)"}) {
    CatalogEntry e = catalog_load(name);
    const auto& fc = std::get<FiniteClassesSpec>(e.group.node);
    for (int d = 20; d <= 24; ++d) {
      for (int a = 0; a <= d; ++a) {
        Int v = finite_invariants(fc, a, d - a);  // raises on any violation
        CHECK(v >= 0);
      }
    }
    // spot-check the big end against the floating oracle
    CHECK(finite_invariants(fc, 12, 12) == oracle::class_sum_moment(fc, 12, 12));
  }
}

TEST_CASE("every finite catalog entry stays integral and nonnegative at degree 23, 24") {
  // the evaluator raises on any cyclotomic-coordinate or divisibility
  // violation, so evaluating is the check
  for (const auto& name : catalog_list()) {
    CatalogEntry e = catalog_load(name);
    const auto* fc = std::get_if<FiniteClassesSpec>(&e.group.node);
    if (!fc) continue;
    for (int d = 23; d <= 24; ++d) {
      for (int a = 0; a <= d; ++a) {
        CHECK(finite_invariants(*fc, a, d - a) >= 0);
      }
    }
  }
}

TEST_CASE("table cells are identical across worker counts") {
  CatalogEntry ico = catalog_load("binary_icosahedral");
  int saved = thread_count();
  set_thread_count(1);
  auto serial = moment_table(ico.group, *ico.rep, 7, 7, ico.name);
  set_thread_count(4);
  auto parallel = moment_table(ico.group, *ico.rep, 7, 7, ico.name);
  set_thread_count(saved);
  CHECK(serial.entries == parallel.entries);
}

TEST_CASE("finite invariants beyond the 64-bit fast path") {
  // 40 copies of the weight-1 character of Z/3: trace of class k is
  // 40 zeta^k, so F(a,b) = 40^(a+b) [a == b mod 3] in closed form; the
  // coefficient bound 3 * 40^(a+b) passes 2^62 at a+b >= 12
  CatalogEntry c3 = catalog_load("cyclic(3)");
  const auto& base = std::get<FiniteClassesSpec>(c3.group.node);
  std::vector<RepPtr> copies(40, RepSpec::finite_given());
  auto wide = RepSpec::direct_sum(copies);
  auto fc = finite_rep_classes(base, *wide);
  for (int a = 10; a <= 14; ++a) {
    for (int b = 10; b <= 14; ++b) {
      Int expect = (a - b) % 3 == 0 ? int_pow(Int(40), static_cast<unsigned>(a + b)) : Int(0);
      CHECK(finite_invariants(fc, a, b) == expect);
    }
  }
}

TEST_CASE("product rule: external tensor moments multiply") {
  CatalogEntry c9 = catalog_load("cyclic(9)");
  GroupSpec su2 = GroupSpec::special_unitary(2);
  GroupSpec prod = GroupSpec::product({su2, c9.group});
  auto v = RepSpec::external_tensor({RepSpec::std_rep(), RepSpec::finite_given()});
  auto v_su2 = RepSpec::std_rep();
  for (int a = 0; a <= 5; ++a) {
    for (int b = 0; b <= 5; ++b) {
      Int lhs = moment(prod, *v, a, b);
      Int rhs = moment(su2, *v_su2, a, b) * moment(c9.group, *c9.rep, a, b);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("symmetry F(a,b) = F(b,a) through the single-cell evaluator") {
  std::vector<std::pair<GroupSpec, RepPtr>> cases;
  cases.emplace_back(GroupSpec::unitary(2), RepSpec::std_rep());
  cases.emplace_back(GroupSpec::special_unitary(3), RepSpec::std_rep());
  cases.emplace_back(GroupSpec::torus(1), RepSpec::torus_weights({{1}, {-2}}));
  CatalogEntry ico = catalog_load("binary_icosahedral");
  cases.emplace_back(ico.group, ico.rep);
  for (const auto& [g, v] : cases) {
    for (int a = 0; a <= 4; ++a) {
      for (int b = 0; b < a; ++b) {
        CHECK(moment(g, *v, a, b) == moment(g, *v, b, a));
      }
    }
  }
}

TEST_CASE("table driver: complete box, invariants, and agreement with single cells") {
  GroupSpec g = GroupSpec::special_unitary(2);
  auto v = RepSpec::std_rep();
  auto table = moment_table(g, *v, 6, 5);
  CHECK(table.dim == 2);
  CHECK(table.at(0, 0) == 1);
  for (int a = 0; a <= 6; ++a) {
    for (int b = 0; b <= 5; ++b) {
      CHECK(table.at(a, b) == moment(g, *v, a, b));  // cached == pruned single
      CHECK(table.at(a, b) <= int_pow(Int(2), static_cast<unsigned>(a + b)));
    }
  }
  // anti-diagonal constancy for a self-dual representation
  auto t33 = moment_table(g, *v, 3, 3);
  for (int d = 0; d <= 6; ++d) {
    for (int a = std::max(0, d - 3); a <= std::min(3, d); ++a) {
      CHECK(t33.at(a, d - a) == oracle::ballot_walks(d));
    }
  }
  CHECK(t33.at(3, 3) == 5);
}

TEST_CASE("negative alternating sums raise instead of clamping") {
  // the root character (-1,1) is a valid torus weight datum but not the
  // restriction of any U(2) representation; the trivial-isotypic count
  // would come out negative and must be reported, never zeroed
  TorusWeightData bogus;
  bogus.rank = 2;
  bogus.weights = WeightPoly::from_terms(2, {{{-1, 1}, 1}});
  CHECK_THROWS_AS(weyl_invariants(false, 2, bogus, 1, 0), Error);
}

TEST_CASE("identity-pattern table for the circle group") {
  auto entry = catalog_load("u1-wt1");
  auto table = moment_table(entry.group, *entry.rep, 2, 2);
  for (int a = 0; a <= 2; ++a) {
    for (int b = 0; b <= 2; ++b) {
      CHECK(table.at(a, b) == (a == b ? 1 : 0));
    }
  }
}

TEST_CASE("moment rejects negative exponents and incompatible pairs") {
  GroupSpec g = GroupSpec::unitary(2);
  CHECK_THROWS_AS(moment(g, *RepSpec::std_rep(), -1, 0), Error);
  CHECK_THROWS_AS(moment(g, *RepSpec::finite_given(), 1, 1), Error);
  GroupSpec prod = GroupSpec::product({g, GroupSpec::torus(1)});
  CHECK_THROWS_AS(moment(prod, *RepSpec::std_rep(), 1, 1), Error);
}

TEST_CASE("weyl rank bound is enforced") {
  GroupSpec g = GroupSpec::unitary(7);
  CHECK_THROWS_AS(moment(g, *RepSpec::std_rep(), 1, 1), Error);
}

TEST_CASE("moment tables over derived representations") {
  // adjoint-free sanity: Sym^2 of SU(2) std is the 3-dimensional rep; its
  // invariant count in degree (1,1) is 1
  GroupSpec g = GroupSpec::special_unitary(2);
  auto sym2 = RepSpec::symmetric(2, RepSpec::std_rep());
  CHECK(moment(g, *sym2, 1, 1) == 1);
  CHECK(moment(g, *sym2, 1, 0) == 0);
  CHECK(moment(g, *sym2, 3, 0) == 1);  // sym^2 of su(2) std: one cubic invariant
}

TEST_CASE("subgroup inequality on catalog pairs at low degree") {
  for (const auto& [parent, child] : catalog_subgroup_pairs()) {
    CatalogEntry pg = catalog_load(parent);
    CatalogEntry cg = catalog_load(child);
    for (int a = 0; a <= 3; ++a) {
      for (int b = 0; b <= 3; ++b) {
        CHECK(moment(pg.group, *pg.rep, a, b) <= moment(cg.group, *cg.rep, a, b));
      }
    }
  }
}
