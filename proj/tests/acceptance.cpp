// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Every tolerance is pinned in code; the statistical criterion A9
// uses a fixed seed and is therefore replayable bit-for-bit.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "stm/analyzer.hpp"
#include "stm/catalog.hpp"
#include "stm/moments.hpp"
#include "stm/sampler.hpp"

using namespace stm;

namespace {

int g_failures = 0;

void criterion(const std::string& id, const std::string& label,
               const std::function<bool(std::string&)>& body) {
  auto start = std::chrono::steady_clock::now();
  bool ok = false;
  std::string detail;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("[%s] %s %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", id.c_str(),
              label.c_str(), secs, detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

bool a1_factorial(std::string& detail) {
  for (int n = 2; n <= 5; ++n) {
    GroupSpec g = GroupSpec::unitary(n);
    auto v = RepSpec::std_rep();
    for (int a = 0; a <= n; ++a) {
      if (moment(g, *v, a, a) != factorial(static_cast<unsigned>(a))) {
        detail = "U(" + std::to_string(n) + ") diagonal a=" + std::to_string(a);
        return false;
      }
    }
  }
  return true;
}

bool a2_syt(std::string& detail) {
  for (int n = 2; n <= 3; ++n) {
    GroupSpec g = GroupSpec::unitary(n);
    auto v = RepSpec::std_rep();
    auto table = moment_table(g, *v, 10, 10);
    for (int a = 0; a <= 10; ++a) {
      if (table.at(a, a) != oracle::syt_diagonal_moment(n, a)) {
        detail = "n=" + std::to_string(n) + " a=" + std::to_string(a);
        return false;
      }
    }
  }
  return true;
}

bool a3_ballot(std::string& detail) {
  GroupSpec g = GroupSpec::special_unitary(2);
  auto v = RepSpec::std_rep();
  auto table = moment_table(g, *v, 20, 20);
  for (int a = 0; a <= 20; ++a) {
    for (int b = 0; a + b <= 20; ++b) {
      if (table.at(a, b) != oracle::ballot_walks(a + b)) {
        detail = "cell (" + std::to_string(a) + "," + std::to_string(b) + ")";
        return false;
      }
    }
  }
  return true;
}

bool a4_torsion(std::string& detail) {
  CatalogEntry u1 = catalog_load("u1-wt1");
  for (int n = 1; n <= 12; ++n) {
    for (int degree = 0; degree <= 12; ++degree) {
      auto rep = verify_torsion_agreement(u1.group, *u1.rep, n, degree, u1.name);
      if (rep.full_agreement != (n > degree)) {
        detail = "n=" + std::to_string(n) + " degree=" + std::to_string(degree);
        return false;
      }
    }
  }
  return true;
}

bool a5_isolation(std::string& detail) {
  CatalogEntry su2 = catalog_load("su2-std");
  std::vector<std::string> names;
  for (int n = 1; n <= 30; ++n) {
    names.push_back("binary_dihedral(" + std::to_string(4 * n) + ")");
  }
  names.push_back("binary_tetrahedral");
  names.push_back("binary_octahedral");
  names.push_back("binary_icosahedral");

  int max_index = 0;
  std::string argmax;
  for (const auto& name : names) {
    CatalogEntry h = catalog_load(name);
    auto rep = separation_index(su2.group, *su2.rep, h.group, *h.rep,
                                NormKind::TotalDegree, 14, su2.name, h.name);
    if (!rep.separated() || *rep.index > 12) {
      detail = name + (rep.separated() ? " separates above 12" : " not separated <= 14");
      return false;
    }
    if (*rep.index > max_index) {
      max_index = *rep.index;
      argmax = name;
    }
  }
  if (max_index != 12 || argmax != "binary_icosahedral") {
    detail = "max " + std::to_string(max_index) + " attained by " + argmax;
    return false;
  }
  // the icosahedral excess confirmed by the independent class-sum oracle
  CatalogEntry ico = catalog_load("binary_icosahedral");
  const auto& fc = std::get<FiniteClassesSpec>(ico.group.node);
  Int from_oracle = oracle::class_sum_moment(fc, 6, 6);
  if (from_oracle != oracle::ballot_walks(12) + 1) {
    detail = "class-sum oracle disagrees at (6,6)";
    return false;
  }
  return true;
}

bool a6_dimension(std::string& detail) {
  for (const auto& name : catalog_list()) {
    CatalogEntry e = catalog_load(name);
    auto table = moment_table(e.group, *e.rep, 12, 12, e.name);
    auto cert = infer_dimension(table, 12);
    std::int64_t want = rep_dim(e.group, *e.rep);
    if (!cert.pinned() || cert.lo != want) {
      detail = name + ": inferred [" + std::to_string(cert.lo) + "," +
               std::to_string(cert.hi) + "], dim " + std::to_string(want);
      return false;
    }
  }
  return true;
}

bool a7_crude_bound(std::string& detail) {
  for (int n = 2; n <= 3; ++n) {
    auto rep = crude_bound_threshold(n, 20);
    if (!rep.holds_at_end) {
      detail = "n=" + std::to_string(n) + ": inequality fails at the window end";
      return false;
    }
    if (rep.threshold >= 20) {
      detail = "n=" + std::to_string(n) + ": not attained inside the window";
      return false;
    }
    if (rep.increasing_from >= 20) {
      detail = "n=" + std::to_string(n) + ": ratio never increases";
      return false;
    }
    // strict ratio growth on the reported tail, cross-multiplied exactly
    const Int base2a = int_pow(Int(n - 1), 2);
    for (int a = rep.increasing_from; a < 20; ++a) {
      Int left = rep.diagonal[static_cast<std::size_t>(a)];
      Int right = rep.diagonal[static_cast<std::size_t>(a - 1)] * base2a;
      if (left <= right) {
        detail = "n=" + std::to_string(n) + ": tail not increasing at a=" +
                 std::to_string(a);
        return false;
      }
    }
  }
  return true;
}

bool a8_subgroup(std::string& detail) {
  for (const auto& [parent, child] : catalog_subgroup_pairs()) {
    CatalogEntry p = catalog_load(parent);
    CatalogEntry c = catalog_load(child);
    auto pt = moment_table(p.group, *p.rep, 6, 6, p.name);
    auto ct = moment_table(c.group, *c.rep, 6, 6, c.name);
    for (int a = 0; a <= 6; ++a) {
      for (int b = 0; b <= 6; ++b) {
        if (pt.at(a, b) > ct.at(a, b)) {
          detail = parent + " vs " + child + " at (" + std::to_string(a) + "," +
                   std::to_string(b) + ")";
          return false;
        }
      }
    }
  }
  return true;
}

bool a9_monte_carlo(std::string& detail) {
  for (const char* name : {"u2-std", "su2-std"}) {
    CatalogEntry e = catalog_load(name);
    SampleConfig cfg;
    cfg.group_id = e.name;
    cfg.samples = 100000;
    cfg.seed = 42;  // fixed; the 50-seed 99% policy is exercised in the unit suite
    cfg.amax = 3;
    cfg.bmax = 3;
    auto est = estimate_moments(e.group, *e.rep, cfg);
    auto exact = moment_table(e.group, *e.rep, 3, 3, e.name);
    for (int a = 0; a <= 3; ++a) {
      for (int b = 0; b <= 3; ++b) {
        double want = exact.at(a, b).get_d();
        double err = std::abs(est.mean_at(a, b) - want);
        double tol = std::max(5.0 * est.stderr_at(a, b), 1e-12);
        if (err > tol) {
          detail = std::string(name) + " cell (" + std::to_string(a) + "," +
                   std::to_string(b) + "): err " + std::to_string(err) + " > " +
                   std::to_string(tol);
          return false;
        }
      }
    }
  }
  return true;
}

bool a10_gaussian(std::string& detail) {
  for (int n : {2, 3, 4}) {
    auto rows = gaussian_limit_report({n}, n + 1);
    for (const auto& row : rows) {
      if (row.a <= n && row.difference != 0) {
        detail = "n=" + std::to_string(n) + " a=" + std::to_string(row.a) +
                 ": diff nonzero";
        return false;
      }
      if (row.a == n + 1) {
        if (row.exact >= row.gaussian) {
          detail = "n=" + std::to_string(n) + ": no strict deficit at a=n+1";
          return false;
        }
        // strictness double-checked by the tableau oracle
        if (row.exact != oracle::syt_diagonal_moment(n, n + 1)) {
          detail = "n=" + std::to_string(n) + ": tableau oracle disagrees";
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

int main() {
  criterion("A1", "factorial identity on unitary diagonals (exact)", a1_factorial);
  criterion("A2", "tableau-pair oracle equivalence, n=2,3, a<=10 (exact)", a2_syt);
  criterion("A3", "ballot-walk oracle equivalence, SU(2), a+b<=20 (exact)", a3_ballot);
  criterion("A4", "torsion agreement iff n > degree, n,degree<=12 (exact)", a4_torsion);
  criterion("A5", "bounded separation of SU(2) finite subgroups, max 12 at 2I", a5_isolation);
  criterion("A6", "dimension recovery from amax=12 tables, all catalog entries", a6_dimension);
  criterion("A7", "crude bound attained and ratios eventually increasing, n=2,3", a7_crude_bound);
  criterion("A8", "subgroup inequality cellwise, all pairs, a,b<=6 (exact)", a8_subgroup);
  criterion("A9", "Monte Carlo within 5 standard errors, N=1e5, seed 42", a9_monte_carlo);
  criterion("A10", "Gaussian moments match iff a<=n, strict deficit at n+1", a10_gaussian);
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
