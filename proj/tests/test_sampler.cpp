#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "stm/catalog.hpp"
#include "stm/moments.hpp"
#include "stm/parallel.hpp"
#include "stm/sampler.hpp"

using namespace stm;

TEST_CASE("philox4x32-10 reference vectors") {
  auto r0 = philox4x32({0, 0, 0, 0}, {0, 0});
  CHECK(r0 == std::array<std::uint32_t, 4>{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu,
                                           0x9b00dbd8u});
  auto r1 = philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                       {0xffffffffu, 0xffffffffu});
  CHECK(r1 == std::array<std::uint32_t, 4>{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u,
                                           0x6d5451fdu});
  auto r2 = philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                       {0xa4093822u, 0x299f31d0u});
  CHECK(r2 == std::array<std::uint32_t, 4>{0xd16cfe09u, 0x94fdccebu, 0x5001e420u,
                                           0x24126ea1u});
}

TEST_CASE("streams are reproducible and distinct") {
  SampleStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  std::uint64_t va = a.next_u64();
  CHECK(va == b.next_u64());
  CHECK(va != c.next_u64());
  CHECK(va != d.next_u64());
  // uniform draws live in [0,1)
  for (int i = 0; i < 1000; ++i) {
    double u = a.next_unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("haar unitary matrices are unitary with the positive-diagonal convention") {
  SampleStream rng(5, 0);
  for (int n : {1, 2, 5}) {
    CMatrix u = haar_unitary(n, rng);
    // u^H u == identity to 1e-12
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        std::complex<double> dot = 0;
        for (int r = 0; r < n; ++r) dot += std::conj(u.at(r, i)) * u.at(r, j);
        CHECK(std::abs(dot - (i == j ? 1.0 : 0.0)) < 1e-12);
      }
    }
  }
}

TEST_CASE("special unitary samples have unit determinant") {
  SampleStream rng(6, 0);
  for (int trial = 0; trial < 10; ++trial) {
    CMatrix u = haar_special_unitary(3, rng);
    // det via trace checks is awkward; multiply out the 3x3 determinant
    auto det = u.at(0, 0) * (u.at(1, 1) * u.at(2, 2) - u.at(1, 2) * u.at(2, 1)) -
               u.at(0, 1) * (u.at(1, 0) * u.at(2, 2) - u.at(1, 2) * u.at(2, 0)) +
               u.at(0, 2) * (u.at(1, 0) * u.at(2, 1) - u.at(1, 1) * u.at(2, 0));
    CHECK(std::abs(det - 1.0) < 1e-10);
  }
}

TEST_CASE("torus traces lie on the expected circle") {
  CatalogEntry u1 = catalog_load("u1-wt1");
  SampleStream rng(1, 0);
  for (int i = 0; i < 50; ++i) {
    auto z = haar_sample_trace(u1.group, *u1.rep, rng);
    CHECK(std::abs(std::abs(z) - 1.0) < 1e-12);
  }
}

TEST_CASE("cyclic(2) traces are +-1 with equal chances") {
  CatalogEntry c2 = catalog_load("cyclic(2)");
  int plus = 0;
  for (int i = 0; i < 4000; ++i) {
    SampleStream rng(9, static_cast<std::uint64_t>(i));
    auto z = haar_sample_trace(c2.group, *c2.rep, rng);
    CHECK(std::abs(std::abs(z.real()) - 1.0) < 1e-12);
    CHECK(std::abs(z.imag()) < 1e-12);
    if (z.real() > 0) ++plus;
  }
  CHECK(plus > 1800);
  CHECK(plus < 2200);
}

TEST_CASE("estimates: exact cells and conjugate symmetry") {
  CatalogEntry u2 = catalog_load("u2-std");
  SampleConfig cfg;
  cfg.samples = 2000;
  cfg.seed = 11;
  cfg.amax = 3;
  cfg.bmax = 3;
  auto est = estimate_moments(u2.group, *u2.rep, cfg);
  CHECK(est.mean_at(0, 0) == std::complex<double>(1.0, 0.0));
  CHECK(est.stderr_at(0, 0) == 0.0);
  for (int a = 0; a <= 3; ++a) {
    for (int b = 0; b <= 3; ++b) {
      CHECK(est.mean_at(a, b) == std::conj(est.mean_at(b, a)));
    }
  }
}

TEST_CASE("seed determinism: identical configs give bit-identical results") {
  CatalogEntry su2 = catalog_load("su2-std");
  SampleConfig cfg;
  cfg.samples = 5000;
  cfg.seed = 1234;
  cfg.amax = 3;
  cfg.bmax = 3;
  auto first = estimate_moments(su2.group, *su2.rep, cfg);
  auto second = estimate_moments(su2.group, *su2.rep, cfg);
  CHECK(first.mean == second.mean);
  CHECK(first.standard_error == second.standard_error);
}

TEST_CASE("worker count does not change the result") {
  CatalogEntry u2 = catalog_load("u2-std");
  SampleConfig cfg;
  cfg.samples = 10000;
  cfg.seed = 99;
  cfg.amax = 2;
  cfg.bmax = 2;
  int saved = thread_count();
  set_thread_count(1);
  auto serial = estimate_moments(u2.group, *u2.rep, cfg);
  set_thread_count(4);
  auto parallel = estimate_moments(u2.group, *u2.rep, cfg);
  set_thread_count(saved);
  CHECK(serial.mean == parallel.mean);
  CHECK(serial.standard_error == parallel.standard_error);
}

TEST_CASE("estimates agree with the exact engine within five standard errors") {
  for (const char* name : {"u2-std", "su2-std"}) {
    CatalogEntry e = catalog_load(name);
    SampleConfig cfg;
    cfg.samples = 100000;
    cfg.seed = 42;
    cfg.amax = 3;
    cfg.bmax = 3;
    auto est = estimate_moments(e.group, *e.rep, cfg);
    auto exact = moment_table(e.group, *e.rep, 3, 3, e.name);
    for (int a = 0; a <= 3; ++a) {
      for (int b = 0; b <= 3; ++b) {
        double want = exact.at(a, b).get_d();
        double err = std::abs(est.mean_at(a, b) - want);
        double tol = 5.0 * est.stderr_at(a, b);
        INFO(name, " cell (", a, ",", b, "): |", est.mean_at(a, b), " - ", want,
             "| vs 5se = ", tol);
        CHECK(err <= std::max(tol, 1e-12));
      }
    }
  }
}

TEST_CASE("product and derived-representation sampling stay consistent") {
  // product group: SU(2) x cyclic(3), std (x) given
  CatalogEntry c3 = catalog_load("cyclic(3)");
  GroupSpec prod = GroupSpec::product({GroupSpec::special_unitary(2), c3.group});
  auto v_prod = RepSpec::external_tensor({RepSpec::std_rep(), RepSpec::finite_given()});
  // rank-2 torus with the pair of coordinate weights
  GroupSpec t2 = GroupSpec::torus(2);
  auto v_t2 = RepSpec::torus_weights({{1, 0}, {0, 1}});
  // symmetric square of U(2): exercises the power-sum recursion
  GroupSpec u2 = GroupSpec::unitary(2);
  auto v_sym = RepSpec::symmetric(2, RepSpec::std_rep());
  // exterior square plus dual over SU(3)
  GroupSpec su3 = GroupSpec::special_unitary(3);
  auto v_ext = RepSpec::direct_sum(
      {RepSpec::exterior(2, RepSpec::std_rep()), RepSpec::dual(RepSpec::std_rep())});

  std::vector<std::tuple<GroupSpec, RepPtr, const char*>> cases{
      {prod, v_prod, "su2 x cyclic(3)"},
      {t2, v_t2, "torus rank 2"},
      {u2, v_sym, "sym^2 of u2"},
      {su3, v_ext, "ext^2 (+) dual over su3"},
  };
  for (const auto& [g, v, label] : cases) {
    SampleConfig cfg;
    cfg.samples = 60000;
    cfg.seed = 31;
    cfg.amax = 2;
    cfg.bmax = 2;
    auto est = estimate_moments(g, *v, cfg);
    auto exact = moment_table(g, *v, 2, 2);
    for (int a = 0; a <= 2; ++a) {
      for (int b = 0; b <= 2; ++b) {
        double err = std::abs(est.mean_at(a, b) - exact.at(a, b).get_d());
        double tol = std::max(5.0 * est.stderr_at(a, b), 1e-12);
        INFO(label, " cell (", a, ",", b, ")");
        CHECK(err <= tol);
      }
    }
  }
}

TEST_CASE("left invariance: premultiplied samples estimate the same moments") {
  // fixed unitary from an independent stream
  SampleStream fixed_rng(777, 0);
  CMatrix u0 = haar_unitary(2, fixed_rng);

  const int N = 40000;
  std::vector<std::complex<double>> plain, shifted;
  for (int i = 0; i < N; ++i) {
    SampleStream rng(2024, static_cast<std::uint64_t>(i));
    CMatrix u = haar_unitary(2, rng);
    plain.push_back(u.trace());
    shifted.push_back(u0.mul(u).trace());
  }
  // compare moments through degree 3
  for (int a = 0; a <= 3; ++a) {
    for (int b = 0; a + b <= 3; ++b) {
      std::complex<double> m1 = 0, m2 = 0;
      double s1 = 0, s2 = 0;
      for (int i = 0; i < N; ++i) {
        auto w1 = std::pow(plain[static_cast<std::size_t>(i)], a) *
                  std::pow(std::conj(plain[static_cast<std::size_t>(i)]), b);
        auto w2 = std::pow(shifted[static_cast<std::size_t>(i)], a) *
                  std::pow(std::conj(shifted[static_cast<std::size_t>(i)]), b);
        m1 += w1;
        m2 += w2;
        s1 += std::norm(w1);
        s2 += std::norm(w2);
      }
      m1 /= N;
      m2 /= N;
      double se1 = std::sqrt(std::max(s1 / N - std::norm(m1), 0.0) / (N - 1));
      double se2 = std::sqrt(std::max(s2 / N - std::norm(m2), 0.0) / (N - 1));
      double tol = 5.0 * std::sqrt(se1 * se1 + se2 * se2);
      CHECK(std::abs(m1 - m2) <= std::max(tol, 1e-12));
    }
  }
}

TEST_CASE("statistical gate: 50 seeds across the catalog, 99% pass") {
  // documented flake policy: a run passes when every estimated cell with
  // a,b <= 3 lies within five standard errors of the exact value; at least
  // 99% of (entry, seed) runs must pass. Deterministic seeds make this a
  // fixed, replayable computation rather than a flaky one.
  int runs = 0, passes = 0;
  for (const auto& name : catalog_list()) {
    CatalogEntry e = catalog_load(name);
    auto exact = moment_table(e.group, *e.rep, 3, 3, e.name);
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      SampleConfig cfg;
      cfg.samples = 1000;
      cfg.seed = seed;
      cfg.amax = 3;
      cfg.bmax = 3;
      auto est = estimate_moments(e.group, *e.rep, cfg);
      bool ok = true;
      for (int a = 0; a <= 3 && ok; ++a) {
        for (int b = 0; b <= 3 && ok; ++b) {
          double err = std::abs(est.mean_at(a, b) - exact.at(a, b).get_d());
          ok = err <= std::max(5.0 * est.stderr_at(a, b), 1e-12);
        }
      }
      ++runs;
      if (ok) ++passes;
    }
  }
  INFO("pass rate ", passes, "/", runs);
  CHECK(passes * 100 >= runs * 99);
}

TEST_CASE("gaussian limit report rows") {
  auto rows = gaussian_limit_report({2, 4}, 5);
  REQUIRE(rows.size() == 12);
  for (const auto& r : rows) {
    CHECK(r.gaussian == factorial(static_cast<unsigned>(r.a)));
    CHECK(r.difference >= 0);
    if (r.a <= r.n) CHECK(r.difference == 0);
  }
  // n=2: a=3 exact 5 (gaussian 6), a=4 exact 14 (gaussian 24)
  CHECK(rows[3].n == 2);
  CHECK(rows[3].a == 3);
  CHECK(rows[3].exact == 5);
  CHECK(rows[4].exact == 14);
  // n=4, a=3: exact 6 = gaussian
  CHECK(rows[6 + 3].n == 4);
  CHECK(rows[6 + 3].exact == 6);
}
