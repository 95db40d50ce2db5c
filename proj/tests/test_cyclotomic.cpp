#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stm/cyclotomic.hpp"

using namespace stm;

namespace {

IntPoly make(std::vector<long> coeffs) {
  IntPoly p;
  for (long c : coeffs) p.emplace_back(c);
  return p;
}

}  // namespace

TEST_CASE("small cyclotomic polynomials") {
  CHECK(cyclotomic_poly(1) == make({-1, 1}));
  CHECK(cyclotomic_poly(2) == make({1, 1}));
  CHECK(cyclotomic_poly(3) == make({1, 1, 1}));
  CHECK(cyclotomic_poly(4) == make({1, 0, 1}));
  CHECK(cyclotomic_poly(6) == make({1, -1, 1}));
  CHECK(cyclotomic_poly(12) == make({1, 0, -1, 0, 1}));
}

TEST_CASE("degree is Euler phi") {
  auto phi = [](std::int64_t n) {
    std::int64_t r = n;
    for (std::int64_t p = 2; p * p <= n; ++p) {
      if (n % p == 0) {
        r -= r / p;
        while (n % p == 0) n /= p;
      }
    }
    if (n > 1) r -= r / n;
    return r;
  };
  for (std::int64_t m : {5, 8, 20, 24, 60, 105, 120}) {
    CHECK(poly_degree(cyclotomic_poly(m)) == phi(m));
  }
}

TEST_CASE("product over divisors reconstructs X^n - 1") {
  for (std::int64_t n : {6, 12, 30}) {
    IntPoly prod = make({1});
    for (std::int64_t d = 1; d <= n; ++d) {
      if (n % d != 0) continue;
      const IntPoly& phi_d = cyclotomic_poly(d);
      IntPoly next(prod.size() + phi_d.size() - 1);
      for (std::size_t i = 0; i < prod.size(); ++i) {
        for (std::size_t j = 0; j < phi_d.size(); ++j) next[i + j] += prod[i] * phi_d[j];
      }
      prod = std::move(next);
    }
    IntPoly want(static_cast<std::size_t>(n) + 1);
    want[0] = -1;
    want[static_cast<std::size_t>(n)] = 1;
    CHECK(prod == want);
  }
}

TEST_CASE("poly_mod against hand division") {
  // X^4 + 1 mod X^2 + 1 = ... X^4 = (X^2+1)(X^2-1) + 1 so remainder 2
  IntPoly p = make({1, 0, 0, 0, 1});
  IntPoly d = make({1, 0, 1});
  IntPoly r = poly_mod(p, d);
  CHECK(poly_degree(r) == 0);
  CHECK(r[0] == 2);
  // rational-integer detection: zeta_4 + zeta_4^3 reduces to 0 mod Phi_4
  IntPoly z = make({0, 1, 0, 1});
  IntPoly rem = poly_mod(z, cyclotomic_poly(4));
  CHECK(poly_degree(rem) == -1);
}
