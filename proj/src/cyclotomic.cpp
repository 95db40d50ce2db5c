#include "stm/cyclotomic.hpp"

#include <map>
#include <mutex>

#include "stm/error.hpp"

namespace stm {

int poly_degree(const IntPoly& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) {
    if (p[static_cast<std::size_t>(i)] != 0) return i;
  }
  return -1;
}

IntPoly poly_mod(IntPoly p, const IntPoly& d) {
  const int dd = poly_degree(d);
  if (dd < 0) raise(ErrorKind::Internal, "poly_mod by zero polynomial");
  if (d[static_cast<std::size_t>(dd)] != 1) {
    raise(ErrorKind::Internal, "poly_mod requires a monic divisor");
  }
  for (int i = poly_degree(p); i >= dd; --i) {
    Int q = p[static_cast<std::size_t>(i)];
    if (q == 0) continue;
    for (int j = 0; j <= dd; ++j) {
      p[static_cast<std::size_t>(i - dd + j)] -= q * d[static_cast<std::size_t>(j)];
    }
  }
  p.resize(static_cast<std::size_t>(dd));
  return p;
}

namespace {

/// Exact quotient of p by monic d; throws if the division is not exact.
IntPoly poly_div_exact(IntPoly p, const IntPoly& d) {
  const int dd = poly_degree(d);
  const int dp = poly_degree(p);
  if (dp < dd) raise(ErrorKind::Internal, "inexact polynomial division");
  IntPoly q(static_cast<std::size_t>(dp - dd + 1));
  for (int i = dp; i >= dd; --i) {
    Int c = p[static_cast<std::size_t>(i)];
    q[static_cast<std::size_t>(i - dd)] = c;
    if (c == 0) continue;
    for (int j = 0; j <= dd; ++j) {
      p[static_cast<std::size_t>(i - dd + j)] -= c * d[static_cast<std::size_t>(j)];
    }
  }
  if (poly_degree(p) >= 0) raise(ErrorKind::Internal, "inexact polynomial division");
  return q;
}

}  // namespace

const IntPoly& cyclotomic_poly(std::int64_t m) {
  static std::mutex mu;
  static std::map<std::int64_t, IntPoly> cache;
  if (m < 1) raise(ErrorKind::InvalidSpec, "cyclotomic index must be positive");
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;

  // compute bottom-up so recursion never re-enters the lock
  for (std::int64_t n = 1; n <= m; ++n) {
    if (m % n != 0 || cache.count(n)) continue;
    IntPoly num(static_cast<std::size_t>(n) + 1);
    num[0] = -1;
    num[static_cast<std::size_t>(n)] = 1;  // X^n - 1
    for (std::int64_t d = 1; d < n; ++d) {
      if (n % d == 0) num = poly_div_exact(std::move(num), cache.at(d));
    }
    cache.emplace(n, std::move(num));
  }
  return cache.at(m);
}

}  // namespace stm
