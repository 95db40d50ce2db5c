#include "oracles.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace oracle {

namespace {

void partitions_rec(int remaining, int max_part, int max_rows,
                    std::vector<int>& current,
                    std::vector<std::vector<int>>& out) {
  if (remaining == 0) {
    out.push_back(current);
    return;
  }
  if (max_rows == 0) return;
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    current.push_back(part);
    partitions_rec(remaining - part, part, max_rows - 1, current, out);
    current.pop_back();
  }
}

}  // namespace

std::vector<std::vector<int>> partitions_max_rows(int a, int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  partitions_rec(a, a, n, current, out);
  return out;
}

Int syt_count(const std::vector<int>& shape) {
  int a = 0;
  for (int row : shape) a += row;
  Int numerator = stm::factorial(static_cast<unsigned>(a));
  Int hooks = 1;
  const int rows = static_cast<int>(shape.size());
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < shape[static_cast<std::size_t>(r)]; ++c) {
      int arm = shape[static_cast<std::size_t>(r)] - c - 1;
      int leg = 0;
      for (int rr = r + 1; rr < rows; ++rr) {
        if (shape[static_cast<std::size_t>(rr)] > c) ++leg;
      }
      hooks *= arm + leg + 1;
    }
  }
  Int q, rem;
  mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), numerator.get_mpz_t(), hooks.get_mpz_t());
  if (rem != 0) throw std::logic_error("hook product does not divide a!");
  return q;
}

Int syt_diagonal_moment(int n, int a) {
  if (a == 0) return 1;
  Int total = 0;
  for (const auto& shape : partitions_max_rows(a, n)) {
    Int f = syt_count(shape);
    total += f * f;
  }
  return total;
}

Int ballot_walks(int length) {
  // heights[h] = number of walks currently at height h, never negative
  std::vector<Int> heights(static_cast<std::size_t>(length) + 2, 0);
  heights[0] = 1;
  for (int step = 0; step < length; ++step) {
    std::vector<Int> next(heights.size(), 0);
    for (std::size_t h = 0; h < heights.size(); ++h) {
      if (heights[h] == 0) continue;
      if (h + 1 < next.size()) next[h + 1] += heights[h];
      if (h >= 1) next[h - 1] += heights[h];
    }
    heights = std::move(next);
  }
  return heights[0];
}

Int weyl_integration_moment(int n, const stm::WeightPoly& weights, int a, int b) {
  using stm::WeightPoly;
  using stm::WeightVector;
  // Vandermonde factor prod_{i<j} (x_i - x_j)
  WeightPoly vandermonde = WeightPoly::one(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      WeightVector ei(static_cast<std::size_t>(n), 0), ej(ei);
      ei[static_cast<std::size_t>(i)] = 1;
      ej[static_cast<std::size_t>(j)] = 1;
      vandermonde = vandermonde.multiply(
          WeightPoly::from_terms(n, {{ei, Int(1)}, {ej, Int(-1)}}));
    }
  }
  WeightPoly density = vandermonde.multiply(vandermonde.dualize());
  WeightPoly integrand = density.multiply(weights.power(static_cast<std::uint32_t>(a)))
                             .multiply(weights.dualize().power(static_cast<std::uint32_t>(b)));
  Int constant = integrand.coefficient(WeightVector(static_cast<std::size_t>(n), 0));
  Int order = stm::factorial(static_cast<unsigned>(n));
  Int q, rem;
  mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), constant.get_mpz_t(), order.get_mpz_t());
  if (rem != 0) throw std::logic_error("Weyl integral is not divisible by n!");
  return q;
}

Int class_sum_moment(const stm::FiniteClassesSpec& fc, int a, int b) {
  using C = std::complex<long double>;
  C total = 0;
  for (const auto& cls : fc.classes) {
    C tr = 0;
    for (auto e : cls.exponents) {
      long double phi = 2.0L * std::numbers::pi_v<long double> *
                        static_cast<long double>(e) / static_cast<long double>(fc.modulus);
      tr += C(std::cos(phi), std::sin(phi));
    }
    C term = static_cast<long double>(cls.size);
    for (int i = 0; i < a; ++i) term *= tr;
    for (int i = 0; i < b; ++i) term *= std::conj(tr);
    total += term;
  }
  total /= static_cast<long double>(fc.order);
  long double rounded = std::round(total.real());
  if (std::abs(total.real() - rounded) > 1e-6L || std::abs(total.imag()) > 1e-6L) {
    throw std::logic_error("class average is not close to an integer");
  }
  // exact integer from the rounded long double (values stay far below 2^63)
  return Int(static_cast<long>(rounded));
}

}  // namespace oracle
