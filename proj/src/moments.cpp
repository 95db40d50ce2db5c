#include "stm/moments.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <mutex>
#include <numeric>
#include <optional>
#include <vector>

#include "stm/cyclotomic.hpp"
#include "stm/error.hpp"
#include "stm/parallel.hpp"

namespace stm {

namespace {

std::atomic<int> g_weyl_rank_bound{6};

// ---------------------------------------------------------------------------
// Signed permutations of S_n
// ---------------------------------------------------------------------------

struct SignedPerm {
  std::vector<int> perm;
  int sign;
};

const std::vector<SignedPerm>& signed_permutations(int n) {
  static std::mutex mu;
  static std::map<int, std::vector<SignedPerm>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::vector<SignedPerm> out;
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (p[static_cast<std::size_t>(i)] > p[static_cast<std::size_t>(j)]) ++inversions;
      }
    }
    out.push_back({p, (inversions % 2 == 0) ? 1 : -1});
  } while (std::next_permutation(p.begin(), p.end()));
  return cache.emplace(n, std::move(out)).first->second;
}

// ---------------------------------------------------------------------------
// Incremental tensor-power cache
// ---------------------------------------------------------------------------

/// power(base, a) grown incrementally across a; results are identical to
/// fresh computation, the cache only saves work.
class PowerCache {
 public:
  explicit PowerCache(WeightPoly base) : base_(std::move(base)) {
    pows_.push_back(WeightPoly::one(base_.rank()));
  }

  const WeightPoly& pow(int k) {
    std::lock_guard<std::mutex> lock(mu_);
    while (static_cast<int>(pows_.size()) <= k) {
      pows_.push_back(pows_.back().multiply(base_));
    }
    return pows_[static_cast<std::size_t>(k)];  // deque: stable reference
  }

  const WeightPoly& base() const { return base_; }

 private:
  WeightPoly base_;
  std::deque<WeightPoly> pows_;
  std::mutex mu_;
};

// ---------------------------------------------------------------------------
// Torus evaluator
// ---------------------------------------------------------------------------

class TorusEvaluator final : public MomentEvaluator {
 public:
  explicit TorusEvaluator(TorusWeightData w)
      : dim_(w.weights.coefficient_sum().get_si()),
        fwd_(w.weights),
        rev_(w.weights.dualize()) {}

  Int cell(int a, int b) override {
    if (a == 0 && b == 0) return 1;
    return convolve_coefficient(fwd_.pow(a), rev_.pow(b),
                                WeightVector(static_cast<std::size_t>(fwd_.base().rank()), 0));
  }

  Int single_cell(int a, int b) override {
    if (a == 0 && b == 0) return 1;
    const std::int64_t s = fwd_.base().max_l1();
    // only terms reachable from the origin by the other factor matter
    WeightPoly pa = fwd_.base().power(static_cast<std::uint32_t>(a),
                                      static_cast<std::int64_t>(b) * s);
    WeightPoly pb = rev_.base().power(static_cast<std::uint32_t>(b),
                                      static_cast<std::int64_t>(a) * s);
    return convolve_coefficient(pa, pb,
                                WeightVector(static_cast<std::size_t>(fwd_.base().rank()), 0));
  }

  std::int64_t dim() const override { return dim_; }

 private:
  std::int64_t dim_;
  PowerCache fwd_, rev_;
};

// ---------------------------------------------------------------------------
// Weyl alternation evaluator for U(n) / SU(n)
// ---------------------------------------------------------------------------

class WeylEvaluator final : public MomentEvaluator {
 public:
  WeylEvaluator(bool special, int n, TorusWeightData w)
      : special_(special),
        n_(n),
        dim_(w.weights.coefficient_sum().get_si()),
        fwd_(w.weights),
        rev_(w.weights.dualize()) {
    if (n_ < 1) raise(ErrorKind::InvalidSpec, "rank must be positive");
    if (n_ > weyl_rank_bound()) {
      raise(ErrorKind::Unsupported,
            "rank " + std::to_string(n_) + " exceeds the configured Weyl bound " +
                std::to_string(weyl_rank_bound()));
    }
    if (w.rank != n_) raise(ErrorKind::RankMismatch, "weight data rank differs from group rank");
    rho_.resize(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) rho_[static_cast<std::size_t>(i)] = n_ - 1 - i;
  }

  Int cell(int a, int b) override {
    if (a == 0 && b == 0) return 1;
    return evaluate(fwd_.pow(a), rev_.pow(b));
  }

  Int single_cell(int a, int b) override {
    if (a == 0 && b == 0) return 1;
    const std::int64_t s = fwd_.base().max_l1();
    const std::int64_t t = max_target_l1(a, b);
    WeightPoly pa = fwd_.base().power(static_cast<std::uint32_t>(a),
                                      t + static_cast<std::int64_t>(b) * s);
    WeightPoly pb = rev_.base().power(static_cast<std::uint32_t>(b),
                                      t + static_cast<std::int64_t>(a) * s);
    return evaluate(pa, pb);
  }

  std::int64_t dim() const override { return dim_; }

 private:
  bool special_;
  int n_;
  std::int64_t dim_;
  PowerCache fwd_, rev_;
  std::vector<int> rho_;

  std::pair<std::int64_t, std::int64_t> twist_range(const WeightPoly& pa,
                                                    const WeightPoly& pb) const {
    if (!special_) return {0, 0};
    if (pa.is_zero() || pb.is_zero()) return {1, 0};
    auto [alo, ahi] = pa.total_degree_range();
    auto [blo, bhi] = pb.total_degree_range();
    std::int64_t lo = alo + blo, hi = ahi + bhi;
    // k with n*k in [lo, hi]
    auto ceil_div = [](std::int64_t x, std::int64_t y) {
      return x >= 0 ? (x + y - 1) / y : -((-x) / y);
    };
    auto floor_div = [](std::int64_t x, std::int64_t y) {
      return x >= 0 ? x / y : -(((-x) + y - 1) / y);
    };
    return {ceil_div(lo, n_), floor_div(hi, n_)};
  }

  std::int64_t max_target_l1(int a, int b) const {
    // conservative: |k| <= (a + b) * maxdeg-ish; use the twist range of the
    // full degree bounds derivable from the bases
    auto [blo, bhi] = fwd_.base().total_degree_range();
    std::int64_t lo = std::min<std::int64_t>(
        {static_cast<std::int64_t>(a) * blo - static_cast<std::int64_t>(b) * bhi,
         static_cast<std::int64_t>(a) * blo - static_cast<std::int64_t>(b) * blo,
         static_cast<std::int64_t>(a) * bhi - static_cast<std::int64_t>(b) * bhi});
    std::int64_t hi = std::max<std::int64_t>(
        {static_cast<std::int64_t>(a) * bhi - static_cast<std::int64_t>(b) * blo,
         static_cast<std::int64_t>(a) * bhi - static_cast<std::int64_t>(b) * bhi,
         static_cast<std::int64_t>(a) * blo - static_cast<std::int64_t>(b) * blo});
    std::int64_t kmax = special_ ? std::max(std::abs(lo), std::abs(hi)) / n_ + 1 : 0;
    // |point| <= |(k,..,k)| + |sigma(rho) - rho| <= kmax*n + 2*sum(rho)
    std::int64_t rho_sum = static_cast<std::int64_t>(n_) * (n_ - 1) / 2;
    return kmax * n_ + 2 * rho_sum;
  }

  Int alternation(const WeightPoly& pa, const WeightPoly& pb, std::int64_t k) const {
    const auto& perms = signed_permutations(n_);
    Int total = 0;
    WeightVector point(static_cast<std::size_t>(n_));
    std::vector<std::int64_t> lam_rho(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) {
      lam_rho[static_cast<std::size_t>(i)] = k + rho_[static_cast<std::size_t>(i)];
    }
    for (const auto& sp : perms) {
      for (int i = 0; i < n_; ++i) {
        point[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(
            lam_rho[static_cast<std::size_t>(sp.perm[static_cast<std::size_t>(i)])] -
            rho_[static_cast<std::size_t>(i)]);
      }
      Int m = convolve_coefficient(pa, pb, point);
      if (sp.sign > 0) {
        total += m;
      } else {
        total -= m;
      }
    }
    if (total < 0) {
      raise(ErrorKind::Internal,
            "negative Weyl alternation sum (twist " + std::to_string(k) + ")");
    }
    return total;
  }

  Int evaluate(const WeightPoly& pa, const WeightPoly& pb) const {
    auto [klo, khi] = twist_range(pa, pb);
    Int total = 0;
    for (std::int64_t k = klo; k <= khi; ++k) {
      total += alternation(pa, pb, k);
    }
    return total;
  }
};

// ---------------------------------------------------------------------------
// Finite class-sum evaluator
// ---------------------------------------------------------------------------

/// Dense polynomial in Z[X]/(X^M - 1). An int64 fast path is used whenever
/// |G| * d^(a+b) provably fits; the arbitrary-precision path is the contract.
template <typename C>
std::vector<C> cyc_mul(const std::vector<C>& x, const std::vector<C>& y,
                       std::int64_t m) {
  std::vector<C> r(static_cast<std::size_t>(m), C(0));
  for (std::int64_t i = 0; i < m; ++i) {
    const C& xi = x[static_cast<std::size_t>(i)];
    if (xi == 0) continue;
    for (std::int64_t j = 0; j < m; ++j) {
      const C& yj = y[static_cast<std::size_t>(j)];
      if (yj == 0) continue;
      r[static_cast<std::size_t>((i + j) % m)] += xi * yj;
    }
  }
  return r;
}

class FiniteEvaluator final : public MomentEvaluator {
 public:
  explicit FiniteEvaluator(FiniteClassesSpec fc) : fc_(std::move(fc)) {
    d_ = static_cast<std::int64_t>(fc_.classes.front().exponents.size());
    const std::size_t m = static_cast<std::size_t>(fc_.modulus);
    for (const auto& c : fc_.classes) {
      std::vector<std::int64_t> fwd(m, 0), rev(m, 0);
      for (auto e : c.exponents) {
        fwd[static_cast<std::size_t>(e)] += 1;
        rev[static_cast<std::size_t>((fc_.modulus - e) % fc_.modulus)] += 1;
      }
      fwd_base_.push_back(std::move(fwd));
      rev_base_.push_back(std::move(rev));
    }
    fwd_i64_.resize(fc_.classes.size());
    rev_i64_.resize(fc_.classes.size());
    fwd_big_.resize(fc_.classes.size());
    rev_big_.resize(fc_.classes.size());
  }

  Int cell(int a, int b) override {
    if (a == 0 && b == 0) return 1;
    IntPoly total(static_cast<std::size_t>(fc_.modulus));
    if (fits_int64(a + b)) {
      accumulate<std::int64_t>(a, b, fwd_i64_, rev_i64_, fwd_base_, rev_base_, total);
    } else {
      accumulate<Int>(a, b, fwd_big_, rev_big_, to_big(fwd_base_), to_big(rev_base_), total);
    }
    return reduce(total);
  }

  Int single_cell(int a, int b) override { return cell(a, b); }

  std::int64_t dim() const override { return d_; }

 private:
  FiniteClassesSpec fc_;
  std::int64_t d_ = 0;
  std::vector<std::vector<std::int64_t>> fwd_base_, rev_base_;
  // per-class incremental power tables, both coefficient widths
  std::vector<std::deque<std::vector<std::int64_t>>> fwd_i64_, rev_i64_;
  std::vector<std::deque<std::vector<Int>>> fwd_big_, rev_big_;
  std::mutex mu_;

  bool fits_int64(int deg) const {
    // |G| * d^deg < 2^62 keeps every accumulated coefficient in range
    Int bound = Int(fc_.order) * int_pow(Int(d_), static_cast<unsigned>(deg));
    return bound < (Int(1) << 62);
  }

  static std::vector<std::vector<Int>> to_big(
      const std::vector<std::vector<std::int64_t>>& in) {
    std::vector<std::vector<Int>> out;
    out.reserve(in.size());
    for (const auto& row : in) {
      std::vector<Int> conv;
      conv.reserve(row.size());
      for (auto v : row) conv.emplace_back(v);
      out.push_back(std::move(conv));
    }
    return out;
  }

  template <typename C>
  void accumulate(int a, int b, std::vector<std::deque<std::vector<C>>>& fwd_cache,
                  std::vector<std::deque<std::vector<C>>>& rev_cache,
                  const std::vector<std::vector<C>>& fwd_base,
                  const std::vector<std::vector<C>>& rev_base, IntPoly& total) {
    const std::int64_t m = fc_.modulus;
    for (std::size_t ci = 0; ci < fc_.classes.size(); ++ci) {
      const std::vector<C>* pa;
      const std::vector<C>* pb;
      {
        std::lock_guard<std::mutex> lock(mu_);
        auto& fc = fwd_cache[ci];
        auto& rc = rev_cache[ci];
        if (fc.empty()) {
          std::vector<C> unit(static_cast<std::size_t>(m), C(0));
          unit[0] = C(1);
          fc.push_back(unit);
          rc.push_back(std::move(unit));
        }
        while (static_cast<int>(fc.size()) <= a) {
          fc.push_back(cyc_mul(fc.back(), fwd_base[ci], m));
        }
        while (static_cast<int>(rc.size()) <= b) {
          rc.push_back(cyc_mul(rc.back(), rev_base[ci], m));
        }
        pa = &fc[static_cast<std::size_t>(a)];
        pb = &rc[static_cast<std::size_t>(b)];
      }
      std::vector<C> prod = cyc_mul(*pa, *pb, m);
      const Int size(fc_.classes[ci].size);
      for (std::int64_t i = 0; i < m; ++i) {
        const C& c = prod[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        total[static_cast<std::size_t>(i)] += size * Int(c);
      }
    }
  }

  Int reduce(const IntPoly& total) const {
    const IntPoly& phi = cyclotomic_poly(fc_.modulus);
    IntPoly rem = poly_mod(total, phi);
    for (std::size_t i = 1; i < rem.size(); ++i) {
      if (rem[i] != 0) {
        raise(ErrorKind::DataCorrupt,
              "class average is not rational: nonzero cyclotomic coordinate " +
                  std::to_string(i));
      }
    }
    Int c0 = rem.empty() ? Int(0) : rem[0];
    Int q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), c0.get_mpz_t(), Int(fc_.order).get_mpz_t());
    if (r != 0) {
      raise(ErrorKind::DataCorrupt, "class average is not divisible by the group order");
    }
    if (q < 0) raise(ErrorKind::DataCorrupt, "negative invariant count from class data");
    return q;
  }
};

// ---------------------------------------------------------------------------
// Product evaluator
// ---------------------------------------------------------------------------

class ProductEvaluator final : public MomentEvaluator {
 public:
  ProductEvaluator(const ProductSpec& p, const RepExternalTensor& v) {
    if (p.factors.size() != v.legs.size()) {
      raise(ErrorKind::InvalidSpec,
            "ExternalTensor must have exactly one leg per product factor");
    }
    for (std::size_t i = 0; i < p.factors.size(); ++i) {
      children_.push_back(MomentEvaluator::create(p.factors[i], *v.legs[i]));
    }
  }

  Int cell(int a, int b) override {
    Int total = 1;
    for (auto& c : children_) {
      total *= c->cell(a, b);
      if (total == 0) return total;
    }
    return total;
  }

  Int single_cell(int a, int b) override {
    Int total = 1;
    for (auto& c : children_) {
      total *= c->single_cell(a, b);
      if (total == 0) return total;
    }
    return total;
  }

  std::int64_t dim() const override {
    std::int64_t d = 1;
    for (const auto& c : children_) d *= c->dim();
    return d;
  }

 private:
  std::vector<std::unique_ptr<MomentEvaluator>> children_;
};

}  // namespace

// ---------------------------------------------------------------------------
// Public surface
// ---------------------------------------------------------------------------

int weyl_rank_bound() { return g_weyl_rank_bound.load(std::memory_order_relaxed); }

void set_weyl_rank_bound(int n) {
  if (n < 1) raise(ErrorKind::InvalidSpec, "Weyl rank bound must be positive");
  g_weyl_rank_bound.store(n, std::memory_order_relaxed);
}

std::unique_ptr<MomentEvaluator> MomentEvaluator::create(const GroupSpec& g,
                                                         const RepSpec& v) {
  validate_group(g);
  rep_dim(g, v);  // validates atom compatibility
  if (const auto* t = std::get_if<TorusSpec>(&g.node)) {
    (void)t;
    return std::make_unique<TorusEvaluator>(torus_restriction(g, v));
  }
  if (const auto* u = std::get_if<UnitarySpec>(&g.node)) {
    return std::make_unique<WeylEvaluator>(false, u->n, torus_restriction(g, v));
  }
  if (const auto* su = std::get_if<SpecialUnitarySpec>(&g.node)) {
    return std::make_unique<WeylEvaluator>(true, su->n, torus_restriction(g, v));
  }
  if (const auto* fc = std::get_if<FiniteClassesSpec>(&g.node)) {
    return std::make_unique<FiniteEvaluator>(finite_rep_classes(*fc, v));
  }
  const auto& p = std::get<ProductSpec>(g.node);
  const auto* xt = std::get_if<RepExternalTensor>(&v.node);
  if (!xt) {
    raise(ErrorKind::InvalidSpec,
          "a product group requires an ExternalTensor representation");
  }
  return std::make_unique<ProductEvaluator>(p, *xt);
}

Int moment(const GroupSpec& g, const RepSpec& v, int a, int b) {
  if (a < 0 || b < 0) raise(ErrorKind::InvalidSpec, "moment exponents must be >= 0");
  return MomentEvaluator::create(g, v)->single_cell(a, b);
}

Int torus_invariants(const TorusWeightData& w, int a, int b) {
  TorusEvaluator ev(w);
  return ev.single_cell(a, b);
}

Int weyl_invariants(bool special_unitary, int n, const TorusWeightData& w, int a,
                    int b) {
  WeylEvaluator ev(special_unitary, n, w);
  return ev.single_cell(a, b);
}

Int finite_invariants(const FiniteClassesSpec& fc, int a, int b) {
  FiniteEvaluator ev(fc);
  return ev.cell(a, b);
}

const Int& MomentTable::at(int a, int b) const {
  auto it = entries.find({a, b});
  if (it == entries.end()) {
    raise(ErrorKind::NotFound, "table has no cell (" + std::to_string(a) + "," +
                                   std::to_string(b) + ")");
  }
  return it->second;
}

MomentTable moment_table(const GroupSpec& g, const RepSpec& v, int amax, int bmax,
                         std::string group_id, std::string rep_id) {
  if (amax < 0 || bmax < 0) raise(ErrorKind::InvalidSpec, "table bounds must be >= 0");
  auto ev = MomentEvaluator::create(g, v);

  MomentTable table;
  table.group_id = group_id.empty() ? describe_group(g) : std::move(group_id);
  table.rep_id = rep_id.empty() ? describe_rep(v) : std::move(rep_id);
  table.dim = ev->dim();
  table.amax = amax;
  table.bmax = bmax;

  // unique cells: a <= b within the box; (a,b) with a > b mirrors (b,a)
  std::vector<std::pair<int, int>> cells;
  for (int a = 0; a <= amax; ++a) {
    for (int b = a; b <= bmax; ++b) cells.emplace_back(a, b);
  }
  // cells with a > bmax have no mirror partner inside the box
  for (int a = std::max(0, bmax + 1); a <= amax; ++a) {
    for (int b = 0; b < a && b <= bmax; ++b) cells.emplace_back(a, b);
  }

  std::vector<std::optional<Int>> results(cells.size());
  std::vector<std::optional<Error>> failures(cells.size());
  parallel_for(cells.size(), [&](std::size_t i) {
    auto [a, b] = cells[i];
    try {
      results[i] = ev->cell(a, b);
    } catch (const Error& e) {
      failures[i] = e;
    }
  });
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (!results[i].has_value()) {
      raise(failures[i]->kind(), "cell (" + std::to_string(cells[i].first) + "," +
                                     std::to_string(cells[i].second) +
                                     "): " + failures[i]->what());
    }
    table.entries[cells[i]] = *results[i];
  }
  // mirror the symmetric half
  for (int a = 0; a <= amax; ++a) {
    for (int b = 0; b <= bmax; ++b) {
      if (table.entries.count({a, b})) continue;
      table.entries[{a, b}] = table.entries.at({b, a});
    }
  }

  // table-level invariants
  if (table.at(0, 0) != 1) raise(ErrorKind::Internal, "F(0,0) != 1");
  for (const auto& [ab, value] : table.entries) {
    if (value > int_pow(Int(table.dim), static_cast<unsigned>(ab.first + ab.second))) {
      raise(ErrorKind::Internal,
            "F(" + std::to_string(ab.first) + "," + std::to_string(ab.second) +
                ") exceeds dim^(a+b)");
    }
  }
  return table;
}

}  // namespace stm
