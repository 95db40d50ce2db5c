#include "stm/weight_poly.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <unordered_map>

#include "stm/error.hpp"
#include "stm/parallel.hpp"

namespace stm {

std::int64_t l1_norm(const WeightVector& w) {
  std::int64_t s = 0;
  for (auto c : w) s += c < 0 ? -static_cast<std::int64_t>(c) : c;
  return s;
}

std::int64_t total_degree(const WeightVector& w) {
  std::int64_t s = 0;
  for (auto c : w) s += c;
  return s;
}

std::size_t WeightVectorHash::operator()(const WeightVector& w) const noexcept {
  // FNV-1a over the coordinate bytes
  std::uint64_t h = 1469598103934665603ull;
  for (auto c : w) {
    auto u = static_cast<std::uint32_t>(c);
    for (int i = 0; i < 4; ++i) {
      h ^= (u >> (8 * i)) & 0xffu;
      h *= 1099511628211ull;
    }
  }
  return static_cast<std::size_t>(h);
}

namespace {

void check_rank(int rank, const WeightVector& w) {
  if (static_cast<int>(w.size()) != rank) {
    raise(ErrorKind::RankMismatch,
          "weight has length " + std::to_string(w.size()) + ", expected rank " +
              std::to_string(rank));
  }
}

}  // namespace

WeightPoly WeightPoly::one(int rank) {
  WeightPoly p(rank);
  p.terms_.emplace_back(WeightVector(rank, 0), Int(1));
  return p;
}

WeightPoly WeightPoly::from_terms(int rank, std::vector<Term> terms) {
  for (const auto& [w, c] : terms) check_rank(rank, w);
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.first < b.first; });
  WeightPoly p(rank);
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().first == t.first) {
      p.terms_.back().second += t.second;
    } else {
      p.terms_.push_back(std::move(t));
    }
  }
  p.terms_.erase(std::remove_if(p.terms_.begin(), p.terms_.end(),
                                [](const Term& t) { return t.second == 0; }),
                 p.terms_.end());
  return p;
}

WeightPoly WeightPoly::from_weights(int rank,
                                    const std::vector<WeightVector>& ws) {
  std::vector<Term> terms;
  terms.reserve(ws.size());
  for (const auto& w : ws) terms.emplace_back(w, Int(1));
  return from_terms(rank, std::move(terms));
}

const Int& WeightPoly::coefficient(const WeightVector& w) const {
  static const Int zero = 0;
  check_rank(rank_, w);
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), w,
      [](const Term& t, const WeightVector& key) { return t.first < key; });
  if (it != terms_.end() && it->first == w) return it->second;
  return zero;
}

Int WeightPoly::coefficient_sum() const {
  Int s = 0;
  for (const auto& [w, c] : terms_) s += c;
  return s;
}

std::int64_t WeightPoly::max_l1() const {
  std::int64_t m = 0;
  for (const auto& [w, c] : terms_) m = std::max(m, l1_norm(w));
  return m;
}

std::pair<std::int64_t, std::int64_t> WeightPoly::total_degree_range() const {
  if (terms_.empty()) {
    raise(ErrorKind::Internal, "degree range of the zero polynomial");
  }
  std::int64_t lo = total_degree(terms_.front().first), hi = lo;
  for (const auto& [w, c] : terms_) {
    auto d = total_degree(w);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  return {lo, hi};
}

WeightPoly WeightPoly::add(const WeightPoly& q) const {
  if (rank_ != q.rank_) raise(ErrorKind::RankMismatch, "add: rank mismatch");
  WeightPoly r(rank_);
  r.terms_.reserve(terms_.size() + q.terms_.size());
  auto a = terms_.begin(), ae = terms_.end();
  auto b = q.terms_.begin(), be = q.terms_.end();
  while (a != ae && b != be) {
    if (a->first < b->first) {
      r.terms_.push_back(*a++);
    } else if (b->first < a->first) {
      r.terms_.push_back(*b++);
    } else {
      Int c = a->second + b->second;
      if (c != 0) r.terms_.emplace_back(a->first, std::move(c));
      ++a;
      ++b;
    }
  }
  r.terms_.insert(r.terms_.end(), a, ae);
  r.terms_.insert(r.terms_.end(), b, be);
  return r;
}

namespace {

using Builder = std::unordered_map<WeightVector, Int, WeightVectorHash>;

void accumulate_product(Builder& acc, const WeightPoly::Term& t,
                        const std::vector<WeightPoly::Term>& other) {
  WeightVector key(t.first.size());
  for (const auto& [v, d] : other) {
    for (std::size_t i = 0; i < key.size(); ++i) key[i] = t.first[i] + v[i];
    acc[key] += t.second * d;
  }
}

WeightPoly builder_to_poly(int rank, Builder&& acc) {
  std::vector<WeightPoly::Term> terms;
  terms.reserve(acc.size());
  for (auto& [w, c] : acc) {
    if (c != 0) terms.emplace_back(w, std::move(c));
  }
  return WeightPoly::from_terms(rank, std::move(terms));
}

}  // namespace

WeightPoly WeightPoly::multiply(const WeightPoly& q) const {
  if (rank_ != q.rank_) {
    raise(ErrorKind::RankMismatch, "multiply: rank " + std::to_string(rank_) +
                                       " vs " + std::to_string(q.rank_));
  }
  if (is_zero() || q.is_zero()) return WeightPoly(rank_);

  const auto& big = terms_.size() >= q.terms_.size() ? terms_ : q.terms_;
  const auto& small = terms_.size() >= q.terms_.size() ? q.terms_ : terms_;

  const std::size_t pairs = big.size() * small.size();
  const int workers = thread_count();
  if (workers > 1 && pairs >= (1u << 20) && big.size() >= 2) {
    // Partition the larger operand; each chunk builds a local map. The final
    // from_terms normalization makes the outcome independent of scheduling.
    std::size_t nchunks = std::min<std::size_t>(big.size(),
                                                static_cast<std::size_t>(workers) * 4);
    std::vector<Builder> partial(nchunks);
    parallel_for(nchunks, [&](std::size_t chunk) {
      std::size_t lo = big.size() * chunk / nchunks;
      std::size_t hi = big.size() * (chunk + 1) / nchunks;
      for (std::size_t i = lo; i < hi; ++i) {
        accumulate_product(partial[chunk], big[i], small);
      }
    });
    Builder acc;
    acc.reserve(big.size() + small.size());
    for (auto& part : partial) {
      for (auto& [w, c] : part) acc[w] += c;
    }
    return builder_to_poly(rank_, std::move(acc));
  }

  Builder acc;
  acc.reserve(big.size() + small.size());
  for (const auto& t : big) accumulate_product(acc, t, small);
  return builder_to_poly(rank_, std::move(acc));
}

WeightPoly WeightPoly::dualize() const {
  std::vector<Term> terms;
  terms.reserve(terms_.size());
  for (const auto& [w, c] : terms_) {
    WeightVector neg(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
      neg[i] = static_cast<std::int32_t>(-w[i]);
    }
    terms.emplace_back(std::move(neg), c);
  }
  return from_terms(rank_, std::move(terms));
}

WeightPoly WeightPoly::pruned(std::int64_t radius) const {
  WeightPoly r(rank_);
  for (const auto& t : terms_) {
    if (l1_norm(t.first) <= radius) r.terms_.push_back(t);
  }
  return r;
}

WeightPoly WeightPoly::power(std::uint32_t k,
                             std::optional<std::int64_t> l1_bound) const {
  if (k == 0) return one(rank_);
  if (!l1_bound) {
    WeightPoly base = *this;
    WeightPoly acc(rank_);
    bool have = false;
    while (k) {
      if (k & 1u) {
        acc = have ? acc.multiply(base) : base;
        have = true;
      }
      k >>= 1u;
      if (k) base = base.multiply(base);
    }
    return acc;
  }
  // Incremental product with mid-DP pruning: after multiplying in factor i,
  // k-i factors remain, each shifting L1 by at most s.
  const std::int64_t s = max_l1();
  WeightPoly acc = pruned(*l1_bound + static_cast<std::int64_t>(k - 1) * s);
  for (std::uint32_t i = 2; i <= k; ++i) {
    acc = acc.multiply(*this);
    acc = acc.pruned(*l1_bound + static_cast<std::int64_t>(k - i) * s);
  }
  return acc;
}

Int convolve_coefficient(const WeightPoly& p, const WeightPoly& q,
                         const WeightVector& w) {
  if (p.rank() != q.rank()) {
    raise(ErrorKind::RankMismatch, "convolve_coefficient: rank mismatch");
  }
  check_rank(p.rank(), w);
  const WeightPoly& outer = p.term_count() <= q.term_count() ? p : q;
  const WeightPoly& inner = p.term_count() <= q.term_count() ? q : p;
  Int total = 0;
  WeightVector rest(w.size());
  for (const auto& [u, c] : outer.terms()) {
    for (std::size_t i = 0; i < rest.size(); ++i) {
      rest[i] = static_cast<std::int32_t>(w[i] - u[i]);
    }
    const Int& d = inner.coefficient(rest);
    if (d != 0) total += c * d;
  }
  return total;
}

}  // namespace stm
