#include "stm/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "stm/error.hpp"
#include "stm/moments.hpp"
#include "stm/parallel.hpp"

namespace stm {

// ---------------------------------------------------------------------------
// Philox
// ---------------------------------------------------------------------------

namespace {

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) {
  std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(const std::array<std::uint32_t, 4>& counter,
                                        const std::array<std::uint32_t, 2>& key) {
  std::array<std::uint32_t, 4> ctr = counter;
  std::array<std::uint32_t, 2> k = key;
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(0xD2511F53u, ctr[0], hi0, lo0);
    mulhilo(0xCD9E8D57u, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ k[0], lo1, hi0 ^ ctr[3] ^ k[1], lo0};
    k[0] += 0x9E3779B9u;
    k[1] += 0xBB67AE85u;
  }
  return ctr;
}

std::uint32_t SampleStream::next_u32() {
  if (avail_ == 0) {
    block_ = philox4x32({static_cast<std::uint32_t>(stream_),
                         static_cast<std::uint32_t>(stream_ >> 32),
                         static_cast<std::uint32_t>(counter_),
                         static_cast<std::uint32_t>(counter_ >> 32)},
                        {static_cast<std::uint32_t>(seed_),
                         static_cast<std::uint32_t>(seed_ >> 32)});
    ++counter_;
    avail_ = 4;
  }
  return block_[static_cast<std::size_t>(4 - avail_--)];
}

std::uint64_t SampleStream::next_u64() {
  std::uint64_t hi = next_u32();
  std::uint64_t lo = next_u32();
  return (hi << 32) | lo;
}

double SampleStream::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SampleStream::next_gaussian() {
  if (spare_gaussian_) {
    double v = *spare_gaussian_;
    spare_gaussian_.reset();
    return v;
  }
  // Box-Muller; u1 is shifted into (0, 1] to keep the log finite
  double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  double u2 = next_unit();
  double r = std::sqrt(-2.0 * std::log(u1));
  double theta = 2.0 * std::numbers::pi * u2;
  spare_gaussian_ = r * std::sin(theta);
  return r * std::cos(theta);
}

// ---------------------------------------------------------------------------
// Matrices
// ---------------------------------------------------------------------------

CMatrix CMatrix::identity(int n) {
  CMatrix m{n, std::vector<std::complex<double>>(static_cast<std::size_t>(n) * n)};
  for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

std::complex<double> CMatrix::trace() const {
  std::complex<double> t = 0;
  for (int i = 0; i < n; ++i) t += at(i, i);
  return t;
}

CMatrix CMatrix::mul(const CMatrix& other) const {
  CMatrix r{n, std::vector<std::complex<double>>(static_cast<std::size_t>(n) * n)};
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      std::complex<double> v = at(i, k);
      if (v == 0.0) continue;
      for (int j = 0; j < n; ++j) r.at(i, j) += v * other.at(k, j);
    }
  }
  return r;
}

namespace {

std::complex<double> determinant(CMatrix m) {
  // Gaussian elimination with partial pivoting; n <= 6
  std::complex<double> det = 1.0;
  for (int col = 0; col < m.n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < m.n; ++r) {
      if (std::abs(m.at(r, col)) > std::abs(m.at(pivot, col))) pivot = r;
    }
    if (pivot != col) {
      for (int c = 0; c < m.n; ++c) std::swap(m.at(col, c), m.at(pivot, c));
      det = -det;
    }
    std::complex<double> p = m.at(col, col);
    if (p == 0.0) return 0.0;
    det *= p;
    for (int r = col + 1; r < m.n; ++r) {
      std::complex<double> f = m.at(r, col) / p;
      for (int c = col; c < m.n; ++c) m.at(r, c) -= f * m.at(col, c);
    }
  }
  return det;
}

}  // namespace

CMatrix haar_unitary(int n, SampleStream& rng) {
  if (n < 1) raise(ErrorKind::InvalidSpec, "unitary degree must be positive");
  for (int attempt = 0; attempt < 3; ++attempt) {
    // complex Ginibre draw, entries (N + iN)/sqrt(2), row-major order
    CMatrix z{n, std::vector<std::complex<double>>(static_cast<std::size_t>(n) * n)};
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        double re = rng.next_gaussian();
        double im = rng.next_gaussian();
        z.at(r, c) = std::complex<double>(re, im) * std::numbers::sqrt2 * 0.5;
      }
    }
    // modified Gram-Schmidt on columns; diagonal of R is ||residual|| > 0,
    // which is exactly the positive-real-diagonal convention Haar requires
    bool degenerate = false;
    for (int j = 0; j < n && !degenerate; ++j) {
      for (int i = 0; i < j; ++i) {
        std::complex<double> dot = 0;
        for (int r = 0; r < n; ++r) dot += std::conj(z.at(r, i)) * z.at(r, j);
        for (int r = 0; r < n; ++r) z.at(r, j) -= dot * z.at(r, i);
      }
      double norm = 0;
      for (int r = 0; r < n; ++r) norm += std::norm(z.at(r, j));
      norm = std::sqrt(norm);
      if (norm < 1e-12) {
        degenerate = true;
        break;
      }
      for (int r = 0; r < n; ++r) z.at(r, j) /= norm;
    }
    if (!degenerate) return z;
  }
  raise(ErrorKind::Internal, "orthonormalization degenerate after 3 retries");
}

CMatrix haar_special_unitary(int n, SampleStream& rng) {
  CMatrix u = haar_unitary(n, rng);
  double phase = std::arg(determinant(u));
  std::complex<double> fix = std::polar(1.0, -phase / n);
  for (auto& e : u.a) e *= fix;
  return u;
}

// ---------------------------------------------------------------------------
// Character evaluation on a sampled element
// ---------------------------------------------------------------------------

namespace {

/// Matrix powers of one sampled element, grown on demand.
class PowerTable {
 public:
  explicit PowerTable(CMatrix m) { powers_.push_back(std::move(m)); }

  const CMatrix& pow(int k) {
    while (static_cast<int>(powers_.size()) < k) {
      powers_.push_back(powers_.back().mul(powers_.front()));
    }
    return powers_[static_cast<std::size_t>(k - 1)];
  }

 private:
  std::vector<CMatrix> powers_;  // powers_[i] = m^(i+1)
};

std::complex<double> elementary_from_power_sums(
    const std::vector<std::complex<double>>& p, int k) {
  std::vector<std::complex<double>> e(static_cast<std::size_t>(k) + 1);
  e[0] = 1.0;
  for (int t = 1; t <= k; ++t) {
    std::complex<double> acc = 0;
    double sign = 1.0;
    for (int i = 1; i <= t; ++i) {
      acc += sign * e[static_cast<std::size_t>(t - i)] * p[static_cast<std::size_t>(i)];
      sign = -sign;
    }
    e[static_cast<std::size_t>(t)] = acc / static_cast<double>(t);
  }
  return e[static_cast<std::size_t>(k)];
}

std::complex<double> complete_from_power_sums(
    const std::vector<std::complex<double>>& p, int k) {
  std::vector<std::complex<double>> h(static_cast<std::size_t>(k) + 1);
  h[0] = 1.0;
  for (int t = 1; t <= k; ++t) {
    std::complex<double> acc = 0;
    for (int i = 1; i <= t; ++i) {
      acc += h[static_cast<std::size_t>(t - i)] * p[static_cast<std::size_t>(i)];
    }
    h[static_cast<std::size_t>(t)] = acc / static_cast<double>(t);
  }
  return h[static_cast<std::size_t>(k)];
}

/// chi_V(g^m) by structural recursion: Newton's identities turn exterior and
/// symmetric powers into power-sum combinations chi(g^{m*i}).
std::complex<double> char_value(const RepSpec& v, PowerTable& pows, int m) {
  return std::visit(
      [&](const auto& node) -> std::complex<double> {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, RepStd>) {
          return pows.pow(m).trace();
        } else if constexpr (std::is_same_v<T, RepDual>) {
          return std::conj(char_value(*node.of, pows, m));
        } else if constexpr (std::is_same_v<T, RepDirectSum>) {
          std::complex<double> s = 0;
          for (const auto& c : node.summands) s += char_value(*c, pows, m);
          return s;
        } else if constexpr (std::is_same_v<T, RepTensor>) {
          std::complex<double> s = 1;
          for (const auto& c : node.factors) s *= char_value(*c, pows, m);
          return s;
        } else if constexpr (std::is_same_v<T, RepExterior>) {
          std::vector<std::complex<double>> p(static_cast<std::size_t>(node.k) + 1);
          for (int i = 1; i <= node.k; ++i) {
            p[static_cast<std::size_t>(i)] = char_value(*node.of, pows, m * i);
          }
          return elementary_from_power_sums(p, node.k);
        } else if constexpr (std::is_same_v<T, RepSymmetric>) {
          std::vector<std::complex<double>> p(static_cast<std::size_t>(node.k) + 1);
          for (int i = 1; i <= node.k; ++i) {
            p[static_cast<std::size_t>(i)] = char_value(*node.of, pows, m * i);
          }
          return complete_from_power_sums(p, node.k);
        } else {
          raise(ErrorKind::InvalidSpec, "representation atom invalid for a matrix group");
        }
      },
      v.node);
}

std::complex<double> torus_trace(const TorusSpec& t, const RepSpec& v,
                                 SampleStream& rng) {
  TorusWeightData data = torus_restriction(GroupSpec::torus(t.rank), v);
  std::vector<double> theta(static_cast<std::size_t>(t.rank));
  for (auto& x : theta) x = rng.next_unit();
  std::complex<double> tr = 0;
  for (const auto& [w, c] : data.weights.terms()) {
    double angle = 0;
    for (std::size_t i = 0; i < w.size(); ++i) angle += w[i] * theta[i];
    tr += c.get_d() * std::polar(1.0, 2.0 * std::numbers::pi * angle);
  }
  return tr;
}

std::complex<double> finite_trace(const FiniteClassesSpec& fc, const RepSpec& v,
                                  SampleStream& rng) {
  FiniteClassesSpec derived = finite_rep_classes(fc, v);
  // pick a class with probability size/|G|
  std::int64_t pick = static_cast<std::int64_t>(rng.next_unit() *
                                                static_cast<double>(derived.order));
  if (pick >= derived.order) pick = derived.order - 1;
  std::int64_t cum = 0;
  const ClassDatum* chosen = &derived.classes.back();
  for (const auto& c : derived.classes) {
    cum += c.size;
    if (pick < cum) {
      chosen = &c;
      break;
    }
  }
  std::complex<double> tr = 0;
  for (auto e : chosen->exponents) {
    tr += std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(e) /
                              static_cast<double>(derived.modulus));
  }
  return tr;
}

}  // namespace

std::complex<double> haar_sample_trace(const GroupSpec& g, const RepSpec& v,
                                       SampleStream& rng) {
  return std::visit(
      [&](const auto& node) -> std::complex<double> {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, TorusSpec>) {
          return torus_trace(node, v, rng);
        } else if constexpr (std::is_same_v<T, UnitarySpec>) {
          PowerTable pows(haar_unitary(node.n, rng));
          return char_value(v, pows, 1);
        } else if constexpr (std::is_same_v<T, SpecialUnitarySpec>) {
          PowerTable pows(haar_special_unitary(node.n, rng));
          return char_value(v, pows, 1);
        } else if constexpr (std::is_same_v<T, FiniteClassesSpec>) {
          return finite_trace(node, v, rng);
        } else {
          const auto* xt = std::get_if<RepExternalTensor>(&v.node);
          if (!xt || xt->legs.size() != node.factors.size()) {
            raise(ErrorKind::InvalidSpec,
                  "a product group requires an ExternalTensor representation");
          }
          std::complex<double> tr = 1;
          for (std::size_t i = 0; i < node.factors.size(); ++i) {
            tr *= haar_sample_trace(node.factors[i], *xt->legs[i], rng);
          }
          return tr;
        }
      },
      g.node);
}

// ---------------------------------------------------------------------------
// Moment estimation
// ---------------------------------------------------------------------------

namespace {

constexpr std::uint64_t kBlockSize = 4096;

struct BlockAccum {
  std::vector<std::complex<double>> sum;
  std::vector<double> sqsum;
};

}  // namespace

std::complex<double> EmpiricalMoments::mean_at(int a, int b) const {
  return mean[static_cast<std::size_t>(a * (bmax + 1) + b)];
}

double EmpiricalMoments::stderr_at(int a, int b) const {
  return standard_error[static_cast<std::size_t>(a * (bmax + 1) + b)];
}

EmpiricalMoments estimate_moments(const GroupSpec& g, const RepSpec& v,
                                  const SampleConfig& cfg) {
  if (cfg.samples < 1) raise(ErrorKind::InvalidSpec, "sample count must be >= 1");
  if (cfg.amax < 0 || cfg.bmax < 0) {
    raise(ErrorKind::InvalidSpec, "moment bounds must be >= 0");
  }
  validate_group(g);
  rep_dim(g, v);

  const int cells = (cfg.amax + 1) * (cfg.bmax + 1);
  const int maxpow = std::max(cfg.amax, cfg.bmax);
  const std::uint64_t nblocks = (cfg.samples + kBlockSize - 1) / kBlockSize;
  std::vector<BlockAccum> blocks(nblocks);

  parallel_for(nblocks, [&](std::size_t bi) {
    BlockAccum acc;
    acc.sum.assign(static_cast<std::size_t>(cells), {0.0, 0.0});
    acc.sqsum.assign(static_cast<std::size_t>(cells), 0.0);
    const std::uint64_t lo = static_cast<std::uint64_t>(bi) * kBlockSize;
    const std::uint64_t hi = std::min(cfg.samples, lo + kBlockSize);
    std::vector<std::complex<double>> zpow(static_cast<std::size_t>(maxpow) + 1);
    for (std::uint64_t i = lo; i < hi; ++i) {
      SampleStream rng(cfg.seed, i);  // one substream per sample
      std::complex<double> z = haar_sample_trace(g, v, rng);
      zpow[0] = 1.0;
      for (int p = 1; p <= maxpow; ++p) zpow[static_cast<std::size_t>(p)] =
          zpow[static_cast<std::size_t>(p - 1)] * z;
      for (int a = 0; a <= cfg.amax; ++a) {
        for (int b = 0; b <= cfg.bmax; ++b) {
          // z^a conj(z)^b; conjugation of the power table keeps the
          // conjugate-symmetry m(a,b) = conj(m(b,a)) exact in floating point
          std::complex<double> w = zpow[static_cast<std::size_t>(a)] *
                                   std::conj(zpow[static_cast<std::size_t>(b)]);
          std::size_t cell = static_cast<std::size_t>(a * (cfg.bmax + 1) + b);
          acc.sum[cell] += w;
          acc.sqsum[cell] += std::norm(w);
        }
      }
    }
    blocks[bi] = std::move(acc);
  });

  // combine blocks in index order: scheduling-independent, bit-stable
  std::vector<std::complex<double>> sum(static_cast<std::size_t>(cells), {0.0, 0.0});
  std::vector<double> sqsum(static_cast<std::size_t>(cells), 0.0);
  for (const auto& blk : blocks) {
    for (int c = 0; c < cells; ++c) {
      sum[static_cast<std::size_t>(c)] += blk.sum[static_cast<std::size_t>(c)];
      sqsum[static_cast<std::size_t>(c)] += blk.sqsum[static_cast<std::size_t>(c)];
    }
  }

  EmpiricalMoments out;
  out.amax = cfg.amax;
  out.bmax = cfg.bmax;
  out.samples = cfg.samples;
  out.seed = cfg.seed;
  out.mean.resize(static_cast<std::size_t>(cells));
  out.standard_error.resize(static_cast<std::size_t>(cells));
  const double n = static_cast<double>(cfg.samples);
  for (int c = 0; c < cells; ++c) {
    std::complex<double> m = sum[static_cast<std::size_t>(c)] / n;
    out.mean[static_cast<std::size_t>(c)] = m;
    if (cfg.samples > 1) {
      double var = (sqsum[static_cast<std::size_t>(c)] - n * std::norm(m)) /
                   (n * (n - 1.0));
      out.standard_error[static_cast<std::size_t>(c)] = std::sqrt(std::max(var, 0.0));
    } else {
      out.standard_error[static_cast<std::size_t>(c)] = 0.0;
    }
  }
  return out;
}

std::vector<GaussianRow> gaussian_limit_report(const std::vector<int>& ns, int amax,
                                               std::uint64_t samples,
                                               std::uint64_t seed) {
  std::vector<GaussianRow> rows;
  for (int n : ns) {
    GroupSpec g = GroupSpec::unitary(n);
    RepPtr v = RepSpec::std_rep();
    auto table = moment_table(g, *v, amax, amax);
    std::optional<EmpiricalMoments> est;
    if (samples > 0) {
      SampleConfig cfg;
      cfg.samples = samples;
      cfg.seed = seed;
      cfg.amax = amax;
      cfg.bmax = amax;
      est = estimate_moments(g, *v, cfg);
    }
    for (int a = 0; a <= amax; ++a) {
      GaussianRow row;
      row.n = n;
      row.a = a;
      row.exact = table.at(a, a);
      row.gaussian = factorial(static_cast<unsigned>(a));
      row.difference = row.gaussian - row.exact;
      // the unitary diagonal meets the Gaussian moments up to a = n and
      // never exceeds them; anything else is an engine fault
      if (row.difference < 0 || (a <= n && row.difference != 0)) {
        raise(ErrorKind::Internal,
              "diagonal moment out of range against the Gaussian reference at n=" +
                  std::to_string(n) + ", a=" + std::to_string(a));
      }
      if (est) {
        row.estimate = est->mean_at(a, a).real();
        row.estimate_stderr = est->stderr_at(a, a);
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace stm
