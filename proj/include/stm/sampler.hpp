#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stm/bigint.hpp"
#include "stm/group.hpp"

namespace stm {

// ---------------------------------------------------------------------------
// Counter-based randomness
// ---------------------------------------------------------------------------

/// Philox4x32-10 keyed block function (verified against the reference test
/// vectors). Counter-based generation gives every (seed, stream, counter)
/// triple an independent value, so parallel sampling is reproducible
/// regardless of scheduling.
std::array<std::uint32_t, 4> philox4x32(const std::array<std::uint32_t, 4>& counter,
                                        const std::array<std::uint32_t, 2>& key);

/// One reproducible substream: draws are a pure function of
/// (seed, stream, position).
class SampleStream {
 public:
  SampleStream(std::uint64_t seed, std::uint64_t stream)
      : seed_(seed), stream_(stream) {}

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  double next_unit();      // uniform in [0, 1), 53-bit
  double next_gaussian();  // standard normal, Box-Muller pairs

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
  std::array<std::uint32_t, 4> block_{};
  int avail_ = 0;
  std::optional<double> spare_gaussian_;
};

// ---------------------------------------------------------------------------
// Haar samples
// ---------------------------------------------------------------------------

/// Small dense complex matrix, row-major.
struct CMatrix {
  int n = 0;
  std::vector<std::complex<double>> a;

  std::complex<double>& at(int r, int c) { return a[static_cast<std::size_t>(r * n + c)]; }
  const std::complex<double>& at(int r, int c) const {
    return a[static_cast<std::size_t>(r * n + c)];
  }
  std::complex<double> trace() const;
  static CMatrix identity(int n);
  CMatrix mul(const CMatrix& other) const;
};

/// Haar-distributed element of U(n): a complex Ginibre matrix orthonormalized
/// by modified Gram-Schmidt. The triangular factor's diagonal is real positive
/// by construction (the uncorrected factorization of a generic QR routine is
/// not Haar). Degenerate draws retry with fresh randomness, at most 3 times.
CMatrix haar_unitary(int n, SampleStream& rng);

/// Haar on SU(n): a Haar U(n) sample u scaled by det(u)^(-1/n) (principal
/// branch). For fixed s in SU(n), det(us) = det(u), so the map commutes with
/// right translation by SU(n); the pushforward of Haar measure is therefore
/// right-invariant on SU(n) and hence equals Haar measure there.
CMatrix haar_special_unitary(int n, SampleStream& rng);

/// Trace of a Haar-random group element acting in V.
std::complex<double> haar_sample_trace(const GroupSpec& g, const RepSpec& v,
                                       SampleStream& rng);

// ---------------------------------------------------------------------------
// Moment estimation
// ---------------------------------------------------------------------------

struct SampleConfig {
  std::string group_id;  // informational
  std::string rep_id;
  std::uint64_t samples = 1;
  std::uint64_t seed = 0;
  int amax = 0;
  int bmax = 0;
};

struct EmpiricalMoments {
  int amax = 0;
  int bmax = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<std::complex<double>> mean;    // (amax+1) x (bmax+1), row-major
  std::vector<double> standard_error;

  std::complex<double> mean_at(int a, int b) const;
  double stderr_at(int a, int b) const;
};

/// Monte Carlo estimate of every mixed moment with a <= amax, b <= bmax.
/// Sample i draws from substream i of the seed, so the estimate is a pure
/// function of the config. Accumulation uses fixed 4096-sample blocks combined
/// in block order, making the result bit-identical for any worker count.
EmpiricalMoments estimate_moments(const GroupSpec& g, const RepSpec& v,
                                  const SampleConfig& cfg);

// ---------------------------------------------------------------------------
// Gaussian comparison
// ---------------------------------------------------------------------------

/// One row of the unitary-vs-Gaussian table: the exact diagonal moment
/// F_{U(n)}(a,a), the complex Gaussian moment a!, and their difference
/// (zero exactly when a <= n). When the report is run with samples > 0 the
/// row also carries a Monte Carlo estimate of the same diagonal moment.
struct GaussianRow {
  int n = 0;
  int a = 0;
  Int exact;
  Int gaussian;
  Int difference;  // gaussian - exact, nonnegative
  std::optional<double> estimate;
  std::optional<double> estimate_stderr;
};

std::vector<GaussianRow> gaussian_limit_report(const std::vector<int>& ns, int amax,
                                               std::uint64_t samples = 0,
                                               std::uint64_t seed = 0);

}  // namespace stm
