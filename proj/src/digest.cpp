#include "stm/digest.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>

namespace stm {

namespace {

// Round constants are the fractional parts of the cube roots of the first 64
// primes (and the initial state those of the square roots of the first 8);
// deriving them at startup avoids a hand-typed table.
struct Sha256Tables {
  std::array<std::uint32_t, 64> k{};
  std::array<std::uint32_t, 8> h0{};

  Sha256Tables() {
    int primes[64];
    int count = 0;
    for (int n = 2; count < 64; ++n) {
      bool prime = true;
      for (int d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
          prime = false;
          break;
        }
      }
      if (prime) primes[count++] = n;
    }
    for (int i = 0; i < 64; ++i) {
      double root = std::cbrt(static_cast<double>(primes[i]));
      k[static_cast<std::size_t>(i)] =
          static_cast<std::uint32_t>(std::floor((root - std::floor(root)) * 4294967296.0));
    }
    for (int i = 0; i < 8; ++i) {
      double root = std::sqrt(static_cast<double>(primes[i]));
      h0[static_cast<std::size_t>(i)] =
          static_cast<std::uint32_t>(std::floor((root - std::floor(root)) * 4294967296.0));
    }
  }
};

const Sha256Tables& tables() {
  static const Sha256Tables t;
  return t;
}

inline std::uint32_t rotr(std::uint32_t x, int n) {
  return (x >> n) | (x << (32 - n));
}

void compress(std::array<std::uint32_t, 8>& h, const unsigned char* block) {
  const auto& tab = tables();
  std::uint32_t w[64];
  for (int i = 0; i < 16; ++i) {
    w[i] = (std::uint32_t(block[4 * i]) << 24) | (std::uint32_t(block[4 * i + 1]) << 16) |
           (std::uint32_t(block[4 * i + 2]) << 8) | std::uint32_t(block[4 * i + 3]);
  }
  for (int i = 16; i < 64; ++i) {
    std::uint32_t s0 = rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
    std::uint32_t s1 = rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
    w[i] = w[i - 16] + s0 + w[i - 7] + s1;
  }
  std::uint32_t a = h[0], b = h[1], c = h[2], d = h[3];
  std::uint32_t e = h[4], f = h[5], g = h[6], hh = h[7];
  for (int i = 0; i < 64; ++i) {
    std::uint32_t s1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
    std::uint32_t ch = (e & f) ^ (~e & g);
    std::uint32_t t1 = hh + s1 + ch + tab.k[static_cast<std::size_t>(i)] + w[i];
    std::uint32_t s0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
    std::uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
    std::uint32_t t2 = s0 + maj;
    hh = g;
    g = f;
    f = e;
    e = d + t1;
    d = c;
    c = b;
    b = a;
    a = t1 + t2;
  }
  h[0] += a;
  h[1] += b;
  h[2] += c;
  h[3] += d;
  h[4] += e;
  h[5] += f;
  h[6] += g;
  h[7] += hh;
}

}  // namespace

std::string sha256_hex(std::string_view data) {
  std::array<std::uint32_t, 8> h = tables().h0;
  const auto* bytes = reinterpret_cast<const unsigned char*>(data.data());
  std::size_t n = data.size();
  std::size_t full = n / 64;
  for (std::size_t i = 0; i < full; ++i) compress(h, bytes + 64 * i);

  unsigned char tail[128];
  std::size_t rest = n - 64 * full;
  std::memcpy(tail, bytes + 64 * full, rest);
  tail[rest] = 0x80;
  std::size_t padded = (rest + 1 + 8 <= 64) ? 64 : 128;
  std::memset(tail + rest + 1, 0, padded - rest - 1 - 8);
  std::uint64_t bits = static_cast<std::uint64_t>(n) * 8;
  for (int i = 0; i < 8; ++i) {
    tail[padded - 1 - static_cast<std::size_t>(i)] =
        static_cast<unsigned char>((bits >> (8 * i)) & 0xff);
  }
  compress(h, tail);
  if (padded == 128) compress(h, tail + 64);

  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(64);
  for (auto word : h) {
    for (int shift = 28; shift >= 0; shift -= 4) {
      out.push_back(hex[(word >> shift) & 0xf]);
    }
  }
  return out;
}

}  // namespace stm
