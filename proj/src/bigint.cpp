#include "stm/bigint.hpp"

#include <cctype>

#include "stm/error.hpp"

namespace stm {

Int from_dec(const std::string& s) {
  if (s.empty()) raise(ErrorKind::InvalidSpec, "empty integer literal");
  std::size_t i = (s[0] == '-') ? 1 : 0;
  if (i == s.size()) raise(ErrorKind::InvalidSpec, "bare '-' is not an integer");
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
      raise(ErrorKind::InvalidSpec, "bad integer literal: '" + s + "'");
    }
  }
  return Int(s, 10);
}

Int factorial(unsigned n) {
  Int r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

Int binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Int int_pow(const Int& base, unsigned e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

}  // namespace stm
