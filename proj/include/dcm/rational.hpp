#pragma once

// Exact rationals. gmpxx does the heavy lifting; this header pins the few
// conventions the rest of the library relies on (canonical form, rendering,
// binomials) so no caller touches raw mpq functions.

#include <gmpxx.h>

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace dcm {

using Rat = mpq_class;

// mpq_class(num, den) does not canonicalize; this does, and rejects den = 0.
inline Rat rat(long num, long den = 1) {
  if (den == 0) throw std::domain_error("rat: zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline Rat parse_rat(const std::string& s) {
  mpq_class q;
  if (s.empty() || mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
    throw std::invalid_argument("parse_rat: bad rational '" + s + "'");
  if (mpz_sgn(mpq_denref(q.get_mpq_t())) == 0)
    throw std::domain_error("parse_rat: zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

// "7", "-3/2": denominator printed only when it is not 1.
inline std::string rat_str(const Rat& q) { return q.get_str(); }

inline Rat binom(unsigned long n, unsigned long k) {
  if (k > n) return Rat(0);
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Rat(b);
}

inline bool is_integer(const Rat& q) {
  return mpz_cmp_ui(mpq_denref(q.get_mpq_t()), 1) == 0;
}

}  // namespace dcm
