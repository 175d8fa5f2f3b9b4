#pragma once

#include <gmpxx.h>

#include <string>

namespace ellsurf {

using Integer = mpz_class;
/// Exact rational; gmp keeps it canonical (reduced, positive denominator).
using Rat = mpq_class;

inline Rat make_rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

inline std::string to_string(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Integer floor_rat(const Rat& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Integer ceil_rat(const Rat& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Integer ipow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

/// Largest k >= 0 with k^2 * d <= bound (d > 0, bound >= 0).
inline Integer isqrt_ratio(const Rat& bound, const Rat& d) {
  if (bound < 0) return -1;
  Rat ratio = bound / d;
  Integer k = floor_rat(ratio);
  mpz_sqrt(k.get_mpz_t(), k.get_mpz_t());
  while (Rat((k + 1) * (k + 1)) * d <= bound) ++k;
  while (k > 0 && Rat(k * k) * d > bound) --k;
  return k;
}

}  // namespace ellsurf
