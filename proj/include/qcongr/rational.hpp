#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace qcongr {

using Integer = mpz_class;
// mpq_class keeps values canonical (lowest terms, positive denominator)
// as long as every constructor from a raw pair is followed by canonicalize().
using Rational = mpq_class;

inline Rational make_rational(long long num, long long den = 1) {
  Rational r{Integer(std::to_string(num)), Integer(std::to_string(den))};
  r.canonicalize();
  return r;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
  Rational r{num, den};
  r.canonicalize();
  return r;
}

inline Integer make_integer(long long v) { return Integer(std::to_string(v)); }

inline std::string to_string(const Integer& v) { return v.get_str(); }
inline std::string to_string(const Rational& v) { return v.get_str(); }

inline bool is_integer(const Rational& v) { return v.get_den() == 1; }

// Floor division and non-negative remainder for possibly negative operands.
inline long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline long long mod_floor(long long a, long long b) {
  long long r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) r += b;
  return r;
}

}  // namespace qcongr
