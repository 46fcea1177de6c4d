#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "qcongr/rational.hpp"

namespace qcongr {

// Degree reported for the zero polynomial.
inline constexpr long kMinusInfinity = std::numeric_limits<long>::min();

// Dense polynomial in q over Q.
//
// Stored as integer numerators over one positive common denominator with
// gcd(content, denominator) = 1, so products and reductions run on integers.
// Trailing zeros are stripped after every operation; zero is the empty vector
// over denominator 1, which makes operator== a structural comparison.
class Poly {
 public:
  Poly() = default;
  Poly(const Rational& c);  // NOLINT(implicit)
  explicit Poly(long long c) : Poly(make_rational(c)) {}

  static Poly monomial(const Rational& c, std::size_t deg);
  static Poly from_rationals(const std::vector<Rational>& coeffs);
  static Poly from_integers(std::vector<Integer> numerators, Integer denominator = 1);

  bool is_zero() const { return num_.empty(); }
  long degree() const { return num_.empty() ? kMinusInfinity : static_cast<long>(num_.size()) - 1; }
  std::size_t size() const { return num_.size(); }
  Rational coeff(std::size_t i) const;
  Rational leading() const;
  const std::vector<Integer>& numerators() const { return num_; }
  const Integer& denominator() const { return den_; }
  bool is_monic() const;
  bool is_integral() const { return den_ == 1; }

  Poly operator-() const;
  Poly& operator+=(const Poly& g);
  Poly& operator-=(const Poly& g);
  Poly& operator*=(const Poly& g);
  Poly& operator*=(const Rational& c);
  friend Poly operator+(Poly f, const Poly& g) { return f += g; }
  friend Poly operator-(Poly f, const Poly& g) { return f -= g; }
  friend Poly operator*(const Poly& f, const Poly& g);
  friend Poly operator*(Poly f, const Rational& c) { return f *= c; }
  friend Poly operator*(const Rational& c, Poly f) { return f *= c; }
  friend bool operator==(const Poly& f, const Poly& g) { return f.den_ == g.den_ && f.num_ == g.num_; }

  // Multiply by q^k, k >= 0.
  Poly shifted(std::size_t k) const;
  Poly monic() const;
  Rational evaluate(const Rational& x) const;
  Poly pow(unsigned e) const;

  // Remainder modulo a monic polynomial with integer coefficients; stays on
  // integers throughout.
  Poly rem_monic(const Poly& m) const;

  // Descending powers, e.g. "q^3 - 2*q + 1/2".
  std::string to_string(const std::string& var = "q") const;

 private:
  void normalize();

  std::vector<Integer> num_;
  Integer den_ = 1;
};

struct DivRem {
  Poly quotient;
  Poly remainder;
};

// Throws std::domain_error when g is zero.
DivRem divrem(const Poly& f, const Poly& g);

struct ExtGcd {
  Poly gcd;  // monic, or zero when f = g = 0
  Poly u;
  Poly v;
};

// u*f + v*g = gcd. Throws std::invalid_argument when both inputs are zero.
ExtGcd ext_gcd(const Poly& f, const Poly& g);

// Phi_n(q), memoized per process.
const Poly& cyclotomic(unsigned n);

// 1 + q + ... + q^{n-1}.
Poly q_integer(unsigned n);

// q^shift * body. The body has a nonzero constant term unless it is zero.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(const Rational& c) : body_(c) {}  // NOLINT(implicit)
  LaurentPoly(Poly body, long shift = 0);

  static LaurentPoly monomial(const Rational& c, long e);

  const Poly& body() const { return body_; }
  long shift() const { return shift_; }
  bool is_zero() const { return body_.is_zero(); }
  long min_degree() const { return shift_; }
  long max_degree() const { return is_zero() ? kMinusInfinity : shift_ + body_.degree(); }

  LaurentPoly operator-() const { return LaurentPoly(-body_, shift_); }
  LaurentPoly& operator+=(const LaurentPoly& g);
  LaurentPoly& operator-=(const LaurentPoly& g);
  friend LaurentPoly operator+(LaurentPoly f, const LaurentPoly& g) { return f += g; }
  friend LaurentPoly operator-(LaurentPoly f, const LaurentPoly& g) { return f -= g; }
  friend LaurentPoly operator*(const LaurentPoly& f, const LaurentPoly& g);
  friend LaurentPoly operator*(const LaurentPoly& f, const Rational& c) { return LaurentPoly(f.body_ * c, f.shift_); }
  friend bool operator==(const LaurentPoly& f, const LaurentPoly& g) {
    return f.shift_ == g.shift_ && f.body_ == g.body_;
  }

  // a*f + b*q^e*f, the workhorse for multiplying by (a + b q^e).
  LaurentPoly mul_binomial(const Rational& a, const Rational& b, long e) const;
  LaurentPoly times_q(long e) const { return is_zero() ? *this : LaurentPoly(body_, shift_ + e); }

  std::string to_string(const std::string& var = "q") const;

 private:
  void normalize();

  Poly body_;
  long shift_ = 0;
};

LaurentPoly laurent_mul(const LaurentPoly& f, const LaurentPoly& g);

}  // namespace qcongr
