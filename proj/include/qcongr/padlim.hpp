#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "qcongr/claims.hpp"

namespace qcongr {

// Raised for a rational whose denominator is divisible by p.
class NotPAdicInteger : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

bool is_prime(std::uint64_t n);

// An element of Z/p^e.
class ResidueInt {
 public:
  ResidueInt() = default;
  ResidueInt(std::uint64_t p, unsigned e, std::int64_t value);
  static ResidueInt from_rational(const Rational& x, std::uint64_t p, unsigned e);

  std::uint64_t value() const { return value_; }
  std::uint64_t p() const { return p_; }
  unsigned e() const { return e_; }
  std::uint64_t modulus() const { return modulus_; }
  bool is_unit() const { return value_ % p_ != 0; }
  ResidueInt inverse() const;  // throws NotPAdicInteger

  ResidueInt operator-() const;
  ResidueInt& operator+=(const ResidueInt& b);
  ResidueInt& operator-=(const ResidueInt& b);
  ResidueInt& operator*=(const ResidueInt& b);
  friend ResidueInt operator+(ResidueInt a, const ResidueInt& b) { return a += b; }
  friend ResidueInt operator-(ResidueInt a, const ResidueInt& b) { return a -= b; }
  friend ResidueInt operator*(ResidueInt a, const ResidueInt& b) { return a *= b; }
  ResidueInt pow(unsigned long k) const;
  friend bool operator==(const ResidueInt& a, const ResidueInt& b) {
    return a.p_ == b.p_ && a.e_ == b.e_ && a.value_ == b.value_;
  }
  std::string to_string() const { return std::to_string(value_); }

 private:
  void check(const ResidueInt& b) const;
  std::uint64_t p_ = 2;
  unsigned e_ = 1;
  std::uint64_t modulus_ = 2;
  std::uint64_t value_ = 0;
};

// (a)_k modulo p^e.
ResidueInt rising_factorial_mod(const Rational& a, long k, std::uint64_t p, unsigned e);
// Gamma_p(x) modulo p^e through the integer representative of x in [0, p^e).
ResidueInt gamma_p(const Rational& x, std::uint64_t p, unsigned e);

// A rising series side modulo p^e, term by term in Z/p^e.
ResidueInt rising_series_mod(const RisingSeries& side, std::uint64_t p, unsigned e);
// The same side as an exact rational (the Gamma factor is not allowed here).
Rational rising_series_exact(const RisingSeries& side);

VerificationReport verify_van_hamme(std::uint64_t p, const VerifyOptions& options = {});
VerificationReport verify_quarter_corollary(std::uint64_t p, const VerifyOptions& options = {});
VerificationReport verify_thm13_limit(std::uint64_t p, int d, int s, const VerifyOptions& options = {});

}  // namespace qcongr
