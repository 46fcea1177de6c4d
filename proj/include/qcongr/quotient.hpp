#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <variant>

#include "qcongr/poly.hpp"

namespace qcongr {

// Raised when an element shares a factor with the modulus; carries that gcd.
class NonInvertible : public std::runtime_error {
 public:
  NonInvertible(const std::string& what, Poly gcd) : std::runtime_error(what), gcd_(std::move(gcd)) {}
  const Poly& gcd() const { return gcd_; }

 private:
  Poly gcd_;
};

// q itself is not a unit, so negative powers of q cannot be reduced.
class NonInvertibleShift : public NonInvertible {
 public:
  using NonInvertible::NonInvertible;
};

class RingMismatch : public std::logic_error {
 public:
  RingMismatch() : std::logic_error("elements belong to different quotient rings") {}
};

struct CyclotomicPower {
  unsigned n = 0;
  unsigned m = 0;
};
struct ExplicitPoly {};
using ModulusDescriptor = std::variant<CyclotomicPower, ExplicitPoly>;

class RingElem;

// Q[q]/M(q) for a monic modulus M of degree >= 1.
class ModulusRing {
 public:
  ModulusRing() = default;
  static ModulusRing cyclotomic_power(unsigned n, unsigned m);
  static ModulusRing explicit_poly(const Poly& modulus);

  const Poly& modulus() const;
  const ModulusDescriptor& descriptor() const;
  std::size_t dimension() const { return static_cast<std::size_t>(modulus().degree()); }
  std::string describe() const;

  RingElem reduce(const Poly& f) const;
  RingElem reduce(const LaurentPoly& f) const;
  RingElem zero() const;
  RingElem one() const;
  RingElem constant(const Rational& c) const;
  // q^e; negative e needs q to be a unit (NonInvertibleShift otherwise).
  RingElem q_power(long e) const;

  bool valid() const { return impl_ != nullptr; }
  bool same_as(const ModulusRing& other) const;
  friend bool operator==(const ModulusRing& a, const ModulusRing& b) { return a.same_as(b); }

  struct Impl;

 private:
  explicit ModulusRing(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<Impl> impl_;
  friend class RingElem;
};

class RingElem {
 public:
  using Domain = ModulusRing;

  RingElem() = default;
  RingElem(ModulusRing ring, Poly residue);  // residue must already be reduced

  const ModulusRing& ring() const;
  const Poly& residue() const { return residue_; }
  bool is_zero() const { return residue_.is_zero(); }
  bool is_unit() const;
  RingElem inverse() const;  // throws NonInvertible
  RingElem pow(long e) const;

  RingElem operator-() const;
  RingElem& operator+=(const RingElem& b);
  RingElem& operator-=(const RingElem& b);
  RingElem& operator*=(const RingElem& b);
  RingElem& operator*=(const Rational& c);
  friend RingElem operator+(RingElem a, const RingElem& b) { return a += b; }
  friend RingElem operator-(RingElem a, const RingElem& b) { return a -= b; }
  friend RingElem operator*(RingElem a, const RingElem& b) { return a *= b; }
  friend RingElem operator*(RingElem a, const Rational& c) { return a *= c; }
  friend bool operator==(const RingElem& a, const RingElem& b);

  // a*self + b*q^e*self.
  RingElem mul_binomial(const Rational& a, const Rational& b, long e) const;

  std::string to_string() const { return residue_.to_string(); }

 private:
  void check_same(const RingElem& b) const;

  ModulusRing ring_;
  Poly residue_;
};

RingElem reduce(const ModulusRing& ring, const Poly& f);
RingElem reduce(const ModulusRing& ring, const LaurentPoly& f);
bool is_unit(const RingElem& e);
RingElem invert(const RingElem& e);

}  // namespace qcongr
