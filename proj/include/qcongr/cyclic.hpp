#pragma once

#include <vector>

#include "qcongr/quotient.hpp"

namespace qcongr {

class CyclicElem;

// Q[q]/((q^n - 1)^r), written in the basis q^i u^j with u = q^n - 1,
// 0 <= i < n, 0 <= j < r.
//
// Phi_n^m divides (q^n - 1)^r for m <= r, so this ring maps onto every
// Q[q]/Phi_n^m with m <= r. Multiplying by q^e only permutes the q^i part and
// spreads carries (1 + u)^w over higher levels, which makes the products
// (a + b q^e) of q-shifted factorials cost O(n r^2) instead of a dense product.
class CyclicRing {
 public:
  CyclicRing() = default;
  CyclicRing(unsigned n, unsigned r);

  unsigned n() const { return n_; }
  unsigned r() const { return r_; }

  CyclicElem zero() const;
  CyclicElem one() const;
  CyclicElem constant(const Rational& c) const;
  CyclicElem q_power(long e) const;

  // Image in Q[q]/Phi_n^m (requires m <= r).
  RingElem project(const CyclicElem& f, const ModulusRing& target) const;

 private:
  unsigned n_ = 1;
  unsigned r_ = 1;
};

class CyclicElem {
 public:
  using Domain = CyclicRing;

  CyclicElem() = default;
  CyclicElem(unsigned n, unsigned r) : n_(n), r_(r), c_(static_cast<std::size_t>(n) * r) {}

  unsigned n() const { return n_; }
  unsigned r() const { return r_; }
  // Zero in the lifted ring; zero images in a quotient are checked via project.
  bool is_zero() const;
  const Integer& denominator() const { return den_; }
  const std::vector<Integer>& coefficients() const { return c_; }
  Integer& at(unsigned level, unsigned i) { return c_[static_cast<std::size_t>(level) * n_ + i]; }

  CyclicElem operator-() const;
  CyclicElem& operator+=(const CyclicElem& g);
  CyclicElem& operator-=(const CyclicElem& g);
  CyclicElem& operator*=(const Rational& c);
  friend CyclicElem operator+(CyclicElem f, const CyclicElem& g) { return f += g; }
  friend CyclicElem operator-(CyclicElem f, const CyclicElem& g) { return f -= g; }
  friend CyclicElem operator*(const CyclicElem& f, const CyclicElem& g);
  friend CyclicElem operator*(CyclicElem f, const Rational& c) { return f *= c; }

  // a*self + b*q^e*self.
  CyclicElem mul_binomial(const Rational& a, const Rational& b, long e) const;
  CyclicElem& mul_binomial_assign(const Rational& a, const Rational& b, long e);
  CyclicElem times_q(long e) const { return mul_binomial(0, 1, e); }

  // Dense representative sum_j a_j(q) (q^n - 1)^j.
  Poly to_poly() const;

 private:
  void add_shifted(std::vector<Integer>& out, long e, const Integer& scale) const;
  void add_scaled(std::vector<Integer>& out, const Integer& scale) const;
  void normalize();

  unsigned n_ = 1;
  unsigned r_ = 1;
  std::vector<Integer> c_ = std::vector<Integer>(1);
  Integer den_ = 1;
  friend class CyclicRing;
};

}  // namespace qcongr
