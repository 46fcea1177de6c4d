#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcongr/multipoly.hpp"

namespace qcongr {

// coeff * q^q_exp * vars, the argument of a q-shifted factorial.
struct QAtom {
  Rational coeff = 1;
  long q_exp = 0;
  Monomial vars;

  static QAtom q(long e, const Rational& c = 1) { return QAtom{c, e, {}}; }
  static QAtom var(Var v, long e = 0, const Rational& c = 1, int power = 1) { return QAtom{c, e, Monomial::of(v, power)}; }

  // Replace the variable v by q^k.
  QAtom specialize(Var v, long k) const;
  std::string to_string() const;

  friend bool operator==(const QAtom& a, const QAtom& b) {
    return a.coeff == b.coeff && a.q_exp == b.q_exp && a.vars == b.vars;
  }
  friend bool operator<(const QAtom& a, const QAtom& b);
};

// per_k * k + offset.
struct Affine {
  long per_k = 0;
  long offset = 0;
  long at(long k) const { return per_k * k + offset; }
  bool constant() const { return per_k == 0; }
  friend bool operator==(const Affine&, const Affine&) = default;
  friend auto operator<=>(const Affine&, const Affine&) = default;
};

// (atom; q^step)_{length(k)}.
struct PochSpec {
  QAtom atom;
  long step = 1;
  Affine length{1, 0};

  friend bool operator==(const PochSpec&, const PochSpec&) = default;
  friend bool operator<(const PochSpec& a, const PochSpec& b);
  std::string to_string() const;
};

// sum_{k=0}^{top} scale * vars^monomial * q^{power(k)} * prod num / prod den.
// A closed form is the special case top = 0 with constant lengths.
struct SeriesSpec {
  std::vector<PochSpec> numerator;
  std::vector<PochSpec> denominator;
  Affine power;
  long top = 0;
  Rational scale = 1;
  Monomial monomial;
  std::string label;

  std::set<Var> variables() const;
  // Canonical factor order, so equal formulas compare equal.
  void normalize();
  std::string to_string() const;
  friend bool operator==(const SeriesSpec& a, const SeriesSpec& b) {
    return a.numerator == b.numerator && a.denominator == b.denominator && a.power == b.power && a.top == b.top &&
           a.scale == b.scale && a.monomial == b.monomial;
  }
};

class DegenerateDenominator : public std::runtime_error {
 public:
  DegenerateDenominator(long k, std::string factor)
      : std::runtime_error("degenerate denominator at k=" + std::to_string(k) + ": factor " + factor + " is identically zero"),
        k_(k),
        factor_(std::move(factor)) {}
  long k() const { return k_; }
  const std::string& factor() const { return factor_; }

 private:
  long k_;
  std::string factor_;
};

// A summand whose denominator has higher Phi_n-multiplicity than its numerator.
class TermNotInvertible : public NonInvertible {
 public:
  TermNotInvertible(long k, std::string factor, Poly gcd)
      : NonInvertible("term k=" + std::to_string(k) + " has a non-invertible denominator factor " + factor, std::move(gcd)),
        k_(k),
        factor_(std::move(factor)) {}
  long k() const { return k_; }
  const std::string& factor() const { return factor_; }

 private:
  long k_;
  std::string factor_;
};

// The factor 1 - atom*q^{step*j} as a binomial, with inverted variables moved
// into `compensation` (the monomial the factor was divided by).
Binomial poch_factor(const QAtom& atom, long q_shift, Monomial& compensation);

// A series side flattened into binomial factors.
//
// term_0 = prod pre_num / prod pre_den and term_{k+1} = term_k * prod step_num[k] / prod step_den[k].
// Summation stops early at the first identically-zero numerator factor, the
// usual convention for terminating series; top = -1 means the side is zero.
struct ExpandedSide {
  std::vector<Binomial> pre_num;
  std::vector<Binomial> pre_den;
  std::vector<std::vector<Binomial>> step_num;
  std::vector<std::vector<Binomial>> step_den;
  long top = -1;

  bool vanishes() const { return top < 0; }
  std::vector<Binomial> merged_denominator() const;
  int degree_bound(Var v) const;  // of the merged numerator
};

ExpandedSide expand(const SeriesSpec& series);

LaurentPoly numeric_value(const Binomial& b);  // requires no variables

// prod_{j<k} (1 - atom q^{step j}); atoms with inverted variables are rejected.
MPoly<RingElem> pochhammer(const PochSpec& spec, long k, const ModulusRing& ring);
MFraction<RingElem> summand(const SeriesSpec& series, long k, const ModulusRing& ring);
RingElem sum_numeric(const SeriesSpec& series, const ModulusRing& ring);
MFraction<RingElem> sum_symbolic(const SeriesSpec& series, const ModulusRing& ring);

using Assignment = std::map<Var, Rational>;

Rational atom_value(const QAtom& atom, const Rational& q, const Assignment& values);

// Terminating r+1 phi r with base q^base_exp and all parameters numeric.
Rational phi_series(const std::vector<QAtom>& numerator, const std::vector<QAtom>& denominator, long base_exp,
                    const QAtom& argument, long top, const Rational& q, const Assignment& values = {});

// Exact value of a series at rational q and variable values.
Rational evaluate_series(const SeriesSpec& series, const Rational& q, const Assignment& values);

}  // namespace qcongr
