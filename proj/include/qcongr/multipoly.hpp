#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qcongr/cyclic.hpp"
#include "qcongr/quotient.hpp"

namespace qcongr {

// The closed set of symbolic parameters. b and c only occur in the
// classical summation identities, which are checked on rational grids.
enum class Var : int { X = 0, Y, A, M, B, C };
inline constexpr int kVarCount = 6;
inline constexpr std::array<const char*, kVarCount> kVarNames = {"x", "y", "a", "m", "b", "c"};

std::optional<Var> var_from_name(const std::string& name);
inline const char* var_name(Var v) { return kVarNames[static_cast<int>(v)]; }

// Exponent vector over the variable set. Polynomials only hold nonnegative
// exponents; q-shifted factorial arguments such as q^s/a may carry negative ones.
struct Monomial {
  std::array<int, kVarCount> e{};

  static Monomial of(Var v, int power = 1) {
    Monomial m;
    m.e[static_cast<int>(v)] = power;
    return m;
  }
  int operator[](Var v) const { return e[static_cast<int>(v)]; }
  int& operator[](Var v) { return e[static_cast<int>(v)]; }
  int total() const;
  bool is_one() const { return total_abs() == 0; }
  int total_abs() const;
  bool is_nonnegative() const;
  Monomial positive_part() const;
  Monomial negative_part() const;  // exponents of the inverted variables, as nonnegative numbers
  Monomial& operator+=(const Monomial& o);
  Monomial& operator-=(const Monomial& o);
  friend Monomial operator+(Monomial a, const Monomial& b) { return a += b; }
  friend Monomial operator-(Monomial a, const Monomial& b) { return a -= b; }
  Monomial operator*(int k) const;
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
  // "x^1*y^2"; empty for the unit monomial.
  std::string to_string() const;
};

// Graded lexicographic order with x > y > a > m > b > c.
struct GradedLex {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

// Coefficient domain for exact Laurent polynomials (no modulus).
struct ExactDomain {
  LaurentPoly zero() const { return {}; }
  LaurentPoly one() const { return LaurentPoly(1); }
  LaurentPoly constant(const Rational& c) const { return LaurentPoly(c); }
  LaurentPoly q_power(long e) const { return LaurentPoly::monomial(1, e); }
  friend bool operator==(const ExactDomain&, const ExactDomain&) { return true; }
};

template <class C>
struct CoeffTraits;
template <>
struct CoeffTraits<RingElem> {
  using Domain = ModulusRing;
  static std::string str(const RingElem& c) { return c.to_string(); }
};
template <>
struct CoeffTraits<CyclicElem> {
  using Domain = CyclicRing;
  static std::string str(const CyclicElem& c) { return c.to_poly().to_string(); }
};
template <>
struct CoeffTraits<LaurentPoly> {
  using Domain = ExactDomain;
  static std::string str(const LaurentPoly& c) { return c.to_string(); }
};

// lead*X^lead_mono + tail*q^q_exp*X^tail_mono with nonnegative monomials.
// Every factor 1 - c q^e X^v of a q-shifted factorial becomes one of these
// once inverted variables are cleared.
struct Binomial {
  Rational lead = 1;
  Monomial lead_mono;
  Rational tail = 0;
  long q_exp = 0;
  Monomial tail_mono;

  static Binomial monomial(const Monomial& m) { return Binomial{1, m, 0, 0, {}}; }
  static Binomial q_power(long e) { return Binomial{0, {}, 1, e, {}}; }
  static Binomial constant(const Rational& c) { return Binomial{c, {}, 0, 0, {}}; }

  bool same_monomials() const { return lead_mono == tail_mono; }
  bool has_variables() const { return !lead_mono.is_one() || (tail != 0 && !tail_mono.is_one()); }
  bool identically_zero() const;
  int degree_in(Var v) const;
  // Multiplicity of Phi_n(q) in the polynomial; at most one because q^e - 1
  // and q^e + 1 are squarefree.
  int phi_valuation(unsigned n) const;
  std::string to_string() const;

  friend bool operator==(const Binomial& a, const Binomial& b) {
    return a.lead == b.lead && a.lead_mono == b.lead_mono && a.tail == b.tail && a.q_exp == b.q_exp &&
           a.tail_mono == b.tail_mono;
  }
  friend bool operator<(const Binomial& a, const Binomial& b);
};

template <class C>
class MPoly {
 public:
  using Domain = typename CoeffTraits<C>::Domain;
  using TermMap = std::map<Monomial, C, GradedLex>;

  MPoly() = default;
  explicit MPoly(Domain domain) : domain_(std::move(domain)) {}
  MPoly(Domain domain, const C& c) : domain_(std::move(domain)) {
    if (!c.is_zero()) terms_.emplace(Monomial{}, c);
  }
  static MPoly constant(const Domain& domain, const Rational& c) { return MPoly(domain, domain.constant(c)); }
  static MPoly variable(const Domain& domain, Var v, int power = 1) {
    MPoly p(domain);
    p.terms_.emplace(Monomial::of(v, power), domain.one());
    return p;
  }
  static MPoly term(const Domain& domain, const Monomial& m, const C& c) {
    MPoly p(domain);
    if (!c.is_zero()) p.terms_.emplace(m, c);
    return p;
  }

  const Domain& domain() const { return domain_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  int degree_in(Var v) const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m[v]);
    return d;
  }
  C coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? domain_.zero() : it->second;
  }
  bool has_variables() const {
    for (const auto& [m, c] : terms_) {
      if (!m.is_one()) return true;
    }
    return false;
  }

  void add_term(const Monomial& m, const C& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  MPoly& operator+=(const MPoly& g) {
    for (const auto& [m, c] : g.terms_) add_term(m, c);
    return *this;
  }
  MPoly& operator-=(const MPoly& g) {
    for (const auto& [m, c] : g.terms_) add_term(m, -c);
    return *this;
  }
  MPoly operator-() const {
    MPoly out(domain_);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
  }
  friend MPoly operator+(MPoly f, const MPoly& g) { return f += g; }
  friend MPoly operator-(MPoly f, const MPoly& g) { return f -= g; }
  friend MPoly operator*(const MPoly& f, const MPoly& g) {
    MPoly out(f.domain_);
    for (const auto& [mf, cf] : f.terms_) {
      for (const auto& [mg, cg] : g.terms_) out.add_term(mf + mg, cf * cg);
    }
    return out;
  }
  MPoly& operator*=(const MPoly& g) { return *this = *this * g; }
  MPoly scaled(const C& c) const {
    MPoly out(domain_);
    for (const auto& [m, v] : terms_) out.add_term(m, v * c);
    return out;
  }
  MPoly scaled(const Rational& c) const {
    MPoly out(domain_);
    if (c == 0) return out;
    for (const auto& [m, v] : terms_) out.terms_.emplace(m, v * c);
    return out;
  }

  static void scale_binomial(C& c, const Rational& a, const Rational& t, long e) {
    if constexpr (requires { c.mul_binomial_assign(a, t, e); }) {
      c.mul_binomial_assign(a, t, e);
    } else {
      c = c.mul_binomial(a, t, e);
    }
  }

  // Product with a binomial factor; the hot path of every summation.
  MPoly mul_binomial(const Binomial& b) const {
    MPoly out(domain_);
    if (b.tail == 0) {
      if (b.lead == 0) return out;
      for (const auto& [m, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), m + b.lead_mono, c * b.lead);
      return out;
    }
    if (b.same_monomials()) {
      for (const auto& [m, c] : terms_) {
        C v = c.mul_binomial(b.lead, b.tail, b.q_exp);
        if (!v.is_zero()) out.terms_.emplace_hint(out.terms_.end(), m + b.lead_mono, std::move(v));
      }
      return out;
    }
    if (b.lead != 0) {
      for (const auto& [m, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), m + b.lead_mono, c * b.lead);
    }
    for (const auto& [m, c] : terms_) out.add_term(m + b.tail_mono, c.mul_binomial(0, b.tail, b.q_exp));
    return out;
  }

  // In-place variant; avoids rebuilding the term map when the factor keeps
  // existing monomials or only moves terms upward in the order.
  MPoly& mul_binomial_assign(const Binomial& b) {
    const bool keep = b.lead_mono.is_one();
    if (b.tail == 0 && keep) {
      if (b.lead == 0) {
        terms_.clear();
        return *this;
      }
      for (auto& [m, c] : terms_) c = c * b.lead;
      return *this;
    }
    if (b.tail != 0 && keep && b.same_monomials()) {
      for (auto it = terms_.begin(); it != terms_.end();) {
        scale_binomial(it->second, b.lead, b.tail, b.q_exp);
        it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
      }
      return *this;
    }
    if (b.tail != 0 && keep && GradedLex()(Monomial{}, b.tail_mono)) {
      // Walk downward: m + tail_mono lies above m, so it was already scaled.
      auto it = terms_.end();
      while (it != terms_.begin()) {
        --it;
        C shifted = it->second;
        scale_binomial(shifted, 0, b.tail, b.q_exp);
        if (b.lead != 1) it->second = it->second * b.lead;
        add_term(it->first + b.tail_mono, shifted);
      }
      if (b.lead == 0) {
        for (auto jt = terms_.begin(); jt != terms_.end();) jt = jt->second.is_zero() ? terms_.erase(jt) : std::next(jt);
      }
      return *this;
    }
    return *this = mul_binomial(b);
  }

  friend bool operator==(const MPoly& f, const MPoly& g) {
    if (f.terms_.size() != g.terms_.size()) return false;
    auto it = g.terms_.begin();
    for (const auto& [m, c] : f.terms_) {
      if (!(it->first == m) || !(it->second == c)) return false;
      ++it;
    }
    return true;
  }

  // Descending graded-lex terms "(coeff)*x^1*y^2", joined by " + ".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!out.empty()) out += " + ";
      out += "(" + CoeffTraits<C>::str(it->second) + ")";
      std::string mono = it->first.to_string();
      if (!mono.empty()) out += "*" + mono;
    }
    return out;
  }

 private:
  Domain domain_{};
  TermMap terms_;
};

template <class C>
struct MFraction {
  MPoly<C> numerator;
  MPoly<C> denominator;
};

// Substitute variables by coefficient-ring values; others stay symbolic.
template <class C>
MPoly<C> evaluate(const MPoly<C>& f, const std::map<Var, C>& assignment) {
  MPoly<C> out(f.domain());
  for (const auto& [m, c] : f.terms()) {
    C value = c;
    Monomial rest = m;
    for (const auto& [v, x] : assignment) {
      for (int k = 0; k < m[v]; ++k) value = value * x;
      rest[v] = 0;
    }
    out.add_term(rest, value);
  }
  return out;
}

// True iff some coefficient is a unit, which makes f a non-zero-divisor.
bool is_regular(const MPoly<RingElem>& f);

}  // namespace qcongr
