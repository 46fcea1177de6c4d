#include "qcongr/qseries.hpp"

#include <algorithm>
#include <tuple>

namespace qcongr {

namespace {

std::string affine_str(const Affine& a, const char* var = "k") {
  std::string s;
  if (a.per_k != 0) s = (a.per_k == 1 ? "" : std::to_string(a.per_k) + "*") + var;
  if (a.offset != 0 || s.empty()) {
    if (s.empty()) return std::to_string(a.offset);
    s += a.offset > 0 ? "+" + std::to_string(a.offset) : std::to_string(a.offset);
  }
  return s;
}

Monomial max_zero(const Monomial& m) { return m.positive_part(); }

int list_degree(const std::vector<Binomial>& list, Var v) {
  int d = 0;
  for (const auto& b : list) d += b.degree_in(v);
  return d;
}

// Append 1 - atom q^{step j} for j in [from, to).
struct FactorSink {
  std::vector<Binomial>& dest;
  Monomial& compensation;
};

}  // namespace

QAtom QAtom::specialize(Var v, long k) const {
  QAtom out = *this;
  out.q_exp += static_cast<long>(vars[v]) * k;
  out.vars[v] = 0;
  return out;
}

std::string QAtom::to_string() const {
  std::string s;
  if (coeff != 1) s = coeff == -1 ? "-" : coeff.get_str();
  std::string rest;
  if (q_exp != 0) rest = q_exp == 1 ? "q" : "q^" + std::to_string(q_exp);
  std::string mono = vars.to_string();
  if (!mono.empty()) rest += (rest.empty() ? "" : "*") + mono;
  if (rest.empty()) return coeff.get_str();
  if (s.empty() || s == "-") return s + rest;
  return s + "*" + rest;
}

bool operator<(const QAtom& a, const QAtom& b) {
  return std::tie(a.coeff, a.q_exp, a.vars.e) < std::tie(b.coeff, b.q_exp, b.vars.e);
}

bool operator<(const PochSpec& a, const PochSpec& b) {
  return std::tie(a.atom, a.step, a.length) < std::tie(b.atom, b.step, b.length);
}

std::string PochSpec::to_string() const {
  return "(" + atom.to_string() + ";q^" + std::to_string(step) + ")_{" + affine_str(length) + "}";
}

std::set<Var> SeriesSpec::variables() const {
  std::set<Var> out;
  auto scan = [&](const Monomial& m) {
    for (int i = 0; i < kVarCount; ++i) {
      if (m.e[i] != 0) out.insert(static_cast<Var>(i));
    }
  };
  for (const auto& p : numerator) scan(p.atom.vars);
  for (const auto& p : denominator) scan(p.atom.vars);
  scan(monomial);
  return out;
}

void SeriesSpec::normalize() {
  std::sort(numerator.begin(), numerator.end());
  std::sort(denominator.begin(), denominator.end());
}

std::string SeriesSpec::to_string() const {
  std::string s = "sum_{k=0}^{" + std::to_string(top) + "} ";
  if (scale != 1) s += scale.get_str() + " * ";
  if (!monomial.is_one()) s += monomial.to_string() + " * ";
  s += "q^(" + affine_str(power) + ") * ";
  std::string num, den;
  for (const auto& p : numerator) num += p.to_string();
  for (const auto& p : denominator) den += p.to_string();
  s += (num.empty() ? "1" : num) + " / " + (den.empty() ? "1" : den);
  return s;
}

Binomial poch_factor(const QAtom& atom, long q_shift, Monomial& compensation) {
  Monomial neg = atom.vars.negative_part();
  compensation += neg;
  return Binomial{1, neg, -atom.coeff, atom.q_exp + q_shift, max_zero(atom.vars)};
}

std::vector<Binomial> ExpandedSide::merged_denominator() const {
  std::vector<Binomial> out = pre_den;
  for (const auto& step : step_den) out.insert(out.end(), step.begin(), step.end());
  return out;
}

int ExpandedSide::degree_bound(Var v) const {
  if (vanishes()) return 0;
  // P = pre_num * sum_k prod_{s<k} a_s prod_{k<=s<top} b_s
  const long K = top;
  std::vector<int> a(static_cast<std::size_t>(K)), b(static_cast<std::size_t>(K));
  int tail = 0;
  for (long s = 0; s < K; ++s) {
    a[static_cast<std::size_t>(s)] = list_degree(step_num[static_cast<std::size_t>(s)], v);
    b[static_cast<std::size_t>(s)] = list_degree(step_den[static_cast<std::size_t>(s)], v);
    tail += b[static_cast<std::size_t>(s)];
  }
  int head = 0, best = tail;
  for (long k = 1; k <= K; ++k) {
    head += a[static_cast<std::size_t>(k - 1)];
    tail -= b[static_cast<std::size_t>(k - 1)];
    best = std::max(best, head + tail);
  }
  return list_degree(pre_num, v) + best;
}

ExpandedSide expand(const SeriesSpec& series) {
  ExpandedSide out;
  if (series.scale == 0 || series.top < 0) return out;
  for (const auto* list : {&series.numerator, &series.denominator}) {
    for (const auto& p : *list) {
      if (p.step < 1) throw std::invalid_argument("q-shifted factorial step must be positive: " + p.to_string());
      if (p.length.per_k < 0 || p.length.at(0) < 0) {
        throw std::invalid_argument("q-shifted factorial length must be nonnegative and nondecreasing: " + p.to_string());
      }
      if (p.atom.coeff == 0) throw std::invalid_argument("q-shifted factorial argument must be nonzero");
    }
  }

  // Appends the factors for j in [len(k), len(k+1)) and reports a zero factor.
  auto collect = [](const std::vector<PochSpec>& specs, long k_from, long k_to, std::vector<Binomial>& dest,
                    Monomial& comp, const Binomial*& zero) {
    for (const auto& p : specs) {
      long lo = k_from < 0 ? 0 : p.length.at(k_from);
      long hi = p.length.at(k_to);
      for (long j = lo; j < hi; ++j) {
        Binomial b = poch_factor(p.atom, p.step * j, comp);
        dest.push_back(b);
        if (zero == nullptr && dest.back().identically_zero()) zero = &dest.back();
      }
    }
  };
  // Net monomial correction: numerator compensation divides the term, so it
  // moves to the denominator and vice versa.
  auto settle = [](const Monomial& num_comp, const Monomial& den_comp, std::vector<Binomial>& num,
                   std::vector<Binomial>& den) {
    Monomial net = den_comp - num_comp;
    Monomial up = net.positive_part(), down = net.negative_part();
    if (!up.is_one()) num.push_back(Binomial::monomial(up));
    if (!down.is_one()) den.push_back(Binomial::monomial(down));
  };

  {
    Monomial nc, dc;
    const Binomial* zero = nullptr;
    std::vector<Binomial> num, den;
    num.reserve(64);
    den.reserve(64);
    collect(series.numerator, -1, 0, num, nc, zero);
    if (zero != nullptr) return out;
    const Binomial* dzero = nullptr;
    collect(series.denominator, -1, 0, den, dc, dzero);
    if (dzero != nullptr) throw DegenerateDenominator(0, dzero->to_string());
    if (series.scale != 1) num.push_back(Binomial::constant(series.scale));
    nc -= series.monomial.negative_part();
    dc -= Monomial{};
    Monomial pos = series.monomial.positive_part();
    if (!pos.is_one()) num.push_back(Binomial::monomial(pos));
    if (series.power.offset != 0) num.push_back(Binomial::q_power(series.power.offset));
    settle(nc, dc, num, den);
    out.pre_num = std::move(num);
    out.pre_den = std::move(den);
  }

  out.top = series.top;
  for (long k = 0; k < series.top; ++k) {
    Monomial nc, dc;
    const Binomial* zero = nullptr;
    std::vector<Binomial> num, den;
    num.reserve(16);
    den.reserve(16);
    collect(series.numerator, k, k + 1, num, nc, zero);
    if (zero != nullptr) {
      out.top = k;
      break;
    }
    const Binomial* dzero = nullptr;
    collect(series.denominator, k, k + 1, den, dc, dzero);
    if (dzero != nullptr) throw DegenerateDenominator(k + 1, dzero->to_string());
    if (series.power.per_k != 0) num.push_back(Binomial::q_power(series.power.per_k));
    settle(nc, dc, num, den);
    out.step_num.push_back(std::move(num));
    out.step_den.push_back(std::move(den));
  }
  return out;
}

LaurentPoly numeric_value(const Binomial& b) {
  if (b.has_variables()) throw std::invalid_argument("binomial " + b.to_string() + " is not numeric");
  return LaurentPoly(b.lead) + LaurentPoly::monomial(b.tail, b.q_exp);
}

namespace {

MPoly<RingElem> product(const std::vector<Binomial>& factors, const ModulusRing& ring) {
  MPoly<RingElem> p = MPoly<RingElem>::constant(ring, 1);
  for (const auto& b : factors) p = p.mul_binomial(b);
  return p;
}

}  // namespace

MPoly<RingElem> pochhammer(const PochSpec& spec, long k, const ModulusRing& ring) {
  if (!spec.atom.vars.is_nonnegative()) {
    throw std::invalid_argument("pochhammer: argument " + spec.atom.to_string() + " is not a polynomial");
  }
  MPoly<RingElem> p = MPoly<RingElem>::constant(ring, 1);
  Monomial comp;
  for (long j = 0; j < k; ++j) p = p.mul_binomial(poch_factor(spec.atom, spec.step * j, comp));
  return p;
}

MFraction<RingElem> summand(const SeriesSpec& series, long k, const ModulusRing& ring) {
  if (k < 0 || k > series.top) throw std::out_of_range("summand: k outside the summation range");
  std::vector<Binomial> num, den;
  Monomial nc, dc;
  for (const auto& p : series.numerator) {
    for (long j = 0; j < p.length.at(k); ++j) num.push_back(poch_factor(p.atom, p.step * j, nc));
  }
  for (const auto& p : series.denominator) {
    for (long j = 0; j < p.length.at(k); ++j) den.push_back(poch_factor(p.atom, p.step * j, dc));
  }
  Monomial net = dc - nc + series.monomial;
  if (!net.positive_part().is_one()) num.push_back(Binomial::monomial(net.positive_part()));
  if (!net.negative_part().is_one()) den.push_back(Binomial::monomial(net.negative_part()));
  num.push_back(Binomial{0, {}, series.scale, series.power.at(k), {}});
  MFraction<RingElem> f{product(num, ring), product(den, ring)};
  if (f.denominator.is_zero()) {
    std::string desc;
    for (const auto& b : den) desc += b.to_string();
    throw DegenerateDenominator(k, desc);
  }
  return f;
}

RingElem sum_numeric(const SeriesSpec& series, const ModulusRing& ring) {
  if (!series.variables().empty()) throw std::invalid_argument("sum_numeric: series has symbolic variables");
  ExpandedSide ex = expand(series);
  RingElem total = ring.zero();
  if (ex.vanishes()) return total;

  const auto* cyc = std::get_if<CyclotomicPower>(&ring.descriptor());
  // Phi_n-free part of a factor, with its multiplicity split off.
  auto split = [&](const Binomial& b, int& v) -> RingElem {
    LaurentPoly value = numeric_value(b);
    v = cyc != nullptr ? b.phi_valuation(cyc->n) : 0;
    if (v == 0) return ring.reduce(value);
    DivRem qr = divrem(value.body(), cyclotomic(cyc->n));
    if (!qr.remainder.is_zero()) throw std::logic_error("sum_numeric: Phi_n multiplicity mismatch");
    return ring.reduce(LaurentPoly(qr.quotient, value.shift()));
  };

  RingElem num = ring.one(), den = ring.one();
  long valuation = 0;
  std::string blame;
  auto absorb = [&](const std::vector<Binomial>& ns, const std::vector<Binomial>& ds) {
    for (const auto& b : ns) {
      int v = 0;
      num *= split(b, v);
      valuation += v;
    }
    for (const auto& b : ds) {
      int v = 0;
      den *= split(b, v);
      valuation -= v;
      if (v != 0) blame = b.to_string();
    }
  };
  absorb(ex.pre_num, ex.pre_den);
  const long m = cyc != nullptr ? static_cast<long>(cyc->m) : 0;
  for (long k = 0; k <= ex.top; ++k) {
    if (k > 0) absorb(ex.step_num[static_cast<std::size_t>(k - 1)], ex.step_den[static_cast<std::size_t>(k - 1)]);
    if (valuation < 0) throw TermNotInvertible(k, blame, cyc != nullptr ? cyclotomic(cyc->n) : Poly());
    if (cyc != nullptr && valuation >= m) continue;
    RingElem inv;
    try {
      inv = den.inverse();
    } catch (const NonInvertible& e) {
      throw TermNotInvertible(k, den.to_string(), e.gcd());
    }
    RingElem term = num * inv;
    if (valuation > 0) term *= ring.reduce(cyclotomic(cyc->n).pow(static_cast<unsigned>(valuation)));
    total += term;
  }
  return total;
}

MFraction<RingElem> sum_symbolic(const SeriesSpec& series, const ModulusRing& ring) {
  ExpandedSide ex = expand(series);
  if (ex.vanishes()) return {MPoly<RingElem>(ring), MPoly<RingElem>::constant(ring, 1)};
  MPoly<RingElem> P = MPoly<RingElem>::constant(ring, 1);
  MPoly<RingElem> Q = P;
  for (long k = ex.top; k-- > 0;) {
    MPoly<RingElem> Pa = P;
    for (const auto& b : ex.step_num[static_cast<std::size_t>(k)]) Pa = Pa.mul_binomial(b);
    for (const auto& b : ex.step_den[static_cast<std::size_t>(k)]) Q = Q.mul_binomial(b);
    P = Q + Pa;
  }
  for (const auto& b : ex.pre_num) P = P.mul_binomial(b);
  for (const auto& b : ex.pre_den) Q = Q.mul_binomial(b);
  if (Q.is_zero()) throw DegenerateDenominator(ex.top, "merged denominator");
  if (!Q.has_variables()) {
    RingElem c = Q.coefficient(Monomial{});
    if (c.is_unit()) return {P.scaled(c.inverse()), MPoly<RingElem>::constant(ring, 1)};
  }
  return {P, Q};
}

Rational atom_value(const QAtom& atom, const Rational& q, const Assignment& values) {
  Rational v = atom.coeff;
  auto power = [](const Rational& base, long e) {
    Rational r = 1;
    Rational b = e >= 0 ? base : Rational(1) / base;
    for (long i = 0; i < (e >= 0 ? e : -e); ++i) r *= b;
    return r;
  };
  v *= power(q, atom.q_exp);
  for (int i = 0; i < kVarCount; ++i) {
    int e = atom.vars.e[i];
    if (e == 0) continue;
    auto it = values.find(static_cast<Var>(i));
    if (it == values.end()) throw std::invalid_argument(std::string("no value for variable ") + kVarNames[i]);
    if (it->second == 0 && e < 0) throw std::domain_error("inverted variable evaluated at zero");
    v *= power(it->second, e);
  }
  return v;
}

Rational phi_series(const std::vector<QAtom>& numerator, const std::vector<QAtom>& denominator, long base_exp,
                    const QAtom& argument, long top, const Rational& q, const Assignment& values) {
  if (base_exp < 1) throw std::invalid_argument("phi_series: base exponent must be positive");
  bool terminates = false;
  for (const auto& a : numerator) {
    if (a.coeff == 1 && a.vars.is_one() && a.q_exp <= 0 && a.q_exp % base_exp == 0 && -a.q_exp / base_exp <= top) {
      terminates = true;
    }
  }
  if (!terminates) throw std::invalid_argument("phi_series: series does not terminate within the top index");
  const Rational base = atom_value(QAtom::q(base_exp), q, values);
  const Rational z = atom_value(argument, q, values);
  std::vector<Rational> a, b;
  for (const auto& x : numerator) a.push_back(atom_value(x, q, values));
  b.push_back(base);  // (Q;Q)_k
  for (const auto& x : denominator) b.push_back(atom_value(x, q, values));
  // A denominator zero anywhere up to `top` is refused, even past a numerator
  // zero: the point is then a removable singularity, not a truncation.
  Rational total = 0, term = 1, qpow = 1;
  for (long k = 0; k <= top; ++k) {
    total += term;
    if (k == top) break;
    Rational num = z, den = 1;
    for (const auto& x : b) den *= 1 - x * qpow;
    if (den == 0) throw std::domain_error("phi_series: zero denominator at k=" + std::to_string(k + 1));
    if (term != 0) {
      for (const auto& x : a) num *= 1 - x * qpow;
      term *= num / den;
    }
    qpow *= base;
  }
  return total;
}

Rational evaluate_series(const SeriesSpec& series, const Rational& q, const Assignment& values) {
  Rational total = 0;
  for (long k = 0; k <= series.top; ++k) {
    Rational num = series.scale, den = 1;
    num *= atom_value(QAtom{1, series.power.at(k), series.monomial}, q, values);
    for (const auto& p : series.numerator) {
      for (long j = 0; j < p.length.at(k); ++j) {
        num *= 1 - atom_value(p.atom, q, values) * atom_value(QAtom::q(p.step * j), q, values);
      }
    }
    if (num == 0) continue;
    for (const auto& p : series.denominator) {
      for (long j = 0; j < p.length.at(k); ++j) {
        den *= 1 - atom_value(p.atom, q, values) * atom_value(QAtom::q(p.step * j), q, values);
      }
    }
    if (den == 0) throw std::domain_error("evaluate_series: zero denominator at k=" + std::to_string(k));
    total += num / den;
  }
  return total;
}

}  // namespace qcongr
