#include "qcongr/multipoly.hpp"

#include <tuple>

namespace qcongr {

std::optional<Var> var_from_name(const std::string& name) {
  for (int i = 0; i < kVarCount; ++i) {
    if (name == kVarNames[i]) return static_cast<Var>(i);
  }
  return std::nullopt;
}

int Monomial::total() const {
  int t = 0;
  for (int v : e) t += v;
  return t;
}

int Monomial::total_abs() const {
  int t = 0;
  for (int v : e) t += v < 0 ? -v : v;
  return t;
}

bool Monomial::is_nonnegative() const {
  for (int v : e) {
    if (v < 0) return false;
  }
  return true;
}

Monomial Monomial::positive_part() const {
  Monomial m;
  for (int i = 0; i < kVarCount; ++i) m.e[i] = e[i] > 0 ? e[i] : 0;
  return m;
}

Monomial Monomial::negative_part() const {
  Monomial m;
  for (int i = 0; i < kVarCount; ++i) m.e[i] = e[i] < 0 ? -e[i] : 0;
  return m;
}

Monomial& Monomial::operator+=(const Monomial& o) {
  for (int i = 0; i < kVarCount; ++i) e[i] += o.e[i];
  return *this;
}

Monomial& Monomial::operator-=(const Monomial& o) {
  for (int i = 0; i < kVarCount; ++i) e[i] -= o.e[i];
  return *this;
}

Monomial Monomial::operator*(int k) const {
  Monomial m;
  for (int i = 0; i < kVarCount; ++i) m.e[i] = e[i] * k;
  return m;
}

std::string Monomial::to_string() const {
  std::string out;
  for (int i = 0; i < kVarCount; ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += std::string(kVarNames[i]) + "^" + std::to_string(e[i]);
  }
  return out;
}

bool GradedLex::operator()(const Monomial& a, const Monomial& b) const {
  int ta = a.total(), tb = b.total();
  if (ta != tb) return ta < tb;
  return a.e < b.e;
}

bool Binomial::identically_zero() const {
  if (lead == 0 && tail == 0) return true;
  return same_monomials() && q_exp == 0 && lead + tail == 0;
}

int Binomial::degree_in(Var v) const {
  int d = lead != 0 ? lead_mono[v] : 0;
  if (tail != 0) d = std::max(d, tail_mono[v]);
  return d;
}

int Binomial::phi_valuation(unsigned n) const {
  if (lead == 0 || tail == 0 || !same_monomials()) return 0;
  if (identically_zero()) return 0;
  // lead + tail*q^e vanishes at a primitive n-th root zeta iff zeta^e = -lead/tail.
  Rational ratio = -lead / tail;
  const long nn = static_cast<long>(n);
  if (ratio == 1) return mod_floor(q_exp, nn) == 0 ? 1 : 0;
  if (ratio == -1) return (mod_floor(2 * q_exp, nn) == 0 && mod_floor(q_exp, nn) != 0) ? 1 : 0;
  return 0;
}

namespace {

std::string coefficient_part(const Rational& c, long q_exp, const Monomial& m) {
  std::string factors;
  if (q_exp != 0) factors = q_exp == 1 ? "q" : "q^" + std::to_string(q_exp);
  std::string mono = m.to_string();
  if (!mono.empty()) factors += (factors.empty() ? "" : "*") + mono;
  if (factors.empty()) return c.get_str();
  if (c == 1) return factors;
  if (c == -1) return "-" + factors;
  return c.get_str() + "*" + factors;
}

}  // namespace

std::string Binomial::to_string() const {
  std::string out = "(";
  bool have_lead = lead != 0;
  if (have_lead) out += coefficient_part(lead, 0, lead_mono);
  if (tail != 0) {
    std::string t = coefficient_part(tail, q_exp, tail_mono);
    if (have_lead) {
      if (t[0] == '-') {
        out += " - " + t.substr(1);
      } else {
        out += " + " + t;
      }
    } else {
      out += t;
    }
  }
  if (!have_lead && tail == 0) out += "0";
  return out + ")";
}

bool operator<(const Binomial& a, const Binomial& b) {
  return std::tie(a.lead, a.lead_mono.e, a.tail, a.q_exp, a.tail_mono.e) <
         std::tie(b.lead, b.lead_mono.e, b.tail, b.q_exp, b.tail_mono.e);
}

bool is_regular(const MPoly<RingElem>& f) {
  for (const auto& [m, c] : f.terms()) {
    if (c.is_unit()) return true;
  }
  return false;
}

}  // namespace qcongr
