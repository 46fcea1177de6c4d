#include "qcongr/poly.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace qcongr {

namespace {

// Append " + c*var^k" style terms; shared by Poly and LaurentPoly printers.
void append_term(std::string& out, const Rational& c, long k, const std::string& var) {
  if (c == 0) return;
  bool negative = sgn(c) < 0;
  Rational mag = abs(c);
  if (out.empty()) {
    if (negative) out += "-";
  } else {
    out += negative ? " - " : " + ";
  }
  std::string power;
  if (k == 1) {
    power = var;
  } else if (k != 0) {
    power = var + "^" + std::to_string(k);
  }
  if (power.empty()) {
    out += mag.get_str();
  } else if (mag == 1) {
    out += power;
  } else {
    out += mag.get_str() + "*" + power;
  }
}

std::vector<Rational> to_rationals(const Poly& f) {
  std::vector<Rational> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = f.coeff(i);
  return out;
}

}  // namespace

Poly::Poly(const Rational& c) {
  if (c != 0) {
    num_.push_back(c.get_num());
    den_ = c.get_den();
  }
}

Poly Poly::monomial(const Rational& c, std::size_t deg) {
  Poly p;
  if (c == 0) return p;
  p.num_.assign(deg + 1, Integer(0));
  p.num_[deg] = c.get_num();
  p.den_ = c.get_den();
  return p;
}

Poly Poly::from_rationals(const std::vector<Rational>& coeffs) {
  Integer l = 1;
  for (const auto& c : coeffs) {
    if (c != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  }
  Poly p;
  p.num_.resize(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] != 0) p.num_[i] = coeffs[i].get_num() * (l / coeffs[i].get_den());
  }
  p.den_ = l;
  p.normalize();
  return p;
}

Poly Poly::from_integers(std::vector<Integer> numerators, Integer denominator) {
  if (denominator == 0) throw std::domain_error("Poly: zero denominator");
  if (denominator < 0) {
    denominator = -denominator;
    for (auto& c : numerators) c = -c;
  }
  Poly p;
  p.num_ = std::move(numerators);
  p.den_ = std::move(denominator);
  p.normalize();
  return p;
}

void Poly::normalize() {
  while (!num_.empty() && num_.back() == 0) num_.pop_back();
  if (num_.empty()) {
    den_ = 1;
    return;
  }
  if (den_ == 1) return;
  Integer g = den_;
  for (const auto& c : num_) {
    if (c == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) return;
  }
  for (auto& c : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
}

Rational Poly::coeff(std::size_t i) const {
  if (i >= num_.size()) return Rational(0);
  return make_rational(num_[i], den_);
}

Rational Poly::leading() const { return num_.empty() ? Rational(0) : coeff(num_.size() - 1); }

bool Poly::is_monic() const { return !num_.empty() && num_.back() == den_; }

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& c : p.num_) c = -c;
  return p;
}

Poly& Poly::operator+=(const Poly& g) {
  if (g.is_zero()) return *this;
  if (is_zero()) return *this = g;
  if (den_ == g.den_) {
    if (num_.size() < g.num_.size()) num_.resize(g.num_.size());
    for (std::size_t i = 0; i < g.num_.size(); ++i) num_[i] += g.num_[i];
  } else {
    Integer l;
    mpz_lcm(l.get_mpz_t(), den_.get_mpz_t(), g.den_.get_mpz_t());
    Integer sf = l / den_;
    Integer sg = l / g.den_;
    if (num_.size() < g.num_.size()) num_.resize(g.num_.size());
    for (auto& c : num_) c *= sf;
    for (std::size_t i = 0; i < g.num_.size(); ++i) mpz_addmul(num_[i].get_mpz_t(), g.num_[i].get_mpz_t(), sg.get_mpz_t());
    den_ = l;
  }
  normalize();
  return *this;
}

Poly& Poly::operator-=(const Poly& g) { return *this += -g; }

Poly operator*(const Poly& f, const Poly& g) {
  if (f.is_zero() || g.is_zero()) return Poly();
  Poly p;
  p.num_.assign(f.num_.size() + g.num_.size() - 1, Integer(0));
  for (std::size_t i = 0; i < f.num_.size(); ++i) {
    if (f.num_[i] == 0) continue;
    for (std::size_t j = 0; j < g.num_.size(); ++j) {
      mpz_addmul(p.num_[i + j].get_mpz_t(), f.num_[i].get_mpz_t(), g.num_[j].get_mpz_t());
    }
  }
  p.den_ = f.den_ * g.den_;
  p.normalize();
  return p;
}

Poly& Poly::operator*=(const Poly& g) { return *this = *this * g; }

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    num_.clear();
    den_ = 1;
    return *this;
  }
  for (auto& x : num_) x *= c.get_num();
  den_ *= c.get_den();
  normalize();
  return *this;
}

Poly Poly::shifted(std::size_t k) const {
  if (is_zero() || k == 0) return *this;
  Poly p;
  p.num_.assign(k, Integer(0));
  p.num_.insert(p.num_.end(), num_.begin(), num_.end());
  p.den_ = den_;
  return p;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return *this * (Rational(1) / leading());
}

Rational Poly::evaluate(const Rational& x) const {
  Rational acc = 0;
  for (std::size_t i = num_.size(); i-- > 0;) acc = acc * x + Rational(num_[i]);
  acc /= Rational(den_);
  return acc;
}

Poly Poly::pow(unsigned e) const {
  Poly result(make_rational(1));
  Poly base = *this;
  while (e != 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e != 0) base *= base;
  }
  return result;
}

Poly Poly::rem_monic(const Poly& m) const {
  if (!m.is_monic() || !m.is_integral()) throw std::invalid_argument("rem_monic: modulus must be monic with integer coefficients");
  std::size_t dm = m.num_.size() - 1;
  if (num_.size() <= dm) return *this;
  std::vector<Integer> r = num_;
  for (std::size_t i = r.size(); i-- > dm;) {
    if (r[i] == 0) continue;
    const Integer c = r[i];
    std::size_t base = i - dm;
    for (std::size_t j = 0; j < dm; ++j) {
      if (m.num_[j] != 0) mpz_submul(r[base + j].get_mpz_t(), c.get_mpz_t(), m.num_[j].get_mpz_t());
    }
    r[i] = 0;
  }
  r.resize(dm);
  return from_integers(std::move(r), den_);
}

std::string Poly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = num_.size(); i-- > 0;) append_term(out, coeff(i), static_cast<long>(i), var);
  return out;
}

DivRem divrem(const Poly& f, const Poly& g) {
  if (g.is_zero()) throw std::domain_error("divrem: division by the zero polynomial");
  if (f.degree() < g.degree()) return {Poly(), f};
  std::vector<Rational> r = to_rationals(f);
  std::vector<Rational> gc = to_rationals(g);
  const std::size_t dg = gc.size() - 1;
  const Rational inv_lead = Rational(1) / gc.back();
  std::vector<Rational> q(r.size() - dg);
  for (std::size_t i = r.size(); i-- > dg;) {
    if (r[i] == 0) continue;
    Rational c = r[i] * inv_lead;
    q[i - dg] = c;
    for (std::size_t j = 0; j <= dg; ++j) r[i - dg + j] -= c * gc[j];
  }
  r.resize(dg);
  return {Poly::from_rationals(q), Poly::from_rationals(r)};
}

ExtGcd ext_gcd(const Poly& f, const Poly& g) {
  if (f.is_zero() && g.is_zero()) throw std::invalid_argument("ext_gcd: both inputs are zero");
  Poly r0 = f, r1 = g;
  Poly s0(make_rational(1)), s1;
  Poly t0, t1(make_rational(1));
  while (!r1.is_zero()) {
    DivRem qr = divrem(r0, r1);
    Poly r2 = qr.remainder;
    Poly s2 = s0 - qr.quotient * s1;
    Poly t2 = t0 - qr.quotient * t1;
    // Keeping remainders monic curbs coefficient growth.
    if (!r2.is_zero()) {
      Rational inv = Rational(1) / r2.leading();
      r2 *= inv;
      s2 *= inv;
      t2 *= inv;
    }
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  Rational inv = Rational(1) / r0.leading();
  return {r0 * inv, s0 * inv, t0 * inv};
}

const Poly& cyclotomic(unsigned n) {
  if (n == 0) throw std::invalid_argument("cyclotomic: n must be positive");
  static std::mutex mu;
  static std::map<unsigned, Poly> memo;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
  }
  Poly p = Poly::monomial(make_rational(1), n) - Poly(make_rational(1));
  for (unsigned d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    DivRem qr = divrem(p, cyclotomic(d));
    if (!qr.remainder.is_zero()) throw std::logic_error("cyclotomic: inexact division");
    p = qr.quotient;
  }
  std::lock_guard<std::mutex> lock(mu);
  return memo.emplace(n, std::move(p)).first->second;
}

Poly q_integer(unsigned n) {
  if (n == 0) throw std::invalid_argument("q_integer: n must be positive");
  return Poly::from_integers(std::vector<Integer>(n, Integer(1)));
}

LaurentPoly::LaurentPoly(Poly body, long shift) : body_(std::move(body)), shift_(shift) { normalize(); }

LaurentPoly LaurentPoly::monomial(const Rational& c, long e) {
  if (c == 0) return {};
  return LaurentPoly(Poly(c), e);
}

void LaurentPoly::normalize() {
  if (body_.is_zero()) {
    shift_ = 0;
    return;
  }
  const auto& nums = body_.numerators();
  std::size_t t = 0;
  while (nums[t] == 0) ++t;
  if (t == 0) return;
  std::vector<Integer> rest(nums.begin() + static_cast<long>(t), nums.end());
  body_ = Poly::from_integers(std::move(rest), body_.denominator());
  shift_ += static_cast<long>(t);
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& g) {
  if (g.is_zero()) return *this;
  if (is_zero()) return *this = g;
  long s = std::min(shift_, g.shift_);
  Poly a = body_.shifted(static_cast<std::size_t>(shift_ - s));
  a += g.body_.shifted(static_cast<std::size_t>(g.shift_ - s));
  body_ = std::move(a);
  shift_ = s;
  normalize();
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& g) { return *this += -g; }

LaurentPoly operator*(const LaurentPoly& f, const LaurentPoly& g) {
  if (f.is_zero() || g.is_zero()) return {};
  return LaurentPoly(f.body_ * g.body_, f.shift_ + g.shift_);
}

LaurentPoly laurent_mul(const LaurentPoly& f, const LaurentPoly& g) { return f * g; }

LaurentPoly LaurentPoly::mul_binomial(const Rational& a, const Rational& b, long e) const {
  if (is_zero()) return {};
  if (b == 0) return *this * a;
  if (a == 0) return LaurentPoly(body_ * b, shift_ + e);
  const auto& src = body_.numerators();
  const std::size_t len = src.size();
  const std::size_t gap = static_cast<std::size_t>(e >= 0 ? e : -e);
  std::vector<Integer> out(len + gap);
  const Integer ca = a.get_num() * b.get_den();
  const Integer cb = b.get_num() * a.get_den();
  const std::size_t off_a = e >= 0 ? 0 : gap;
  const std::size_t off_b = e >= 0 ? gap : 0;
  for (std::size_t i = 0; i < len; ++i) {
    mpz_addmul(out[off_a + i].get_mpz_t(), src[i].get_mpz_t(), ca.get_mpz_t());
    mpz_addmul(out[off_b + i].get_mpz_t(), src[i].get_mpz_t(), cb.get_mpz_t());
  }
  Integer den = body_.denominator() * a.get_den() * b.get_den();
  return LaurentPoly(Poly::from_integers(std::move(out), std::move(den)), shift_ + (e >= 0 ? 0 : e));
}

std::string LaurentPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = body_.size(); i-- > 0;) append_term(out, body_.coeff(i), shift_ + static_cast<long>(i), var);
  return out;
}

}  // namespace qcongr
