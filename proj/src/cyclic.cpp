#include "qcongr/cyclic.hpp"

#include <stdexcept>

namespace qcongr {

namespace {

// Generalized binomial coefficients C(w, l) for l < count; w may be negative.
std::vector<Integer> binomial_row(long w, unsigned count) {
  std::vector<Integer> row(count);
  if (count == 0) return row;
  row[0] = 1;
  Integer wz = make_integer(w);
  for (unsigned l = 1; l < count; ++l) {
    row[l] = row[l - 1] * (wz - static_cast<long>(l) + 1);
    mpz_divexact_ui(row[l].get_mpz_t(), row[l].get_mpz_t(), l);
  }
  return row;
}

}  // namespace

CyclicRing::CyclicRing(unsigned n, unsigned r) : n_(n), r_(r) {
  if (n == 0 || r == 0) throw std::invalid_argument("CyclicRing: n and r must be positive");
}

CyclicElem CyclicRing::zero() const { return CyclicElem(n_, r_); }

CyclicElem CyclicRing::constant(const Rational& c) const {
  CyclicElem out(n_, r_);
  out.c_[0] = c.get_num();
  out.den_ = c.get_den();
  return out;
}

CyclicElem CyclicRing::one() const { return constant(1); }

CyclicElem CyclicRing::q_power(long e) const { return one().times_q(e); }

RingElem CyclicRing::project(const CyclicElem& f, const ModulusRing& target) const {
  if (const auto* c = std::get_if<CyclotomicPower>(&target.descriptor())) {
    if (c->n != n_ || c->m > r_) throw std::invalid_argument("CyclicRing::project: incompatible target ring");
  }
  return target.reduce(f.to_poly());
}

bool CyclicElem::is_zero() const {
  for (const auto& v : c_) {
    if (v != 0) return false;
  }
  return true;
}

void CyclicElem::normalize() {
  if (den_ == 1) return;
  Integer g = den_;
  for (const auto& v : c_) {
    if (v == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) return;
  }
  if (is_zero()) {
    den_ = 1;
    return;
  }
  for (auto& v : c_) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
}

CyclicElem CyclicElem::operator-() const {
  CyclicElem out = *this;
  for (auto& v : out.c_) v = -v;
  return out;
}

CyclicElem& CyclicElem::operator+=(const CyclicElem& g) {
  if (g.n_ != n_ || g.r_ != r_) throw RingMismatch();
  if (den_ == g.den_) {
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += g.c_[k];
  } else {
    Integer l;
    mpz_lcm(l.get_mpz_t(), den_.get_mpz_t(), g.den_.get_mpz_t());
    Integer sf = l / den_;
    Integer sg = l / g.den_;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      c_[k] *= sf;
      mpz_addmul(c_[k].get_mpz_t(), g.c_[k].get_mpz_t(), sg.get_mpz_t());
    }
    den_ = l;
  }
  normalize();
  return *this;
}

CyclicElem& CyclicElem::operator-=(const CyclicElem& g) { return *this += -g; }

CyclicElem& CyclicElem::operator*=(const Rational& c) {
  if (c == 0) {
    for (auto& v : c_) v = 0;
    den_ = 1;
    return *this;
  }
  if (c.get_num() != 1) {
    for (auto& v : c_) v *= c.get_num();
  }
  den_ *= c.get_den();
  normalize();
  return *this;
}

void CyclicElem::add_scaled(std::vector<Integer>& out, const Integer& scale) const {
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] != 0) mpz_addmul(out[k].get_mpz_t(), c_[k].get_mpz_t(), scale.get_mpz_t());
  }
}

void CyclicElem::add_shifted(std::vector<Integer>& out, long e, const Integer& scale) const {
  const long n = n_;
  const long e_mod = mod_floor(e, n);
  if (r_ == 1) {
    for (long i = 0; i < n; ++i) {
      const Integer& v = c_[static_cast<std::size_t>(i)];
      if (v == 0) continue;
      long t = i + e_mod;
      if (t >= n) t -= n;
      mpz_addmul(out[static_cast<std::size_t>(t)].get_mpz_t(), v.get_mpz_t(), scale.get_mpz_t());
    }
    return;
  }
  const long w0 = floor_div(e, n);
  // q^{i+e} = q^{(i+e) mod n} (1+u)^{floor((i+e)/n)}; the floor is w0 or w0+1.
  std::vector<Integer> row0 = binomial_row(w0, r_);
  std::vector<Integer> row1 = binomial_row(w0 + 1, r_);
  for (auto& v : row0) v *= scale;
  for (auto& v : row1) v *= scale;
  for (unsigned j = 0; j < r_; ++j) {
    for (long i = 0; i < n; ++i) {
      const Integer& v = c_[static_cast<std::size_t>(j) * n_ + static_cast<std::size_t>(i)];
      if (v == 0) continue;
      long t = i + e_mod;
      const std::vector<Integer>& row = t >= n ? row1 : row0;
      long idx = t >= n ? t - n : t;
      for (unsigned l = 0; j + l < r_; ++l) {
        if (row[l] == 0) continue;
        mpz_addmul(out[static_cast<std::size_t>(j + l) * n_ + static_cast<std::size_t>(idx)].get_mpz_t(), v.get_mpz_t(),
                   row[l].get_mpz_t());
      }
    }
  }
}

CyclicElem CyclicElem::mul_binomial(const Rational& a, const Rational& b, long e) const {
  CyclicElem out = *this;
  out.mul_binomial_assign(a, b, e);
  return out;
}

CyclicElem& CyclicElem::mul_binomial_assign(const Rational& a, const Rational& b, long e) {
  if (b == 0) return *this *= a;
  // Reused buffer; the limbs stay allocated between calls.
  thread_local std::vector<Integer> scratch;
  scratch.resize(c_.size());
  for (auto& v : scratch) v = 0;
  const bool unit_dens = a.get_den() == 1 && b.get_den() == 1;
  if (unit_dens) {
    if (a != 0) add_scaled(scratch, a.get_num());
    add_shifted(scratch, e, b.get_num());
  } else {
    const Integer ca = a.get_num() * b.get_den();
    const Integer cb = b.get_num() * a.get_den();
    if (ca != 0) add_scaled(scratch, ca);
    add_shifted(scratch, e, cb);
    den_ *= a.get_den() * b.get_den();
  }
  c_.swap(scratch);
  normalize();
  return *this;
}

CyclicElem operator*(const CyclicElem& f, const CyclicElem& g) {
  if (g.n_ != f.n_ || g.r_ != f.r_) throw RingMismatch();
  const unsigned n = f.n_, r = f.r_;
  CyclicElem out(n, r);
  for (unsigned j = 0; j < r; ++j) {
    for (unsigned l = 0; j + l < r; ++l) {
      for (unsigned i = 0; i < n; ++i) {
        const Integer& a = f.c_[static_cast<std::size_t>(j) * n + i];
        if (a == 0) continue;
        for (unsigned k = 0; k < n; ++k) {
          const Integer& b = g.c_[static_cast<std::size_t>(l) * n + k];
          if (b == 0) continue;
          unsigned t = i + k;
          unsigned level = j + l;
          if (t >= n) {
            t -= n;
            if (level + 1 < r) mpz_addmul(out.c_[static_cast<std::size_t>(level + 1) * n + t].get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
          }
          mpz_addmul(out.c_[static_cast<std::size_t>(level) * n + t].get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        }
      }
    }
  }
  out.den_ = f.den_ * g.den_;
  out.normalize();
  return out;
}

Poly CyclicElem::to_poly() const {
  Poly u = Poly::monomial(1, n_) - Poly(make_rational(1));
  Poly acc;
  for (unsigned j = r_; j-- > 0;) {
    std::vector<Integer> level(c_.begin() + static_cast<long>(j) * n_, c_.begin() + static_cast<long>(j + 1) * n_);
    acc = acc * u + Poly::from_integers(std::move(level));
  }
  return acc * make_rational(Integer(1), den_);
}

}  // namespace qcongr
