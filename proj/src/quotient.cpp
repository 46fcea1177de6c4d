#include "qcongr/quotient.hpp"

#include <map>
#include <mutex>

namespace qcongr {

struct ModulusRing::Impl {
  Poly modulus;
  ModulusDescriptor descriptor;
  bool fast = false;  // monic with integer coefficients
  mutable std::mutex mu;
  mutable std::map<long, Poly> q_powers;
};

namespace {

Poly reduce_poly(const ModulusRing::Impl& impl, const Poly& f) {
  if (f.degree() < impl.modulus.degree()) return f;
  if (impl.fast) return f.rem_monic(impl.modulus);
  return divrem(f, impl.modulus).remainder;
}

}  // namespace

ModulusRing ModulusRing::cyclotomic_power(unsigned n, unsigned m) {
  if (n == 0 || m == 0) throw std::invalid_argument("cyclotomic_power: n and m must be positive");
  auto impl = std::make_shared<Impl>();
  impl->modulus = cyclotomic(n).pow(m);
  impl->descriptor = CyclotomicPower{n, m};
  impl->fast = true;
  return ModulusRing(impl);
}

ModulusRing ModulusRing::explicit_poly(const Poly& modulus) {
  if (modulus.degree() < 1 || !modulus.is_monic()) {
    throw std::invalid_argument("explicit_poly: modulus must be monic of degree >= 1");
  }
  auto impl = std::make_shared<Impl>();
  impl->modulus = modulus;
  impl->descriptor = ExplicitPoly{};
  impl->fast = modulus.is_integral();
  return ModulusRing(impl);
}

const Poly& ModulusRing::modulus() const { return impl_->modulus; }
const ModulusDescriptor& ModulusRing::descriptor() const { return impl_->descriptor; }

std::string ModulusRing::describe() const {
  if (const auto* c = std::get_if<CyclotomicPower>(&impl_->descriptor)) {
    return "Phi(" + std::to_string(c->n) + ")^" + std::to_string(c->m);
  }
  return "(" + impl_->modulus.to_string() + ")";
}

bool ModulusRing::same_as(const ModulusRing& other) const {
  if (impl_ == other.impl_) return true;
  if (!impl_ || !other.impl_) return false;
  return impl_->modulus == other.impl_->modulus;
}

RingElem ModulusRing::reduce(const Poly& f) const { return RingElem(*this, reduce_poly(*impl_, f)); }

RingElem ModulusRing::reduce(const LaurentPoly& f) const {
  if (f.is_zero()) return zero();
  RingElem body = reduce(f.body());
  if (f.shift() == 0) return body;
  return body * q_power(f.shift());
}

RingElem ModulusRing::zero() const { return RingElem(*this, Poly()); }
RingElem ModulusRing::one() const { return constant(1); }
RingElem ModulusRing::constant(const Rational& c) const { return reduce(Poly(c)); }

RingElem ModulusRing::q_power(long e) const {
  {
    std::lock_guard<std::mutex> lock(impl_->mu);
    auto it = impl_->q_powers.find(e);
    if (it != impl_->q_powers.end()) return RingElem(*this, it->second);
  }
  RingElem value;
  if (e >= 0) {
    value = reduce(Poly::monomial(1, static_cast<std::size_t>(e)));
  } else {
    RingElem q = reduce(Poly::monomial(1, 1));
    RingElem qinv;
    try {
      qinv = q.inverse();
    } catch (const NonInvertible& err) {
      throw NonInvertibleShift("q is not a unit modulo " + describe(), err.gcd());
    }
    value = qinv.pow(-e);
  }
  std::lock_guard<std::mutex> lock(impl_->mu);
  impl_->q_powers.emplace(e, value.residue());
  return value;
}

RingElem::RingElem(ModulusRing ring, Poly residue) : ring_(std::move(ring)), residue_(std::move(residue)) {}

const ModulusRing& RingElem::ring() const { return ring_; }

void RingElem::check_same(const RingElem& b) const {
  if (!ring_.same_as(b.ring_)) throw RingMismatch();
}

bool RingElem::is_unit() const {
  if (residue_.is_zero()) return false;
  return ext_gcd(residue_, ring_.modulus()).gcd.degree() == 0;
}

RingElem RingElem::inverse() const {
  if (residue_.is_zero()) throw NonInvertible("zero is not invertible", ring_.modulus());
  ExtGcd g = ext_gcd(residue_, ring_.modulus());
  if (g.gcd.degree() != 0) {
    throw NonInvertible("element " + residue_.to_string() + " shares the factor " + g.gcd.to_string() +
                            " with the modulus",
                        g.gcd);
  }
  return ring_.reduce(g.u);
}

RingElem RingElem::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  RingElem result = ring_.one();
  RingElem base = *this;
  while (e != 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e != 0) base *= base;
  }
  return result;
}

RingElem RingElem::operator-() const { return RingElem(ring_, -residue_); }

RingElem& RingElem::operator+=(const RingElem& b) {
  check_same(b);
  residue_ += b.residue_;
  return *this;
}

RingElem& RingElem::operator-=(const RingElem& b) {
  check_same(b);
  residue_ -= b.residue_;
  return *this;
}

RingElem& RingElem::operator*=(const RingElem& b) {
  check_same(b);
  residue_ = reduce_poly(*ring_.impl_, residue_ * b.residue_);
  return *this;
}

RingElem& RingElem::operator*=(const Rational& c) {
  residue_ *= c;
  return *this;
}

bool operator==(const RingElem& a, const RingElem& b) {
  a.check_same(b);
  return a.residue_ == b.residue_;
}

RingElem RingElem::mul_binomial(const Rational& a, const Rational& b, long e) const {
  RingElem out = *this * a;
  if (b != 0) out += (*this * ring_.q_power(e)) * b;
  return out;
}

RingElem reduce(const ModulusRing& ring, const Poly& f) { return ring.reduce(f); }
RingElem reduce(const ModulusRing& ring, const LaurentPoly& f) { return ring.reduce(f); }
bool is_unit(const RingElem& e) { return e.is_unit(); }
RingElem invert(const RingElem& e) { return e.inverse(); }

}  // namespace qcongr
