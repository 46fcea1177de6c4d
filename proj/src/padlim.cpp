#include "qcongr/padlim.hpp"

namespace qcongr {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t ipow(std::uint64_t p, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) r *= p;
  return r;
}

// Inverse of a modulo m by the extended Euclidean algorithm; 0 if none.
std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) return 0;
  if (t < 0) t += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(t);
}

std::uint64_t reduce_integer(const Integer& z, std::uint64_t m) {
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), m);
  return r.get_ui();
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) return false;
  }
  return true;
}

ResidueInt::ResidueInt(std::uint64_t p, unsigned e, std::int64_t value) : p_(p), e_(e), modulus_(ipow(p, e)) {
  if (!is_prime(p)) throw std::invalid_argument("ResidueInt: " + std::to_string(p) + " is not prime");
  if (e == 0) throw std::invalid_argument("ResidueInt: exponent must be positive");
  std::int64_t m = static_cast<std::int64_t>(modulus_);
  std::int64_t v = value % m;
  value_ = static_cast<std::uint64_t>(v < 0 ? v + m : v);
}

ResidueInt ResidueInt::from_rational(const Rational& x, std::uint64_t p, unsigned e) {
  ResidueInt out(p, e, 0);
  if (reduce_integer(x.get_den(), p) == 0) {
    throw NotPAdicInteger(x.get_str() + " is not a " + std::to_string(p) + "-adic integer");
  }
  std::uint64_t num = reduce_integer(x.get_num(), out.modulus_);
  std::uint64_t den = reduce_integer(x.get_den(), out.modulus_);
  out.value_ = mulmod(num, inverse_mod(den, out.modulus_), out.modulus_);
  return out;
}

void ResidueInt::check(const ResidueInt& b) const {
  if (p_ != b.p_ || e_ != b.e_) throw std::logic_error("residues modulo different prime powers");
}

ResidueInt ResidueInt::inverse() const {
  if (!is_unit()) throw NotPAdicInteger(std::to_string(value_) + " is not invertible modulo " + std::to_string(modulus_));
  ResidueInt out = *this;
  out.value_ = inverse_mod(value_, modulus_);
  return out;
}

ResidueInt ResidueInt::operator-() const {
  ResidueInt out = *this;
  out.value_ = value_ == 0 ? 0 : modulus_ - value_;
  return out;
}

ResidueInt& ResidueInt::operator+=(const ResidueInt& b) {
  check(b);
  value_ = static_cast<std::uint64_t>((static_cast<u128>(value_) + b.value_) % modulus_);
  return *this;
}

ResidueInt& ResidueInt::operator-=(const ResidueInt& b) { return *this += -b; }

ResidueInt& ResidueInt::operator*=(const ResidueInt& b) {
  check(b);
  value_ = mulmod(value_, b.value_, modulus_);
  return *this;
}

ResidueInt ResidueInt::pow(unsigned long k) const {
  ResidueInt result(p_, e_, 1), base = *this;
  while (k > 0) {
    if (k & 1) result *= base;
    base *= base;
    k >>= 1;
  }
  return result;
}

ResidueInt rising_factorial_mod(const Rational& a, long k, std::uint64_t p, unsigned e) {
  if (k < 0) throw std::invalid_argument("rising_factorial_mod: negative length");
  ResidueInt out(p, e, 1);
  ResidueInt base = ResidueInt::from_rational(a, p, e);
  for (long j = 0; j < k; ++j) out *= base + ResidueInt(p, e, j);
  return out;
}

ResidueInt gamma_p(const Rational& x, std::uint64_t p, unsigned e) {
  const std::uint64_t m = ResidueInt(p, e, 0).modulus();
  const std::uint64_t rep = ResidueInt::from_rational(x, p, e).value();
  // Gamma_p(0) = 1, Gamma_p(j+1) = -j Gamma_p(j) for p not dividing j, else -Gamma_p(j).
  std::uint64_t g = 1;
  for (std::uint64_t j = 0; j < rep; ++j) {
    std::uint64_t factor = j % p == 0 ? 1 : j % m;
    g = mulmod(g, factor, m);
    g = g == 0 ? 0 : m - g;
  }
  return ResidueInt(p, e, static_cast<std::int64_t>(g));
}

ResidueInt rising_series_mod(const RisingSeries& side, std::uint64_t p, unsigned e) {
  ResidueInt total(p, e, 0);
  ResidueInt num(p, e, 1), den(p, e, 1);
  for (long k = 0; k <= side.top; ++k) {
    if (k > 0) {
      for (const auto& a : side.numerator) num *= ResidueInt::from_rational(a + (k - 1), p, e);
      for (const auto& b : side.denominator) den *= ResidueInt::from_rational(b + (k - 1), p, e);
    }
    if (!den.is_unit()) {
      throw NotPAdicInteger("term k=" + std::to_string(k) + " has a denominator divisible by " + std::to_string(p));
    }
    total += num * den.inverse();
  }
  total *= ResidueInt::from_rational(side.scale, p, e);
  if (side.gamma) total *= gamma_p(side.gamma->x, p, e).pow(static_cast<unsigned long>(side.gamma->power));
  return total;
}

Rational rising_series_exact(const RisingSeries& side) {
  if (side.gamma) throw std::invalid_argument("rising_series_exact: Gamma_p factors have no rational value");
  Rational total = 0, term = 1;
  for (long k = 0; k <= side.top; ++k) {
    if (k > 0) {
      for (const auto& a : side.numerator) term *= a + (k - 1);
      for (const auto& b : side.denominator) {
        if (b + (k - 1) == 0) throw std::domain_error("rising_series_exact: zero denominator");
        term /= b + (k - 1);
      }
    }
    total += term;
  }
  return total * side.scale;
}

VerificationReport verify_van_hamme(std::uint64_t p, const VerifyOptions& options) {
  CongruenceClaim claim = builtin("in-1", {{"p", static_cast<long long>(p)}});
  VerificationReport report = verify(claim, Strategy::Auto, options);
  if (report.outcome == Outcome::HypothesisFail) return report;
  // The sum may run to p - 1: the extra terms vanish modulo p^2.
  RisingSeries full = std::get<RisingSeries>(claim.sides[0]);
  full.top = static_cast<long>(p - 1);
  const ResidueInt half = rising_series_mod(std::get<RisingSeries>(claim.sides[0]), p, 2);
  const bool extended = rising_series_mod(full, p, 2) == half;
  std::string note = std::string("sum to p-1 ") + (extended ? "agrees" : "differs");
  if (p % 4 == 1) {
    const ResidueInt g4 = gamma_p(make_rational(1, 4), p, 2).pow(4);
    if (half == -g4) note += "; sum == -Gamma_p(1/4)^4 mod p^2";
  }
  report.detail = report.detail.empty() ? note : report.detail + "; " + note;
  if (!extended && report.outcome == Outcome::Pass) report.outcome = Outcome::Fail;
  return report;
}

VerificationReport verify_quarter_corollary(std::uint64_t p, const VerifyOptions& options) {
  return verify(builtin("cor-th-2-2", {{"p", static_cast<long long>(p)}}), Strategy::Auto, options);
}

VerificationReport verify_thm13_limit(std::uint64_t p, int d, int s, const VerifyOptions& options) {
  return verify(builtin("cor-th-3", {{"d", d}, {"s", s}, {"p", static_cast<long long>(p)}}), Strategy::Auto, options);
}

}  // namespace qcongr
