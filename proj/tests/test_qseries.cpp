#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "qcongr/claims.hpp"
#include "qcongr/qseries.hpp"

using namespace qcongr;
using testing::P;
using testing::q_pow;

namespace {

using MP = MPoly<RingElem>;
constexpr Var X = Var::X, Y = Var::Y, A = Var::A, C = Var::C;

LaurentPoly lp(const Poly& p, long shift = 0) { return LaurentPoly(p, shift); }
LaurentPoly one_minus_q(long e) { return LaurentPoly(1) - LaurentPoly::monomial(1, e); }

// a/b == c/d as cross products.
bool same_fraction(const MFraction<RingElem>& f, const MP& num, const MP& den) {
  return f.numerator * den == num * f.denominator;
}

SeriesSpec specialize(SeriesSpec s, Var v, long e) {
  for (auto& p : s.numerator) p.atom = p.atom.specialize(v, e);
  for (auto& p : s.denominator) p.atom = p.atom.specialize(v, e);
  s.normalize();
  return s;
}

// Direct product definition over exact rationals.
Rational poch_value(const Rational& a, const Rational& q, long n) {
  Rational r = 1, qj = 1;
  for (long j = 0; j < n; ++j) {
    r *= 1 - a * qj;
    qj *= q;
  }
  return r;
}

}  // namespace

TEST_SUITE("qseries") {
  TEST_CASE("Pochhammer examples") {
    ModulusRing ring = ModulusRing::cyclotomic_power(7, 1);
    MP f = pochhammer(PochSpec{QAtom::q(1), 2, {1, 0}}, 2, ring);
    CHECK(f == MP(ring, ring.reduce(P({1, -1}) * (P({1}) - q_pow(3)))));
    CHECK(!f.has_variables());

    MP g = pochhammer(PochSpec{QAtom::var(X), 3, {1, 0}}, 1, ring);
    CHECK(g == MP::constant(ring, 1) - MP::variable(ring, X));

    MP h = pochhammer(PochSpec{QAtom::q(-1), 4, {1, 0}}, 3, ring);
    CHECK(h.is_zero());
    RingElem direct = ring.reduce(one_minus_q(-1) * one_minus_q(3) * one_minus_q(7));
    CHECK(direct.is_zero());

    CHECK(pochhammer(PochSpec{QAtom::var(X), 3, {1, 0}}, 0, ring) == MP::constant(ring, 1));
  }

  TEST_CASE("summand examples") {
    ModulusRing r5 = ModulusRing::cyclotomic_power(5, 2);
    const SeriesSpec th2 = std::get<SeriesSpec>(builtin("th-2", {{"d", 2}, {"n", 5}}).sides[0]);
    MFraction<RingElem> t0 = summand(th2, 0, r5);
    CHECK(same_fraction(t0, MP::constant(r5, 1), MP::constant(r5, 1)));

    MFraction<RingElem> t1 = summand(th2, 1, r5);
    MP x = MP::variable(r5, X), one = MP::constant(r5, 1);
    MP num = (one - x) * MP(r5, r5.reduce(P({1, -1}).pow(2) * q_pow(2)));
    MP den = MP(r5, r5.reduce((P({1}) - q_pow(2)) * (P({1}) - q_pow(4))));
    CHECK(same_fraction(t1, num, den));

    ModulusRing r7 = ModulusRing::cyclotomic_power(7, 2);
    const SeriesSpec th24 = std::get<SeriesSpec>(builtin("th-2-4", {{"d", 2}, {"n", 7}}).sides[0]);
    MFraction<RingElem> u1 = summand(th24, 1, r7);
    MP x7 = MP::variable(r7, X), one7 = MP::constant(r7, 1);
    MP num7 = (one7 - x7) * MP(r7, r7.reduce(one_minus_q(-1) * LaurentPoly::monomial(1, 2)));
    MP den7 = MP(r7, r7.reduce(P({1}) - q_pow(2))) * (one7 - MP::term(r7, Monomial::of(X), r7.q_power(1)));
    CHECK(same_fraction(u1, num7, den7));
  }

  TEST_CASE("degenerate denominators are typed") {
    CongruenceClaim c = builtin("s-3", {{"d", 2}, {"s", -1}, {"n", 3}});
    SeriesSpec lhs = specialize(std::get<SeriesSpec>(c.sides[0]), A, 3);
    ModulusRing ring = ModulusRing::cyclotomic_power(3, 1);
    CHECK_THROWS_AS(summand(lhs, 1, ring), DegenerateDenominator);
  }

  TEST_CASE("numeric sums") {
    SeriesSpec single;
    ModulusRing r3 = ModulusRing::cyclotomic_power(3, 1);
    CHECK(sum_numeric(single, r3) == r3.one());

    // 1 + (1-q)/(1-q^2) q^2 modulo Phi_3, by hand.
    const SeriesSpec th23 = std::get<SeriesSpec>(builtin("th-2-3", {{"d", 1}, {"n", 3}}).sides[0]);
    CHECK(th23.top == 1);
    RingElem by_hand = r3.one() + r3.reduce(P({1, -1}) * q_pow(2)) * invert(r3.reduce(P({1}) - q_pow(2)));
    CHECK(by_hand.is_zero());
    CHECK(sum_numeric(th23, r3).is_zero());

    // th-2-2 with d=2, n=3: sum_{k<=2} (q^-1;q^2)_k/(q^2;q^2)_k q^{2k} against -[3]_q q.
    ModulusRing r9 = ModulusRing::cyclotomic_power(3, 2);
    CongruenceClaim c = builtin("th-2-2", {{"d", 2}, {"n", 3}});
    RingElem direct = r9.one();
    LaurentPoly num{Rational(1)};
    Poly den = P({1});
    for (long k = 1; k <= 2; ++k) {
      num = num * one_minus_q(-1 + 2 * (k - 1));
      den *= P({1}) - q_pow(static_cast<std::size_t>(2 * k));
      direct += r9.reduce(num * LaurentPoly::monomial(1, 2 * k)) * invert(r9.reduce(den));
    }
    RingElem closed = r9.reduce(lp(q_integer(3) * make_rational(-1), 1));
    CHECK(direct == closed);
    CHECK(sum_numeric(std::get<SeriesSpec>(c.sides[0]), r9) == closed);
    CHECK(sum_numeric(std::get<SeriesSpec>(c.sides[1]), r9) == closed);
  }

  TEST_CASE("non-invertible numeric denominators name the term") {
    // (q^2;q^2)_k hits 1 - q^6 at k = 3 modulo Phi_3.
    SeriesSpec s;
    s.denominator = {PochSpec{QAtom::q(2), 2, {1, 0}}};
    s.top = 4;
    ModulusRing r3 = ModulusRing::cyclotomic_power(3, 1);
    try {
      sum_numeric(s, r3);
      FAIL("expected a typed failure");
    } catch (const TermNotInvertible& e) {
      CHECK(e.k() == 3);
    }
  }

  TEST_CASE("symbolic sums") {
    SeriesSpec single;
    ModulusRing r5 = ModulusRing::cyclotomic_power(5, 1);
    MFraction<RingElem> f = sum_symbolic(single, r5);
    CHECK(same_fraction(f, MP::constant(r5, 1), MP::constant(r5, 1)));

    const SeriesSpec th3 = std::get<SeriesSpec>(builtin("th-3", {{"d", 2}, {"s", 1}, {"n", 5}}).sides[0]);
    MFraction<RingElem> g = sum_symbolic(th3, r5);
    CHECK(!g.denominator.has_variables());

    ModulusRing r3 = ModulusRing::cyclotomic_power(3, 1);
    const SeriesSpec th5 = std::get<SeriesSpec>(builtin("th-5", {{"d", 1}, {"n", 3}}).sides[0]);
    MFraction<RingElem> h = sum_symbolic(th5, r3);
    MP xyq = pochhammer(PochSpec{QAtom{1, 1, Monomial::of(X) + Monomial::of(Y)}, 2, {1, 0}}, 2, r3);
    CHECK(h.denominator.degree_in(X) == 2);
    CHECK(h.denominator.degree_in(Y) == 2);
    CHECK(h.denominator == xyq * MP(r3, h.denominator.coefficient(Monomial{})));
  }

  TEST_CASE("terminating basic hypergeometric series") {
    Rational v = phi_series({QAtom::var(A), QAtom::q(-1)}, {QAtom::var(C)}, 1, QAtom::q(1), 1, 5,
                            Assignment{{A, 2}, {C, 3}});
    // 1 + (1-a)(1-q^-1) q / ((1-q)(1-c)) at a=2, c=3, q=5.
    Rational direct = 1 + (1 - Rational(2)) * (1 - Rational(1, 5)) * 5 / ((1 - Rational(5)) * (1 - Rational(3)));
    CHECK(direct == make_rational(1, 2));
    CHECK(v == make_rational(1, 2));

    CHECK(phi_series({QAtom::var(A), QAtom::q(-3)}, {QAtom::var(C)}, 1, QAtom{0, 0, {}}, 3, 7,
                     Assignment{{A, 2}, {C, 3}}) == 1);

    // q-Chu-Vandermonde at (a, c, q, n) = (2, 3, 5, 2), both sides brute force.
    Rational a = 2, c = 3, q = 5;
    Rational lhs = 0;
    for (long k = 0; k <= 2; ++k) {
      Rational qk = 1;
      for (long j = 0; j < k; ++j) qk *= q;
      lhs += poch_value(a, q, k) * poch_value(1 / (q * q), q, k) / (poch_value(q, q, k) * poch_value(c, q, k)) * qk;
    }
    Rational rhs = poch_value(c / a, q, 2) / poch_value(c, q, 2) * a * a;
    CHECK(lhs == rhs);
    CongruenceClaim cv = builtin("ss-0-0", {{"n", 2}});
    Assignment at{{A, a}, {C, c}};
    CHECK(evaluate_series(std::get<SeriesSpec>(cv.sides[0]), q, at) == lhs);
    CHECK(evaluate_series(std::get<SeriesSpec>(cv.sides[1]), q, at) == rhs);
  }

  TEST_CASE("Pochhammer recurrence") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 20; ++i) {
      ModulusRing ring = ModulusRing::cyclotomic_power(2 + static_cast<unsigned>(rng() % 20), 1 + rng() % 2);
      const long long coeffs[] = {1, -1, 2, -3};
      QAtom atom{make_rational(coeffs[rng() % 4]), static_cast<long>(rng() % 9) - 4,
                 rng() % 2 ? Monomial::of(X) : Monomial{}};
      PochSpec spec{atom, 1 + static_cast<long>(rng() % 4), {1, 0}};
      MP prev = pochhammer(spec, 0, ring);
      for (long k = 0; k < 40; ++k) {
        MP next = pochhammer(spec, k + 1, ring);
        MP factor = MP::constant(ring, 1) -
                    MP::term(ring, atom.vars, ring.q_power(atom.q_exp + spec.step * k) * atom.coeff);
        REQUIRE(next == prev * factor);
        prev = next;
      }
    }
  }

  TEST_CASE("symbolic sums specialize to numeric sums") {
    std::mt19937_64 rng(32);
    const char* names[] = {"th-2", "th-2-4", "th-3", "th-2-5"};
    int done = 0;
    while (done < 50) {
      std::string name = names[rng() % 4];
      long d = 2 + static_cast<long>(rng() % 3);
      std::map<std::string, long long> p;
      long n = 0;
      if (name == "th-2" || name == "th-2-5") {
        n = 2 * d * (1 + static_cast<long>(rng() % 3)) + 1;
        p = {{"d", d}, {"n", n}};
      } else if (name == "th-2-4") {
        n = d * (1 + static_cast<long>(rng() % 4)) - 1;
        if (n % 2 == 0 || n < 3) continue;
        p = {{"d", d}, {"n", n}};
      } else {
        long s = rng() % 2 ? 1 : -1;
        n = 2 * d * (1 + static_cast<long>(rng() % 3)) + s;
        p = {{"d", d}, {"s", s}, {"n", n}};
      }
      CongruenceClaim c = builtin(name, p);
      REQUIRE(c.admissible());
      const auto& series = std::get<SeriesSpec>(c.sides[0]);
      ModulusRing ring = ModulusRing::cyclotomic_power(static_cast<unsigned>(n), 1 + rng() % 2);
      long e = static_cast<long>(rng() % 11) - 5;
      SeriesSpec special = specialize(series, X, e);
      RingElem numeric;
      MFraction<RingElem> symbolic;
      try {
        numeric = sum_numeric(special, ring);
        symbolic = sum_symbolic(series, ring);
      } catch (const NonInvertible&) {
        continue;  // the specialization hit a pole modulo Phi_n
      } catch (const DegenerateDenominator&) {
        continue;
      }
      std::map<Var, RingElem> at{{X, ring.q_power(e)}};
      MP num = evaluate(symbolic.numerator, at), den = evaluate(symbolic.denominator, at);
      REQUIRE(num == den * MP(ring, numeric));
      ++done;
    }
  }

  TEST_CASE("extending the th-2 sum past (n-1)/d changes nothing modulo Phi_n^2") {
    for (long n : {5L, 9L, 13L}) {
      CongruenceClaim c = builtin("th-2", {{"d", 2}, {"n", n}});
      SeriesSpec full = std::get<SeriesSpec>(c.sides[0]);
      SeriesSpec short_sum = full;
      short_sum.top = (n - 1) / 2;
      c.sides = {short_sum, full};
      CHECK(verify(c, Strategy::Clearing).outcome == Outcome::Pass);
      CHECK(verify(c, Strategy::PointEval).outcome == Outcome::Pass);
    }
  }
}

TEST_SUITE("qseries") {
  TEST_CASE("phi_series refuses a removable zero over zero") {
    // (1/q; q)_1 / (1/q; q)_1 at step one: both factors vanish together.
    Assignment v{{Var::B, make_rational(1, 2)}};
    CHECK_THROWS_AS(phi_series({QAtom::q(-2), QAtom::q(-1)}, {QAtom::q(-1)}, 1, QAtom::q(1), 2, 2, v), std::domain_error);
  }
}
