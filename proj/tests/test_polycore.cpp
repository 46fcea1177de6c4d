#include <random>

#include "doctest.h"
#include "helpers.hpp"

using namespace qcongr;
using testing::P;
using testing::q_pow;

TEST_SUITE("polycore") {
  TEST_CASE("rationals are kept in lowest terms") {
    Rational r = make_rational(6, -4);
    CHECK(r.get_num() == -3);
    CHECK(r.get_den() == 2);
    Rational z = make_rational(0, 7);
    CHECK(z.get_num() == 0);
    CHECK(z.get_den() == 1);
    CHECK(make_rational(Integer(10), Integer(-5)) == -2);
  }

  TEST_CASE("basic arithmetic") {
    CHECK(P({1, 1}) * P({1, -1}) == P({1, 0, -1}));
    DivRem dr = divrem(P({-1, 0, 0, 1}), P({-1, 1}));
    CHECK(dr.quotient == P({1, 1, 1}));
    CHECK(dr.remainder.is_zero());
    Poly z = P({1, 0, 1}) + P({-1, 0, -1});
    CHECK(z.is_zero());
    CHECK(z.degree() == kMinusInfinity);
    CHECK(z == Poly());
    CHECK_THROWS_AS(divrem(P({1}), Poly()), std::domain_error);
  }

  TEST_CASE("trailing zeros are stripped") {
    Poly f = Poly::from_rationals({1, 2, 0, 0});
    CHECK(f.degree() == 1);
    CHECK(f == P({1, 2}));
    CHECK((P({0, 0, 3}) - P({0, 0, 3}) + P({5})).degree() == 0);
  }

  TEST_CASE("extended gcd examples") {
    ExtGcd g = ext_gcd(P({-1, 1}), P({1, 1}));
    CHECK(g.gcd == P({1}));
    CHECK(g.u * P({-1, 1}) + g.v * P({1, 1}) == P({1}));

    g = ext_gcd(P({-1, 0, 1}), P({-1, 1}));
    CHECK(g.gcd == P({-1, 1}));

    // Phi_5 divides q^5 - 1: checked by division, independent of ext_gcd.
    Poly q5 = q_pow(5) - P({1});
    CHECK(divrem(q5, cyclotomic(5)).remainder.is_zero());
    g = ext_gcd(cyclotomic(5), q5);
    CHECK(g.gcd == cyclotomic(5));
    CHECK(g.u * cyclotomic(5) + g.v * q5 == g.gcd);
    CHECK_THROWS_AS(ext_gcd(Poly(), Poly()), std::invalid_argument);
  }

  TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic(1) == P({-1, 1}));
    // q^4 - 1 over Phi_1 Phi_2 = q^2 - 1.
    DivRem four = divrem(q_pow(4) - P({1}), P({-1, 0, 1}));
    CHECK(four.remainder.is_zero());
    CHECK(cyclotomic(4) == four.quotient);
    CHECK(cyclotomic(4) == P({1, 0, 1}));
    // q^6 - 1 over Phi_1 Phi_2 Phi_3.
    DivRem six = divrem(q_pow(6) - P({1}), P({-1, 1}) * P({1, 1}) * P({1, 1, 1}));
    CHECK(six.remainder.is_zero());
    CHECK(cyclotomic(6) == six.quotient);
    CHECK(cyclotomic(6) == P({1, -1, 1}));
  }

  TEST_CASE("q-integers") {
    CHECK(q_integer(1) == P({1}));
    CHECK(q_integer(3) == P({1, 1, 1}));
    CHECK(q_integer(5) == P({1, 1, 1, 1, 1}));
  }

  TEST_CASE("Laurent products") {
    CHECK(laurent_mul(LaurentPoly::monomial(1, -1), LaurentPoly::monomial(1, 1)) == LaurentPoly(1));
    LaurentPoly f(P({1, 1}), -2), g(P({1, -1}), 1);
    LaurentPoly h = laurent_mul(f, g);
    CHECK(h.shift() == -1);
    CHECK(h.body() == P({1, 0, -1}));
    // A body with zero constant term moves into the shift.
    LaurentPoly s(P({0, 0, 2, 1}), 3);
    CHECK(s.shift() == 5);
    CHECK(s.body() == P({2, 1}));
    LaurentPoly z = laurent_mul(LaurentPoly(), f);
    CHECK(z.is_zero());
    CHECK(z.shift() == 0);
    CHECK(LaurentPoly(Poly(), 7).shift() == 0);
  }

  TEST_CASE("product of cyclotomic polynomials over divisors") {
    for (unsigned n = 1; n <= 200; ++n) {
      Poly prod = P({1});
      for (unsigned d = 1; d <= n; ++d) {
        if (n % d == 0) prod *= cyclotomic(d);
      }
      REQUIRE(prod == q_pow(n) - P({1}));
    }
  }

  TEST_CASE("cyclotomic of a prime is the q-integer") {
    for (unsigned p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u, 41u, 43u, 47u, 53u, 59u, 61u, 67u, 71u,
                       73u, 79u, 83u, 89u, 97u}) {
      CHECK(cyclotomic(p) == q_integer(p));
    }
  }

  TEST_CASE("ring axioms on random triples") {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 150; ++i) {
      Poly f = testing::random_poly(rng, 30, 1000000), g = testing::random_poly(rng, 30, 1000000),
           h = testing::random_poly(rng, 30, 1000000);
      REQUIRE((f * g) * h == f * (g * h));
      REQUIRE(f * (g + h) == f * g + f * h);
      REQUIRE(f * g == g * f);
      REQUIRE(f + g == g + f);
      REQUIRE((f + g) - g == f);
    }
  }

  TEST_CASE("extended gcd certificates") {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 500; ++i) {
      Poly common = testing::random_poly(rng, 3, 5, true);
      Poly f = testing::random_poly(rng, 8, 20, true) * common;
      Poly g = testing::random_poly(rng, 8, 20, true) * common;
      if (f.is_zero() && g.is_zero()) continue;
      ExtGcd e = ext_gcd(f, g);
      REQUIRE(e.gcd.is_monic());
      REQUIRE(divrem(f, e.gcd).remainder.is_zero());
      REQUIRE(divrem(g, e.gcd).remainder.is_zero());
      REQUIRE(e.u * f + e.v * g == e.gcd);
      if (!common.is_zero()) REQUIRE(divrem(e.gcd, common.monic()).remainder.is_zero());
    }
  }

  TEST_CASE("divrem round trip") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 300; ++i) {
      Poly f = testing::random_poly(rng, 25, 1000, true), g = testing::random_poly(rng, 10, 1000, true);
      if (g.is_zero()) continue;
      DivRem dr = divrem(f, g);
      REQUIRE(dr.quotient * g + dr.remainder == f);
      REQUIRE((dr.remainder.is_zero() || dr.remainder.degree() < g.degree()));
    }
  }

  TEST_CASE("reduction modulo a monic integer polynomial matches divrem") {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 200; ++i) {
      Poly f = testing::random_poly(rng, 40, 100, true);
      const Poly& m = cyclotomic(static_cast<unsigned>(2 + i % 30));
      REQUIRE(f.rem_monic(m) == divrem(f, m).remainder);
    }
  }
}
