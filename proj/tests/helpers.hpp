#pragma once

#include <initializer_list>
#include <random>
#include <vector>

#include "qcongr/poly.hpp"

namespace testing {

// Polynomial from integer coefficients, lowest degree first.
inline qcongr::Poly P(std::initializer_list<long long> coeffs) {
  std::vector<qcongr::Rational> c;
  for (long long v : coeffs) c.push_back(qcongr::make_rational(v));
  return qcongr::Poly::from_rationals(c);
}

inline qcongr::Poly q_pow(std::size_t e) { return qcongr::Poly::monomial(1, e); }

inline qcongr::Poly random_poly(std::mt19937_64& rng, int max_degree, long long height, bool rational = false) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_int_distribution<long long> coef(-height, height);
  std::uniform_int_distribution<long long> den(1, 9);
  std::vector<qcongr::Rational> c(static_cast<std::size_t>(deg(rng)) + 1);
  for (auto& v : c) v = qcongr::make_rational(coef(rng), rational ? den(rng) : 1);
  return qcongr::Poly::from_rationals(c);
}

}  // namespace testing
