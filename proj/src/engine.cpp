#include "engine.hpp"

#include <deque>
#include <algorithm>
#include <random>
#include <set>

namespace qcongr {

using Factors = std::vector<Binomial>;

bool regular_multiplier(const std::vector<Binomial>& factors, unsigned n, bool extract_phi) {
  const ModulusRing ring = ModulusRing::cyclotomic_power(n, 1);
  std::set<Binomial> seen;
  for (const auto& b : factors) {
    if (!seen.insert(b).second) continue;
    const int v = extract_phi ? b.phi_valuation(n) : 0;
    MPoly<RingElem> f(ring);
    if (v == 0) {
      f = MPoly<RingElem>::constant(ring, 1).mul_binomial(b);
    } else {
      LaurentPoly value = LaurentPoly(b.lead) + LaurentPoly::monomial(b.tail, b.q_exp);
      Poly cofactor = divrem(value.body(), cyclotomic(n)).quotient;
      f = MPoly<RingElem>::term(ring, b.lead_mono, ring.reduce(LaurentPoly(cofactor, value.shift())));
    }
    if (!is_regular(f)) return false;
  }
  return true;
}

namespace engine {

namespace {

using Point = std::map<Var, Rational>;

int valuation(const Factors& f, unsigned n, bool extract) {
  if (!extract) return 0;
  int v = 0;
  for (const auto& b : f) v += b.phi_valuation(n);
  return v;
}

int degree(const Factors& f, Var v) {
  int d = 0;
  for (const auto& b : f) d += b.degree_in(v);
  return d;
}

Factors concat(std::initializer_list<const Factors*> lists) {
  Factors out;
  for (const auto* l : lists) out.insert(out.end(), l->begin(), l->end());
  return out;
}

// Multiset intersection and the two remainders.
void split_common(Factors a, Factors b, Factors& common, Factors& a_rest, Factors& b_rest) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      common.push_back(a[i]);
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      a_rest.push_back(a[i++]);
    } else {
      b_rest.push_back(b[j++]);
    }
  }
  a_rest.insert(a_rest.end(), a.begin() + static_cast<long>(i), a.end());
  b_rest.insert(b_rest.end(), b.begin() + static_cast<long>(j), b.end());
}

std::set<Var> factor_variables(const Factors& f) {
  std::set<Var> out;
  for (const auto& b : f) {
    for (int i = 0; i < kVarCount; ++i) {
      if (b.lead_mono.e[i] != 0 || (b.tail != 0 && b.tail_mono.e[i] != 0)) out.insert(static_cast<Var>(i));
    }
  }
  return out;
}

std::set<Var> side_variables(const ExpandedSide& s) {
  std::set<Var> out = factor_variables(s.pre_num);
  auto add = [&](const Factors& f) {
    auto v = factor_variables(f);
    out.insert(v.begin(), v.end());
  };
  add(s.pre_den);
  for (const auto& f : s.step_num) add(f);
  for (const auto& f : s.step_den) add(f);
  return out;
}

// Numerator of the side over its merged denominator:
// pre_num * sum_k prod_{s<k} num_s prod_{k<=s<top} den_s.
template <class C>
MPoly<C> side_numerator(const ExpandedSide& s, const typename MPoly<C>::Domain& dom) {
  if (s.vanishes()) return MPoly<C>(dom);
  MPoly<C> acc = MPoly<C>::constant(dom, 1);
  MPoly<C> run = acc;
  for (std::size_t k = 0; k < s.step_num.size(); ++k) {
    for (const auto& b : s.step_num[k]) run.mul_binomial_assign(b);
    for (const auto& b : s.step_den[k]) acc.mul_binomial_assign(b);
    acc += run;
  }
  for (const auto& b : s.pre_num) acc.mul_binomial_assign(b);
  return acc;
}

template <class C>
MPoly<C> times(MPoly<C> f, const Factors& factors) {
  for (const auto& b : factors) f.mul_binomial_assign(b);
  return f;
}

std::string product_string(const Factors& f) {
  if (f.empty()) return "1";
  std::string s;
  for (const auto& b : f) s += b.to_string();
  return s;
}

struct Prepared {
  ExpandedSide lhs, rhs;
  Factors common, lhs_rest, rhs_rest;
  unsigned n = 1, m = 1;
  int t = 0;  // Phi_n-multiplicity of common * lhs_rest * rhs_rest
  bool extract = true;

  unsigned level() const { return m + static_cast<unsigned>(t); }
  Factors multiplier() const { return concat({&common, &lhs_rest, &rhs_rest}); }
  int lhs_valuation() const { return valuation(common, n, extract) + valuation(lhs_rest, n, extract); }
  int rhs_valuation() const { return valuation(common, n, extract) + valuation(rhs_rest, n, extract); }
};

// The first summand whose denominator carries more Phi_n factors than its numerator.
std::optional<std::string> negative_term(const ExpandedSide& s, const char* which, unsigned n, bool extract) {
  if (s.vanishes() || !extract) return std::nullopt;
  long v = valuation(s.pre_num, n, true) - valuation(s.pre_den, n, true);
  std::string blame;
  for (const auto& b : s.pre_den) {
    if (b.phi_valuation(n) > 0) blame = b.to_string();
  }
  for (long k = 0;; ++k) {
    if (v < 0) {
      return std::string(which) + " term k=" + std::to_string(k) + " has a denominator factor " + blame +
             " divisible by Phi(" + std::to_string(n) + ")";
    }
    if (k >= s.top) break;
    const auto idx = static_cast<std::size_t>(k);
    v += valuation(s.step_num[idx], n, true) - valuation(s.step_den[idx], n, true);
    for (const auto& b : s.step_den[idx]) {
      if (b.phi_valuation(n) > 0) blame = b.to_string();
    }
  }
  return std::nullopt;
}

std::variant<Prepared, CheckResult> prepare(const SeriesSpec& lhs, const SeriesSpec& rhs, unsigned n, unsigned m,
                                            bool extract) {
  Prepared p;
  p.n = n;
  p.m = m;
  p.extract = extract;
  try {
    p.lhs = expand(lhs);
    p.rhs = expand(rhs);
  } catch (const DegenerateDenominator& e) {
    return CheckResult{Outcome::NonInvertible, "", std::nullopt, e.what()};
  }
  for (auto [side, which] : {std::pair{&p.lhs, "lhs"}, std::pair{&p.rhs, "rhs"}}) {
    if (auto problem = negative_term(*side, which, n, extract)) {
      return CheckResult{Outcome::NonInvertible, "", std::nullopt, *problem};
    }
  }
  split_common(p.lhs.vanishes() ? Factors{} : p.lhs.merged_denominator(),
               p.rhs.vanishes() ? Factors{} : p.rhs.merged_denominator(), p.common, p.lhs_rest, p.rhs_rest);
  p.t = valuation(p.common, n, extract) + valuation(p.lhs_rest, n, extract) + valuation(p.rhs_rest, n, extract);
  return p;
}

// Phi_n-free part of a numeric binomial, reduced in `ring`.
RingElem cofactor(const Binomial& b, unsigned n, int v, const ModulusRing& ring) {
  LaurentPoly value = numeric_value(b);
  if (v == 0) return ring.reduce(value);
  return ring.reduce(LaurentPoly(divrem(value.body(), cyclotomic(n)).quotient, value.shift()));
}

// Y / Phi_n^t reduced modulo Phi_n^m, from a representative modulo Phi_n^{m+t}.
RingElem lower_level(const Poly& y, unsigned n, int t, const ModulusRing& target) {
  if (t == 0) return target.reduce(y);
  return target.reduce(divrem(y, cyclotomic(n).pow(static_cast<unsigned>(t))).quotient);
}

CheckResult clearing(const Prepared& p) {
  CyclicRing ring(p.n, p.level());
  const ModulusRing top = ModulusRing::cyclotomic_power(p.n, p.level());
  MPoly<CyclicElem> pl = side_numerator<CyclicElem>(p.lhs, ring);
  MPoly<CyclicElem> pr = side_numerator<CyclicElem>(p.rhs, ring);

  for (auto [f, v, which] : {std::tuple{&pl, p.lhs_valuation(), "lhs"}, std::tuple{&pr, p.rhs_valuation(), "rhs"}}) {
    if (v == 0) continue;
    const ModulusRing sub = ModulusRing::cyclotomic_power(p.n, static_cast<unsigned>(v));
    for (const auto& [mono, c] : f->terms()) {
      if (!ring.project(c, sub).is_zero()) {
        return {Outcome::Fail, "clearing", std::nullopt, std::string("internal: ") + which + " is not Phi-integral"};
      }
    }
  }

  MPoly<CyclicElem> y = times(pl, p.rhs_rest) - times(pr, p.lhs_rest);
  bool zero = true;
  for (const auto& [mono, c] : y.terms()) {
    if (!ring.project(c, top).is_zero()) {
      zero = false;
      break;
    }
  }
  if (zero) return {Outcome::Pass, "clearing", std::nullopt, ""};

  const ModulusRing target = ModulusRing::cyclotomic_power(p.n, p.m);
  MPoly<RingElem> z(target);
  for (const auto& [mono, c] : y.terms()) {
    z.add_term(mono, lower_level(ring.project(c, top).residue(), p.n, p.t, target));
  }
  const Factors mult = p.multiplier();
  bool numeric = !z.has_variables();
  for (const auto& b : mult) numeric = numeric && !b.has_variables();
  if (numeric) {
    RingElem u = target.one();
    for (const auto& b : mult) u *= cofactor(b, p.n, p.extract ? b.phi_valuation(p.n) : 0, target);
    RingElem r = z.coefficient(Monomial{}) * u.inverse();
    return {Outcome::Fail, "clearing", r.to_string(), "lhs - rhs is nonzero modulo " + target.describe()};
  }
  std::string den = product_string(mult);
  if (p.t > 0) den += "/Phi(" + std::to_string(p.n) + ")^" + std::to_string(p.t);
  return {Outcome::Fail, "clearing", "(" + z.to_string() + ") / (" + den + ")",
          "lhs - rhs is nonzero modulo " + target.describe()};
}

Rational monomial_value(const Monomial& mono, const Point& pt) {
  Rational v = 1;
  for (int i = 0; i < kVarCount; ++i) {
    int e = mono.e[i];
    if (e == 0) continue;
    const Rational& x = pt.at(static_cast<Var>(i));
    for (int j = 0; j < e; ++j) v *= x;
  }
  return v;
}

Binomial at(const Binomial& b, const Point& pt) {
  Binomial out{b.lead == 0 ? Rational(0) : Rational(b.lead * monomial_value(b.lead_mono, pt)), {},
               b.tail == 0 ? Rational(0) : Rational(b.tail * monomial_value(b.tail_mono, pt)), b.q_exp, {}};
  return out;
}

// Values of coefficient * monomial at one point; sides repeat the same few.
class ScalarCache {
 public:
  explicit ScalarCache(const Point& pt) : pt_(pt) {}
  const Rational& value(const Rational& c, const Monomial& m) {
    if (c == 0 || m.is_one()) return c;
    for (const auto& e : entries_) {
      if (e.mono == m && e.coeff == c) return e.value;
    }
    entries_.push_back({c, m, c * monomial_value(m, pt_)});
    return entries_.back().value;
  }

 private:
  struct Entry {
    Rational coeff;
    Monomial mono;
    Rational value;
  };
  const Point& pt_;
  std::deque<Entry> entries_;
};

void apply(CyclicElem& c, const Binomial& b, ScalarCache& cache) {
  c.mul_binomial_assign(cache.value(b.lead, b.lead_mono), cache.value(b.tail, b.tail_mono), b.q_exp);
}

CyclicElem side_value(const ExpandedSide& s, const CyclicRing& ring, const Point& pt) {
  if (s.vanishes()) return ring.zero();
  ScalarCache cache(pt);
  CyclicElem acc = ring.one();
  CyclicElem run = acc;
  for (std::size_t k = 0; k < s.step_num.size(); ++k) {
    for (const auto& b : s.step_num[k]) apply(run, b, cache);
    for (const auto& b : s.step_den[k]) apply(acc, b, cache);
    acc += run;
  }
  for (const auto& b : s.pre_num) apply(acc, b, cache);
  return acc;
}

std::string point_string(const Point& pt) {
  std::string s;
  for (const auto& [v, x] : pt) {
    if (!s.empty()) s += ", ";
    s += std::string(var_name(v)) + "=" + x.get_str();
  }
  return s;
}

CheckResult point_eval(const Prepared& p, const VerifyOptions& options) {
  const Factors mult = p.multiplier();
  std::set<Var> vars = side_variables(p.lhs);
  for (Var v : side_variables(p.rhs)) vars.insert(v);
  for (Var v : factor_variables(mult)) vars.insert(v);
  const std::vector<Var> order(vars.begin(), vars.end());

  // Degree of Y = P_L * (D_R/g) - P_R * (D_L/g) in each variable.
  std::vector<int> bound;
  for (Var v : order) {
    int bl = p.lhs.vanishes() ? 0 : p.lhs.degree_bound(v) + degree(p.rhs_rest, v);
    int br = p.rhs.vanishes() ? 0 : p.rhs.degree_bound(v) + degree(p.lhs_rest, v);
    bound.push_back(std::max(bl, br));
  }

  // Candidate integers outside {-1, 0, 1}, in a seeded order per variable.
  std::vector<std::vector<long>> pools, chosen;
  std::vector<std::size_t> next;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::size_t want = static_cast<std::size_t>(bound[i]) + 1;
    std::vector<long> cand;
    for (long x = 2; cand.size() < want + 64; ++x) {
      cand.push_back(x);
      cand.push_back(-x);
    }
    std::vector<std::size_t> perm = shuffled_indices(cand.size(), options.seed * 1000003u + i);
    std::vector<long> pool;
    for (std::size_t j : perm) pool.push_back(cand[j]);
    chosen.emplace_back(pool.begin(), pool.begin() + static_cast<long>(want));
    pools.push_back(std::move(pool));
    next.push_back(want);
  }

  auto grid_size = [&] {
    std::size_t total = 1;
    for (const auto& c : chosen) total *= c.size();
    return total;
  };
  auto point_of = [&](std::size_t idx) {
    Point pt;
    for (std::size_t i = order.size(); i-- > 0;) {
      pt[order[i]] = chosen[i][idx % chosen[i].size()];
      idx /= chosen[i].size();
    }
    return pt;
  };

  // Pole avoidance: a denominator factor must keep its structural Phi_n-multiplicity.
  for (std::size_t attempt = 0;; ++attempt) {
    if (attempt > 10000) {
      return {Outcome::NonInvertible, "pointeval", std::nullopt, "no admissible evaluation points"};
    }
    std::optional<std::pair<std::size_t, std::size_t>> bad;  // (variable slot, value slot)
    for (std::size_t idx = 0; idx < grid_size() && !bad; ++idx) {
      Point pt = point_of(idx);
      for (const auto& b : mult) {
        Binomial num = at(b, pt);
        int structural = p.extract ? b.phi_valuation(p.n) : 0;
        int numeric = p.extract ? num.phi_valuation(p.n) : 0;
        if (!num.identically_zero() && numeric == structural) continue;
        std::size_t slot = 0;
        for (std::size_t i = 0; i < order.size(); ++i) {
          if (b.degree_in(order[i]) > 0) slot = i;
        }
        std::size_t rem = idx, value_slot = 0;
        for (std::size_t i = order.size(); i-- > 0;) {
          if (i == slot) value_slot = rem % chosen[i].size();
          rem /= chosen[i].size();
        }
        bad = std::pair{slot, value_slot};
        break;
      }
    }
    if (!bad) break;
    auto [slot, value_slot] = *bad;
    if (next[slot] >= pools[slot].size()) {
      return {Outcome::NonInvertible, "pointeval", std::nullopt, "no admissible evaluation points"};
    }
    chosen[slot][value_slot] = pools[slot][next[slot]++];
  }

  const CyclicRing ring(p.n, p.level());
  const ModulusRing top = ModulusRing::cyclotomic_power(p.n, p.level());
  const ModulusRing lsub = ModulusRing::cyclotomic_power(p.n, static_cast<unsigned>(std::max(1, p.lhs_valuation())));
  const ModulusRing rsub = ModulusRing::cyclotomic_power(p.n, static_cast<unsigned>(std::max(1, p.rhs_valuation())));
  const std::size_t total = grid_size();
  for (std::size_t idx = 0; idx < total; ++idx) {
    const Point pt = point_of(idx);
    CyclicElem al = side_value(p.lhs, ring, pt);
    CyclicElem ar = side_value(p.rhs, ring, pt);
    if ((p.lhs_valuation() > 0 && !ring.project(al, lsub).is_zero()) ||
        (p.rhs_valuation() > 0 && !ring.project(ar, rsub).is_zero())) {
      return {Outcome::Fail, "pointeval", std::nullopt, "internal: side is not Phi-integral at " + point_string(pt)};
    }
    ScalarCache cache(pt);
    for (const auto& b : p.rhs_rest) apply(al, b, cache);
    for (const auto& b : p.lhs_rest) apply(ar, b, cache);
    CyclicElem y = al - ar;
    RingElem projected = ring.project(y, top);
    if (projected.is_zero()) continue;
    const ModulusRing target = ModulusRing::cyclotomic_power(p.n, p.m);
    RingElem u = target.one();
    for (const auto& b : mult) {
      Binomial num = at(b, pt);
      u *= cofactor(num, p.n, p.extract ? num.phi_valuation(p.n) : 0, target);
    }
    RingElem r = lower_level(projected.residue(), p.n, p.t, target) * u.inverse();
    std::string where = order.empty() ? "" : point_string(pt) + ": ";
    return {Outcome::Fail, "pointeval", where + r.to_string(),
            "lhs - rhs is nonzero modulo " + target.describe() + (order.empty() ? "" : " at " + point_string(pt))};
  }
  std::string detail;
  if (!order.empty()) {
    detail = std::to_string(total) + " grid points, degree bounds";
    for (std::size_t i = 0; i < order.size(); ++i) {
      detail += std::string(i == 0 ? " " : ", ") + var_name(order[i]) + "<=" + std::to_string(bound[i]);
    }
  }
  return {Outcome::Pass, "pointeval", std::nullopt, detail};
}

Rational random_rational(std::mt19937_64& rng, bool avoid_unit) {
  for (;;) {
    long num = static_cast<long>(rng() % 19) - 9;
    long den = static_cast<long>(rng() % 9) + 1;
    if (num == 0) continue;
    Rational r = make_rational(num, den);
    if (avoid_unit && (r == 1 || r == -1)) continue;
    return r;
  }
}

}  // namespace

std::vector<std::size_t> shuffled_indices(std::size_t count, std::uint64_t seed) {
  std::vector<std::size_t> idx(count);
  for (std::size_t i = 0; i < count; ++i) idx[i] = i;
  std::mt19937_64 rng(seed);
  for (std::size_t i = count; i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(idx[i - 1], idx[j]);
  }
  return idx;
}

CheckResult check_phi(const SeriesSpec& lhs, const SeriesSpec& rhs, unsigned n, unsigned m, Strategy strategy,
                      const VerifyOptions& options) {
  auto prepared = prepare(lhs, rhs, n, m, options.extract_phi);
  if (auto* early = std::get_if<CheckResult>(&prepared)) {
    early->strategy = strategy == Strategy::PointEval ? "pointeval" : "clearing";
    return *early;
  }
  const Prepared& p = std::get<Prepared>(prepared);
  const bool regular = regular_multiplier(p.multiplier(), n, options.extract_phi);
  const std::string refusal =
      "a denominator factor is a zero divisor modulo Phi(" + std::to_string(n) + "), clearing is unsound";
  switch (strategy) {
    case Strategy::Clearing:
      if (!regular) return {Outcome::NonInvertible, "clearing", std::nullopt, refusal};
      return clearing(p);
    case Strategy::PointEval:
      if (!regular) return {Outcome::NonInvertible, "pointeval", std::nullopt, refusal};
      return point_eval(p, options);
    case Strategy::Auto:
      break;
  }
  if (regular) return clearing(p);
  CheckResult fallback{Outcome::NonInvertible, "pointeval", std::nullopt, refusal};
  fallback.detail = "clearing refused, fell back to point evaluation: " + refusal;
  return fallback;
}

CheckResult check_exact(const SeriesSpec& lhs, const SeriesSpec& rhs) {
  ExpandedSide l, r;
  try {
    l = expand(lhs);
    r = expand(rhs);
  } catch (const DegenerateDenominator& e) {
    return {Outcome::NonInvertible, "exact", std::nullopt, e.what()};
  }
  Factors common, lrest, rrest;
  split_common(l.vanishes() ? Factors{} : l.merged_denominator(), r.vanishes() ? Factors{} : r.merged_denominator(),
               common, lrest, rrest);
  const ExactDomain dom;
  MPoly<LaurentPoly> y = times(side_numerator<LaurentPoly>(l, dom), rrest) -
                         times(side_numerator<LaurentPoly>(r, dom), lrest);
  if (y.is_zero()) return {Outcome::Pass, "exact", std::nullopt, ""};
  return {Outcome::Fail, "exact", "(" + y.to_string() + ") / (" + product_string(concat({&common, &lrest, &rrest})) + ")",
          "lhs - rhs is a nonzero rational function"};
}

CheckResult check_grid(const SeriesSpec& lhs, const SeriesSpec& rhs, unsigned points, std::uint64_t seed) {
  std::set<Var> vars = lhs.variables();
  for (Var v : rhs.variables()) vars.insert(v);
  std::mt19937_64 rng(seed);
  std::set<std::vector<Rational>> seen;
  unsigned done = 0;
  for (unsigned attempt = 0; done < points; ++attempt) {
    if (attempt > 50 * points + 100) {
      return {Outcome::NonInvertible, "grid", std::nullopt, "could not find enough pole-free grid points"};
    }
    Rational q = random_rational(rng, true);
    Assignment values;
    std::vector<Rational> key{q};
    for (Var v : vars) {
      values[v] = random_rational(rng, false);
      key.push_back(values[v]);
    }
    if (!seen.insert(key).second) continue;
    Rational a, b;
    try {
      a = evaluate_series(lhs, q, values);
      b = evaluate_series(rhs, q, values);
    } catch (const std::domain_error&) {
      continue;
    }
    ++done;
    if (a != b) {
      std::string where = "q=" + q.get_str();
      for (const auto& [v, x] : values) where += std::string(", ") + var_name(v) + "=" + x.get_str();
      return {Outcome::Fail, "grid", where + ": " + Rational(a - b).get_str(), "sides differ at " + where};
    }
  }
  return {Outcome::Pass, "grid", std::nullopt, std::to_string(points) + " exact rational points"};
}

}  // namespace engine
}  // namespace qcongr
