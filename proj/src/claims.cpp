#include "qcongr/claims.hpp"

#include <atomic>
#include <chrono>
#include <exception>
#include <random>
#include <thread>

#include "engine.hpp"
#include "qcongr/padlim.hpp"

namespace qcongr {

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Pass:
      return "PASS";
    case Outcome::Fail:
      return "FAIL";
    case Outcome::HypothesisFail:
      return "HYPOTHESIS_FAIL";
    case Outcome::NonInvertible:
      return "NONINVERTIBLE";
  }
  return "?";
}

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::Clearing:
      return "clearing";
    case Strategy::PointEval:
      return "pointeval";
    case Strategy::Auto:
      return "auto";
  }
  return "?";
}

std::optional<Strategy> strategy_from_name(const std::string& name) {
  if (name == "clearing") return Strategy::Clearing;
  if (name == "pointeval") return Strategy::PointEval;
  if (name == "auto") return Strategy::Auto;
  return std::nullopt;
}

std::string describe(const ModulusSpec& m) {
  struct {
    std::string operator()(const PhiPower& p) const {
      return "Phi(" + std::to_string(p.n) + ")^" + std::to_string(p.power);
    }
    std::string operator()(const ParametricA& p) const {
      std::string n = std::to_string(p.n);
      return p.single ? "(1-a*q^" + n + ")" : "(1-a*q^" + n + ")(a-q^" + n + ")";
    }
    std::string operator()(const PrimePower& p) const { return std::to_string(p.p) + "^" + std::to_string(p.e); }
    std::string operator()(const ExactIdentity&) const { return "exact"; }
    std::string operator()(const GridIdentity& g) const { return "grid(" + std::to_string(g.points) + ")"; }
  } visitor;
  return std::visit(visitor, m);
}

bool CongruenceClaim::admissible() const { return first_violation() == nullptr; }

const Hypothesis* CongruenceClaim::first_violation() const {
  for (const auto& h : hypotheses) {
    if (!h.holds) return &h;
  }
  return nullptr;
}

std::set<Var> CongruenceClaim::variables() const {
  std::set<Var> out;
  for (const auto& side : sides) {
    if (const auto* s = std::get_if<SeriesSpec>(&side)) {
      auto v = s->variables();
      out.insert(v.begin(), v.end());
    }
  }
  return out;
}

namespace {

const SeriesSpec& series_side(const CongruenceClaim& claim, std::size_t i) {
  const auto* s = std::get_if<SeriesSpec>(&claim.sides.at(i));
  if (s == nullptr) throw std::invalid_argument("claim " + claim.name + ": side " + std::to_string(i + 1) + " is not a q-series");
  return *s;
}

// Runs check(0, i) for every later side of a chain; the first failure wins.
template <class Check>
engine::CheckResult chain(const CongruenceClaim& claim, Check check) {
  engine::CheckResult last;
  for (std::size_t i = 1; i < claim.sides.size(); ++i) {
    last = check(series_side(claim, 0), series_side(claim, i));
    if (last.outcome != Outcome::Pass) {
      if (claim.sides.size() > 2) {
        std::string where = "side " + std::to_string(i + 1) + " against side 1";
        last.detail = last.detail.empty() ? where : where + ": " + last.detail;
      }
      return last;
    }
  }
  return last;
}

SeriesSpec specialize_side(const SeriesSpec& s, Var v, long k) {
  SeriesSpec out = s;
  for (auto* list : {&out.numerator, &out.denominator}) {
    for (auto& p : *list) p.atom = p.atom.specialize(v, k);
  }
  out.power.offset += static_cast<long>(out.monomial[v]) * k;
  out.monomial[v] = 0;
  out.normalize();
  return out;
}

engine::CheckResult check_parametric(const CongruenceClaim& claim) {
  const auto& mod = std::get<ParametricA>(claim.modulus);
  const long n = static_cast<long>(mod.n);
  if (n < 1) throw std::invalid_argument("parametric modulus needs n >= 1");
  // The two roots a = q^{-n} and a = q^n are distinct for n >= 1, so the
  // factors 1 - a q^n and a - q^n are coprime.
  std::vector<long> roots = {-n};
  if (!mod.single) roots.push_back(n);
  std::string detail = "exact equality at";
  for (long e : roots) {
    CongruenceClaim spec = claim;
    for (auto& side : spec.sides) side = specialize_side(std::get<SeriesSpec>(side), Var::A, e);
    engine::CheckResult r = chain(spec, [](const SeriesSpec& l, const SeriesSpec& rr) { return engine::check_exact(l, rr); });
    const std::string at = "a=q^" + std::to_string(e);
    if (r.outcome != Outcome::Pass) {
      r.detail = at + ": " + r.detail;
      r.strategy = "specialization";
      return r;
    }
    detail += (e == roots.front() ? " " : " and ") + at;
  }
  return {Outcome::Pass, "specialization", std::nullopt, detail};
}

engine::CheckResult check_modular(const CongruenceClaim& claim) {
  const auto& mod = std::get<PrimePower>(claim.modulus);
  std::vector<ResidueInt> values;
  try {
    for (const auto& side : claim.sides) {
      const auto* r = std::get_if<RisingSeries>(&side);
      if (r == nullptr) throw std::invalid_argument("prime-power claims need rising-factorial sides");
      values.push_back(rising_series_mod(*r, mod.p, mod.e));
    }
  } catch (const NotPAdicInteger& e) {
    return {Outcome::NonInvertible, "modular", std::nullopt, e.what()};
  }
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] == values[0])) {
      ResidueInt diff = values[0] - values[i];
      std::string detail = "lhs = " + values[0].to_string() + ", rhs = " + values[i].to_string() + " modulo " +
                           describe(claim.modulus);
      return {Outcome::Fail, "modular", diff.to_string(), detail};
    }
  }
  return {Outcome::Pass, "modular", std::nullopt, ""};
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  auto us = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start).count();
  return static_cast<double>(us) / 1000.0;
}

}  // namespace

VerificationReport verify(const CongruenceClaim& claim, Strategy strategy, const VerifyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport report;
  report.claim = claim.name;
  report.params = claim.params;
  auto finish = [&](engine::CheckResult r) {
    report.strategy = r.strategy;
    report.outcome = r.outcome;
    report.residue = r.residue;
    report.detail = r.detail;
    if (options.timings) report.millis = elapsed_ms(start);
    return report;
  };
  if (options.check_hypotheses) {
    if (const Hypothesis* h = claim.first_violation()) {
      return finish({Outcome::HypothesisFail, "none", std::nullopt, "hypothesis violated: " + h->text});
    }
  }
  if (claim.sides.size() < 2) throw std::invalid_argument("claim " + claim.name + " needs at least two sides");
  try {
    if (const auto* phi = std::get_if<PhiPower>(&claim.modulus)) {
      return finish(chain(claim, [&](const SeriesSpec& l, const SeriesSpec& r) {
        return engine::check_phi(l, r, phi->n, phi->power, strategy, options);
      }));
    }
    if (std::holds_alternative<ParametricA>(claim.modulus)) return finish(check_parametric(claim));
    if (std::holds_alternative<PrimePower>(claim.modulus)) return finish(check_modular(claim));
    if (std::holds_alternative<ExactIdentity>(claim.modulus)) {
      return finish(chain(claim, [](const SeriesSpec& l, const SeriesSpec& r) { return engine::check_exact(l, r); }));
    }
    const auto& grid = std::get<GridIdentity>(claim.modulus);
    return finish(chain(claim, [&](const SeriesSpec& l, const SeriesSpec& r) {
      return engine::check_grid(l, r, grid.points, options.seed);
    }));
  } catch (const NonInvertible& e) {
    return finish({Outcome::NonInvertible, to_string(strategy), std::nullopt, e.what()});
  }
}

VerificationReport verify_parametric_a(const CongruenceClaim& claim, const VerifyOptions& options) {
  if (!std::holds_alternative<ParametricA>(claim.modulus)) {
    throw std::invalid_argument("verify_parametric_a: claim " + claim.name + " has no parametric modulus");
  }
  return verify(claim, Strategy::Auto, options);
}

namespace {

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

// Both sides of the quadratic transformation in base t with q = t^2, so that
// a*b*sqrt(q) has an integral exponent. a^2 = q^{-2N} forces termination;
// b, c and the fourth parameter (carried by the variable x) are free.
engine::CheckResult check_quadratic(bool with_d, long N, unsigned points, std::uint64_t seed) {
  const Var B = Var::B, C = Var::C, D = Var::X;
  std::vector<QAtom> lnum = {QAtom::q(-4 * N), QAtom::var(B, 0, 1, 2), QAtom::var(C)};
  std::vector<QAtom> lden = {QAtom::var(B, 1 - 2 * N), QAtom::var(B, 1 - 2 * N, -1)};
  std::vector<QAtom> rnum = {QAtom::q(-4 * N), QAtom::var(B, 0, 1, 2), QAtom::var(C, 0, 1, 2)};
  std::vector<QAtom> rden = {QAtom::var(B, 2 - 4 * N, 1, 2)};
  if (with_d) {
    QAtom cd{-1, 0, Monomial::of(C) + Monomial::of(D)};
    lnum.push_back(QAtom::var(D));
    lden.push_back(cd);
    rnum.push_back(QAtom::var(D, 0, 1, 2));
    rden.push_back(cd);
    rden.push_back(QAtom{-1, 2, cd.vars});
  }
  std::mt19937_64 rng(seed);
  std::set<std::vector<Rational>> seen;
  unsigned done = 0;
  for (unsigned attempt = 0; done < points; ++attempt) {
    if (attempt > 50 * points + 100) return {Outcome::NonInvertible, "grid", std::nullopt, "too many poles"};
    Rational t = random_rational(rng, true);
    Assignment values{{B, random_rational(rng, false)}, {C, random_rational(rng, false)}};
    if (with_d) values[D] = random_rational(rng, false);
    std::vector<Rational> key{t};
    for (const auto& [v, x] : values) key.push_back(x);
    if (!seen.insert(key).second) continue;
    Rational l, r;
    try {
      l = phi_series(lnum, lden, 2, QAtom::q(2), 2 * N, t, values);
      r = phi_series(rnum, rden, 4, QAtom::q(4), N, t, values);
    } catch (const std::domain_error&) {
      continue;
    }
    ++done;
    if (l != r) {
      std::string where = "t=" + t.get_str();
      for (const auto& [v, x] : values) where += std::string(", ") + (v == D ? "d" : var_name(v)) + "=" + x.get_str();
      return {Outcome::Fail, "grid", where + ": " + Rational(l - r).get_str(), "sides differ at " + where};
    }
  }
  return {Outcome::Pass, "grid", std::nullopt, std::to_string(points) + " exact rational specializations"};
}

}  // namespace

VerificationReport verify_identity(const std::string& name, const std::map<std::string, long long>& params,
                                   const VerifyOptions& options) {
  if (name == "s-1" || name == "s-2") {
    const auto start = std::chrono::steady_clock::now();
    auto it = params.find("N");
    if (it == params.end() || params.size() != 1) throw std::invalid_argument(name + " needs exactly the parameter N");
    VerificationReport report{name, params, "grid", Outcome::Pass, std::nullopt, "", std::nullopt};
    if (it->second < 0) {
      report.strategy = "none";
      report.outcome = Outcome::HypothesisFail;
      report.detail = "hypothesis violated: N >= 0";
    } else {
      auto r = check_quadratic(name == "s-1", static_cast<long>(it->second), std::max(options.random_points, 1u),
                               options.seed);
      report.strategy = r.strategy;
      report.outcome = r.outcome;
      report.residue = r.residue;
      report.detail = r.detail;
    }
    if (options.timings) report.millis = elapsed_ms(start);
    return report;
  }
  static const std::set<std::string> known = {"ss-0-0", "ss-0-1", "ss-0-2", "ss-0-3", "ss-0-4", "ss-0-5"};
  if (!known.count(name)) throw UnknownClaim(name);
  return verify(builtin(name, params), Strategy::Auto, options);
}

std::vector<VerificationReport> run_parallel(std::size_t count,
                                             const std::function<VerificationReport(std::size_t)>& job,
                                             unsigned threads) {
  std::vector<std::optional<VerificationReport>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        slots[i] = job(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  std::vector<VerificationReport> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

std::vector<std::map<std::string, long long>> expand_ranges(const ParamRanges& ranges) {
  std::vector<std::map<std::string, long long>> out;
  for (const auto& [name, values] : ranges) {
    if (values.empty()) return {};
  }
  std::vector<std::size_t> idx(ranges.size(), 0);
  for (;;) {
    std::map<std::string, long long> tuple;
    for (std::size_t i = 0; i < ranges.size(); ++i) tuple[ranges[i].first] = ranges[i].second[idx[i]];
    out.push_back(std::move(tuple));
    std::size_t i = ranges.size();
    for (; i-- > 0;) {
      if (++idx[i] < ranges[i].second.size()) break;
      idx[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

std::vector<VerificationReport> scan(const std::string& family, const ParamRanges& ranges, Strategy strategy,
                                     const VerifyOptions& options, unsigned threads) {
  builtin_parameters(family);  // rejects unknown names up front
  const auto tuples = expand_ranges(ranges);
  return run_parallel(
      tuples.size(), [&](std::size_t i) { return verify(builtin(family, tuples[i]), strategy, options); }, threads);
}

CongruenceClaim perturb_power(CongruenceClaim claim, std::size_t side, long delta) {
  auto* s = std::get_if<SeriesSpec>(&claim.sides.at(side));
  if (s == nullptr) throw std::invalid_argument("perturb_power: side is not a q-series");
  s->power.offset += delta;
  claim.notes.push_back("per-term power of side " + std::to_string(side + 1) + " shifted by " + std::to_string(delta));
  return claim;
}

CongruenceClaim with_phi_power(CongruenceClaim claim, unsigned power) {
  auto* phi = std::get_if<PhiPower>(&claim.modulus);
  if (phi == nullptr) throw std::invalid_argument("with_phi_power: claim has no cyclotomic modulus");
  phi->power = power;
  return claim;
}

VerificationReport specialization_chain(unsigned n, int sign) {
  const std::map<std::string, long long> params{{"d", 2}, {"n", static_cast<long long>(n)}};
  const std::string target_name = sign > 0 ? "th-2-0" : "th-2-1";
  VerificationReport report{"th-2 x=" + std::string(sign > 0 ? "" : "-") + "q^2", params, "specialization",
                            Outcome::Pass, std::nullopt, "", std::nullopt};
  CongruenceClaim source = builtin("th-2", params);
  CongruenceClaim target = builtin(target_name, {{"n", static_cast<long long>(n)}});
  if (const Hypothesis* h = source.first_violation()) {
    report.strategy = "none";
    report.outcome = Outcome::HypothesisFail;
    report.detail = "hypothesis violated: " + h->text;
    return report;
  }
  const SeriesSpec& lhs = std::get<SeriesSpec>(source.sides[0]);
  const SeriesSpec& goal = std::get<SeriesSpec>(target.sides[0]);
  SeriesSpec specialized = lhs;
  for (auto& p : specialized.numerator) {
    if (p.atom.vars == Monomial::of(Var::X)) p.atom = QAtom{p.atom.coeff * sign, p.atom.q_exp + 2, {}};
  }
  const ModulusRing ring = ModulusRing::cyclotomic_power(n, 2);
  for (long k = 0; k <= lhs.top; ++k) {
    MFraction<RingElem> a = summand(specialized, k, ring), b = summand(goal, k, ring);
    RingElem lhs_cross = a.numerator.coefficient(Monomial{}) * b.denominator.coefficient(Monomial{});
    RingElem rhs_cross = b.numerator.coefficient(Monomial{}) * a.denominator.coefficient(Monomial{});
    if (!(lhs_cross == rhs_cross)) {
      report.outcome = Outcome::Fail;
      report.residue = (lhs_cross - rhs_cross).to_string();
      report.detail = "summand k=" + std::to_string(k) + " differs from the " + target_name + " summand";
      return report;
    }
  }
  MFraction<RingElem> symbolic = sum_symbolic(lhs, ring);
  std::map<Var, RingElem> at{{Var::X, ring.q_power(2) * Rational(sign)}};
  RingElem num = evaluate(symbolic.numerator, at).coefficient(Monomial{});
  RingElem den = evaluate(symbolic.denominator, at).coefficient(Monomial{});
  RingElem value = num * den.inverse();
  RingElem expected = sum_numeric(goal, ring);
  if (!(value == expected)) {
    report.outcome = Outcome::Fail;
    report.residue = (value - expected).to_string();
    report.detail = "evaluated sum differs from the " + target_name + " sum";
    return report;
  }
  report.detail = "all " + std::to_string(lhs.top + 1) + " summands and the evaluated sum agree modulo " +
                  ring.describe();
  return report;
}

}  // namespace qcongr
