#include <algorithm>

#include "qcongr/dsl.hpp"
#include "qcongr/padlim.hpp"

namespace qcongr::dsl {

namespace {

using Params = std::map<std::string, long long>;

// c1 * index + c0
struct Lin {
  Rational c1 = 0, c0 = 0;
  bool constant() const { return c1 == 0; }
};

std::string bindings(const Params& params) {
  std::string out;
  for (const auto& [k, v] : params) out += (out.empty() ? "" : ", ") + k + "=" + std::to_string(v);
  return out;
}

Rational rational_pow(const Rational& base, long long e) {
  if (e < 0) {
    if (base == 0) throw LowerError("zero raised to a negative power");
    return rational_pow(Rational(1) / base, -e);
  }
  Rational r = 1, b = base;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

class Evaluator {
 public:
  Evaluator(const Params& params, std::string index) : params_(params), index_(std::move(index)) {}

  Lin eval(const ExprPtr& e) const {
    switch (e->kind) {
      case Expr::Kind::Int:
        return {0, make_rational(e->value)};
      case Expr::Kind::Name: {
        if (!index_.empty() && e->name == index_) return {1, 0};
        auto it = params_.find(e->name);
        if (it == params_.end()) throw LowerError("parameter " + e->name + " is not bound");
        return {0, make_rational(it->second)};
      }
      case Expr::Kind::Add: {
        Lin a = eval(e->lhs), b = eval(e->rhs);
        return {a.c1 + b.c1, a.c0 + b.c0};
      }
      case Expr::Kind::Sub: {
        Lin a = eval(e->lhs), b = eval(e->rhs);
        return {a.c1 - b.c1, a.c0 - b.c0};
      }
      case Expr::Kind::Neg: {
        Lin a = eval(e->lhs);
        return {-a.c1, -a.c0};
      }
      case Expr::Kind::Mul: {
        Lin a = eval(e->lhs), b = eval(e->rhs);
        if (!a.constant() && !b.constant()) throw LowerError("exponent " + pretty(e) + " is not linear in " + index_);
        return {a.c1 * b.c0 + a.c0 * b.c1, a.c0 * b.c0};
      }
      case Expr::Kind::Div: {
        Lin a = eval(e->lhs), b = eval(e->rhs);
        if (!b.constant()) throw LowerError("division by an expression in " + index_ + ": " + pretty(e));
        if (b.c0 == 0) throw LowerError("division by zero in " + pretty(e) + " with " + bindings(params_));
        Lin r{a.c1 / b.c0, a.c0 / b.c0};
        if (e->checked && (!is_integer(r.c1) || !is_integer(r.c0))) {
          throw IntegralityViolation(pretty(e) + " with " + bindings(params_));
        }
        return r;
      }
      case Expr::Kind::Mod: {
        long long a = integer(e->lhs), b = integer(e->rhs);
        if (b == 0) throw LowerError("modulus zero in " + pretty(e) + " with " + bindings(params_));
        return {0, make_rational(mod_floor(a, b < 0 ? -b : b))};
      }
      case Expr::Kind::Pow: {
        Lin base = eval(e->lhs);
        long long k = integer(e->rhs);
        if (!base.constant()) throw LowerError("power of the summation index in " + pretty(e));
        return {0, rational_pow(base.c0, k)};
      }
      case Expr::Kind::Abs: {
        Lin a = eval(e->lhs);
        if (!a.constant()) throw LowerError("abs of the summation index in " + pretty(e));
        return {0, abs(a.c0)};
      }
    }
    throw LowerError("bad expression");
  }

  Rational constant(const ExprPtr& e) const {
    Lin v = eval(e);
    if (!v.constant()) throw LowerError(pretty(e) + " depends on the summation index");
    return v.c0;
  }

  long long integer(const ExprPtr& e) const {
    Rational v = constant(e);
    if (!is_integer(v)) throw IntegralityViolation(pretty(e) + " with " + bindings(params_));
    if (!v.get_num().fits_slong_p()) throw LowerError(pretty(e) + " is too large");
    return v.get_num().get_si();
  }

  Affine affine(const ExprPtr& e) const {
    Lin v = eval(e);
    if (!is_integer(v.c1) || !is_integer(v.c0)) throw IntegralityViolation(pretty(e) + " with " + bindings(params_));
    return {v.c1.get_num().get_si(), v.c0.get_num().get_si()};
  }

  bool test(const Condition& c) const {
    try {
      if (c.kind == Condition::Kind::Prime) return is_prime_ll(integer(c.lhs));
      Rational a = constant(c.lhs), b = constant(c.rhs);
      if (c.op == "==") return a == b;
      if (c.op == "!=") return a != b;
      if (c.op == "<") return a < b;
      if (c.op == "<=") return a <= b;
      if (c.op == ">") return a > b;
      return a >= b;
    } catch (const std::invalid_argument&) {
      // A zero modulus or a non-integral quotient makes the condition false.
      return false;
    }
  }

 private:
  static bool is_prime_ll(long long v) { return v >= 2 && is_prime(static_cast<std::uint64_t>(v)); }
  const Params& params_;
  std::string index_;
};

// Everything a product of factors can contribute.
struct Acc {
  std::vector<PochSpec> num, den;
  Affine power{0, 0};
  Rational scale = 1;
  Monomial monomial;
  std::vector<Rational> rnum, rden;
  std::optional<GammaFactor> gamma;
  bool q_parts = false;
  bool rising_parts = false;
};

class Lowerer {
 public:
  Lowerer(const Params& params) : params_(params) {}

  void accumulate(const TermPtr& t, const Evaluator& ev, long long mult, Acc& acc) const {
    if (mult == 0) return;
    switch (t->kind) {
      case Term::Kind::Number: {
        Rational v = ev.constant(t->expr);
        if (v == 0 && mult < 0) throw LowerError("division by zero: " + pretty(t));
        acc.scale *= rational_pow(v, mult);
        return;
      }
      case Term::Kind::Q:
        acc.power.offset += mult;
        acc.q_parts = true;
        return;
      case Term::Kind::Var:
        acc.monomial[t->var] += static_cast<int>(mult);
        acc.q_parts = true;
        return;
      case Term::Kind::Poch: {
        PochSpec p{atom(t->lhs, ev), step(t->rhs, ev), ev.affine(t->length)};
        add(mult > 0 ? acc.num : acc.den, p, mult);
        acc.q_parts = true;
        return;
      }
      case Term::Kind::QInt: {
        // [n]_q = (q^n;q)_1 / (q;q)_1
        long n = static_cast<long>(ev.integer(t->expr));
        add(mult > 0 ? acc.num : acc.den, PochSpec{QAtom::q(n), 1, {0, 1}}, mult);
        add(mult > 0 ? acc.den : acc.num, PochSpec{QAtom::q(1), 1, {0, 1}}, mult);
        acc.q_parts = true;
        return;
      }
      case Term::Kind::Rising: {
        Affine len = ev.affine(t->length);
        if (!(len == Affine{1, 0})) throw LowerError("the length of " + pretty(t) + " must be the summation index");
        Rational a = ev.constant(t->expr);
        auto& list = mult > 0 ? acc.rnum : acc.rden;
        for (long long i = 0; i < (mult > 0 ? mult : -mult); ++i) list.push_back(a);
        acc.rising_parts = true;
        return;
      }
      case Term::Kind::Gamma: {
        Rational x = ev.constant(t->expr);
        if (acc.gamma && acc.gamma->x != x) throw LowerError("at most one p-adic Gamma argument per side");
        if (!acc.gamma) acc.gamma = GammaFactor{x, 0};
        acc.gamma->power += static_cast<int>(mult);
        acc.rising_parts = true;
        return;
      }
      case Term::Kind::Mul:
        accumulate(t->lhs, ev, mult, acc);
        accumulate(t->rhs, ev, mult, acc);
        return;
      case Term::Kind::Div:
        accumulate(t->lhs, ev, mult, acc);
        accumulate(t->rhs, ev, -mult, acc);
        return;
      case Term::Kind::Neg:
        if (mult % 2 != 0) acc.scale = -acc.scale;
        accumulate(t->lhs, ev, mult, acc);
        return;
      case Term::Kind::Pow: {
        if (t->lhs->kind == Term::Kind::Q) {
          Affine e = ev.affine(t->expr);
          acc.power.per_k += e.per_k * mult;
          acc.power.offset += e.offset * mult;
          acc.q_parts = true;
          return;
        }
        accumulate(t->lhs, ev, mult * ev.integer(t->expr), acc);
        return;
      }
    }
  }

  QAtom atom(const TermPtr& t, const Evaluator& ev) const {
    Acc a;
    accumulate(t, ev, 1, a);
    if (!a.num.empty() || !a.den.empty() || a.rising_parts) {
      throw LowerError("Pochhammer argument " + pretty(t) + " must be a monomial");
    }
    if (!a.power.constant()) throw LowerError("Pochhammer argument " + pretty(t) + " depends on the summation index");
    if (a.scale == 0) throw LowerError("Pochhammer argument " + pretty(t) + " is zero");
    return QAtom{a.scale, a.power.offset, a.monomial};
  }

  long step(const TermPtr& t, const Evaluator& ev) const {
    QAtom a = atom(t, ev);
    if (a.coeff != 1 || !a.vars.is_one() || a.q_exp == 0) {
      throw LowerError("Pochhammer base " + pretty(t) + " must be a nonzero power of q");
    }
    return a.q_exp;
  }

  static void add(std::vector<PochSpec>& list, const PochSpec& p, long long mult) {
    for (long long i = 0; i < (mult > 0 ? mult : -mult); ++i) list.push_back(p);
  }

  Side side(const SideAst& s, bool rising) const {
    if (s.kind == SideAst::Kind::Choice) {
      Evaluator ev(params_, "");
      return side(ev.test(s.condition) ? *s.then_side : *s.else_side, rising);
    }
    const bool sum = s.kind == SideAst::Kind::Sum;
    Evaluator ev(params_, sum ? s.index : "");
    long top = 0;
    if (sum) {
      Evaluator outer(params_, "");
      if (outer.integer(s.lower) != 0) throw LowerError("summation must start at 0: " + pretty(s));
      top = static_cast<long>(outer.integer(s.upper));
    }
    Acc acc;
    accumulate(s.term, ev, 1, acc);
    if (rising) {
      if (acc.q_parts) throw LowerError("a prime-power claim cannot contain q-series factors: " + pretty(s));
      RisingSeries r;
      r.numerator = acc.rnum;
      r.denominator = acc.rden;
      r.top = top;
      r.scale = acc.scale;
      if (acc.gamma && acc.gamma->power != 0) r.gamma = acc.gamma;
      return r;
    }
    if (acc.rising_parts) throw LowerError("rising factorials and Gamma_p need a prime-power modulus: " + pretty(s));
    SeriesSpec out;
    out.numerator = acc.num;
    out.denominator = acc.den;
    out.power = acc.power;
    out.top = top;
    out.scale = acc.scale;
    out.monomial = acc.monomial;
    out.normalize();
    return out;
  }

  ModulusSpec modulus(const ModulusAst& m) const {
    Evaluator ev(params_, "");
    switch (m.kind) {
      case ModulusAst::Kind::Phi:
        return PhiPower{static_cast<unsigned>(ev.integer(m.n)), static_cast<unsigned>(m.power)};
      case ModulusAst::Kind::Parametric: {
        long long n = ev.integer(m.n);
        if (m.second && ev.integer(m.second) != n) throw LowerError("the two parametric factors need the same n");
        return ParametricA{static_cast<unsigned>(n), !m.second};
      }
      case ModulusAst::Kind::PrimePower:
        return PrimePower{static_cast<unsigned long>(ev.integer(m.n)), static_cast<unsigned>(m.power)};
      case ModulusAst::Kind::Exact:
        return ExactIdentity{};
      case ModulusAst::Kind::Grid:
        return GridIdentity{static_cast<unsigned>(m.points)};
    }
    throw LowerError("bad modulus");
  }

 private:
  const Params& params_;
};

}  // namespace

CongruenceClaim lower(const ClaimAst& ast, const std::map<std::string, long long>& params) {
  for (const auto& [k, v] : params) {
    if (std::find(ast.params.begin(), ast.params.end(), k) == ast.params.end()) {
      throw LowerError("claim " + ast.name + " has no parameter " + k);
    }
  }
  for (const auto& k : ast.params) {
    if (!params.count(k)) throw LowerError("parameter " + k + " is not bound");
  }
  CongruenceClaim claim;
  claim.name = ast.name;
  claim.params = params;
  claim.notes = ast.notes;
  Evaluator ev(params, "");
  bool ok = true;
  for (const auto& c : ast.where) {
    bool holds = ok && ev.test(c);
    claim.hypotheses.push_back({pretty(c), holds});
    ok = ok && holds;
  }
  Lowerer lw(params);
  try {
    claim.modulus = lw.modulus(ast.modulus);
    const bool rising = ast.modulus.kind == ModulusAst::Kind::PrimePower;
    for (const auto& s : ast.sides) claim.sides.push_back(lw.side(s, rising));
  } catch (const std::invalid_argument&) {
    // Outside the hypotheses a bound such as (n - 1) / 2 need not exist.
    if (ok) throw;
    claim.sides.clear();
  }
  return claim;
}

}  // namespace qcongr::dsl
