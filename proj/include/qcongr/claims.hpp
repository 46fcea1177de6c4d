#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "qcongr/qseries.hpp"

namespace qcongr {

enum class Strategy { Clearing, PointEval, Auto };
enum class Outcome { Pass, Fail, HypothesisFail, NonInvertible };

std::string to_string(Outcome o);  // "PASS", "FAIL", "HYPOTHESIS_FAIL", "NONINVERTIBLE"
std::string to_string(Strategy s);
std::optional<Strategy> strategy_from_name(const std::string& name);

struct PhiPower {
  unsigned n = 1;
  unsigned power = 1;
};
// (1 - a q^n)(a - q^n), or just (1 - a q^n) when `single`.
struct ParametricA {
  unsigned n = 1;
  bool single = false;
};
struct PrimePower {
  unsigned long p = 2;
  unsigned e = 1;
};
// Every side equals every other as rational functions.
struct ExactIdentity {};
// Exact equality at random rational points for q and all free variables.
struct GridIdentity {
  unsigned points = 20;
};
using ModulusSpec = std::variant<PhiPower, ParametricA, PrimePower, ExactIdentity, GridIdentity>;

std::string describe(const ModulusSpec& m);

struct GammaFactor {
  Rational x;
  int power = 1;
  friend bool operator==(const GammaFactor&, const GammaFactor&) = default;
};

// scale * Gamma_p(x)^power * sum_{k=0}^{top} prod (a_i)_k / prod (b_i)_k, the
// q -> 1 shadow of a q-series side.
struct RisingSeries {
  std::vector<Rational> numerator;
  std::vector<Rational> denominator;
  long top = 0;
  Rational scale = 1;
  std::optional<GammaFactor> gamma;
  friend bool operator==(const RisingSeries&, const RisingSeries&) = default;
};

using Side = std::variant<SeriesSpec, RisingSeries>;

struct Hypothesis {
  std::string text;
  bool holds = true;
};

// sides[0] == sides[1] == ... modulo `modulus`.
struct CongruenceClaim {
  std::string name;
  std::map<std::string, long long> params;
  std::vector<Side> sides;
  ModulusSpec modulus;
  std::vector<Hypothesis> hypotheses;
  std::vector<std::string> notes;

  bool admissible() const;
  const Hypothesis* first_violation() const;
  std::set<Var> variables() const;
};

struct VerificationReport {
  std::string claim;
  std::map<std::string, long long> params;
  std::string strategy;
  Outcome outcome = Outcome::Fail;
  std::optional<std::string> residue;
  std::string detail;
  std::optional<double> millis;
};

struct VerifyOptions {
  std::uint64_t seed = 0;
  bool check_hypotheses = true;
  // Split Phi_n factors off denominators before clearing. Without it a
  // denominator divisible by Phi_n is a zero divisor and clearing refuses.
  bool extract_phi = true;
  bool timings = false;
  unsigned random_points = 200;  // quadratic-transformation specializations
};

class UnknownClaim : public std::invalid_argument {
 public:
  explicit UnknownClaim(const std::string& name) : std::invalid_argument("unknown claim: " + name) {}
};

std::vector<std::string> builtin_names();
// Parameter names in scan order, e.g. {"d", "s", "n"}.
std::vector<std::string> builtin_parameters(const std::string& name);
CongruenceClaim builtin(const std::string& name, const std::map<std::string, long long>& params);

VerificationReport verify(const CongruenceClaim& claim, Strategy strategy = Strategy::Auto,
                          const VerifyOptions& options = {});
VerificationReport verify_parametric_a(const CongruenceClaim& claim, const VerifyOptions& options = {});
// Classical summations and the quadratic transformation (s-1, s-2 with parameter N).
VerificationReport verify_identity(const std::string& name, const std::map<std::string, long long>& params,
                                   const VerifyOptions& options = {});

// Ordered parameter ranges; the scan walks their cartesian product with the
// last parameter varying fastest.
using ParamRanges = std::vector<std::pair<std::string, std::vector<long long>>>;

std::vector<VerificationReport> run_parallel(std::size_t count,
                                             const std::function<VerificationReport(std::size_t)>& job,
                                             unsigned threads);
std::vector<std::map<std::string, long long>> expand_ranges(const ParamRanges& ranges);
std::vector<VerificationReport> scan(const std::string& family, const ParamRanges& ranges,
                                     Strategy strategy = Strategy::Auto, const VerifyOptions& options = {},
                                     unsigned threads = 1);

// Negative controls.
CongruenceClaim perturb_power(CongruenceClaim claim, std::size_t side = 0, long delta = 1);
CongruenceClaim with_phi_power(CongruenceClaim claim, unsigned power);

// x -> sign*q^2 in the (th-2) left side for d = 2 against the (th-2-0) or
// (th-2-1) left side, term by term and summed, modulo Phi_n(q)^2.
VerificationReport specialization_chain(unsigned n, int sign);

// A product of binomials is a non-zero-divisor in (Q[q]/Phi_n^m)[vars] iff
// every factor, with its Phi_n part split off when `extract_phi`, is regular.
bool regular_multiplier(const std::vector<Binomial>& factors, unsigned n, bool extract_phi = true);

}  // namespace qcongr
