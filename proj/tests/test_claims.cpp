#include "doctest.h"
#include "helpers.hpp"
#include "qcongr/claims.hpp"
#include "qcongr/report.hpp"

using namespace qcongr;

namespace {

using Params = std::map<std::string, long long>;

std::vector<long long> ns(const std::vector<VerificationReport>& rs, long long d) {
  std::vector<long long> out;
  for (const auto& r : rs) {
    if (r.params.at("d") == d) out.push_back(r.params.at("n"));
  }
  return out;
}

}  // namespace

TEST_SUITE("claims") {
  TEST_CASE("builtin shapes") {
    CongruenceClaim c = builtin("th-2", {{"d", 2}, {"n", 5}});
    const auto& lhs = std::get<SeriesSpec>(c.sides[0]);
    CHECK(lhs.top == 4);
    CHECK(lhs.power == Affine{2, 0});
    CHECK(lhs.numerator.size() == 3);
    CHECK(lhs.denominator.size() == 2);
    CHECK(std::get<PhiPower>(c.modulus).n == 5);
    CHECK(std::get<PhiPower>(c.modulus).power == 2);
    CHECK(c.variables() == std::set<Var>{Var::X});
    SeriesSpec expected;
    expected.numerator = {PochSpec{QAtom::q(1), 2, {1, 0}}, PochSpec{QAtom::q(1), 2, {1, 0}},
                          PochSpec{QAtom::var(Var::X), 2, {1, 0}}};
    expected.denominator = {PochSpec{QAtom::q(2), 2, {1, 0}}, PochSpec{QAtom::q(4), 4, {1, 0}}};
    expected.power = {2, 0};
    expected.top = 4;
    expected.normalize();
    CHECK(lhs == expected);

    CongruenceClaim t22 = builtin("th-2-2", {{"d", 2}, {"n", 3}});
    CHECK(std::get<SeriesSpec>(t22.sides[0]).top == 2);

    CongruenceClaim t3 = builtin("th-3", {{"d", 3}, {"s", -1}, {"n", 5}});
    CHECK(std::get<PhiPower>(t3.modulus).n == 5);
    CHECK(std::get<PhiPower>(t3.modulus).power == 1);

    CHECK_THROWS_AS(builtin("nope", {}), UnknownClaim);
    CHECK_THROWS_AS(builtin("th-2", {{"d", 2}}), std::invalid_argument);
    CHECK(builtin("ss-0", {{"d", 1}, {"n", 3}}).notes.at(0).find("(m;q^d)_k") != std::string::npos);
  }

  TEST_CASE("every builtin has parameters and builds") {
    for (const auto& name : builtin_names()) {
      Params p;
      for (const auto& k : builtin_parameters(name)) p[k] = 5;
      CHECK_NOTHROW(builtin(name, p));
    }
    CHECK(builtin_names().size() == 24);
  }

  TEST_CASE("verify examples") {
    CHECK(verify(builtin("th-2", {{"d", 2}, {"n", 5}})).outcome == Outcome::Pass);
    VerificationReport h = verify(builtin("th-2", {{"d", 2}, {"n", 7}}));
    CHECK(h.outcome == Outcome::HypothesisFail);
    CHECK(h.detail.find("n % (2*d) == 1") != std::string::npos);

    CongruenceClaim p = perturb_power(builtin("th-2", {{"d", 2}, {"n", 5}}));
    CHECK(std::get<SeriesSpec>(p.sides[0]).power == Affine{2, 1});
    VerificationReport a = verify(p, Strategy::Clearing);
    VerificationReport b = verify(p, Strategy::PointEval);
    CHECK(a.outcome == Outcome::Fail);
    REQUIRE(a.residue.has_value());
    CHECK(*a.residue != "0");
    CHECK(b.outcome == Outcome::Fail);
  }

  TEST_CASE("PASS reports carry no residue") {
    VerificationReport r = verify(builtin("th-5", {{"d", 2}, {"n", 7}}));
    CHECK(r.outcome == Outcome::Pass);
    CHECK(!r.residue.has_value());
    CHECK(!r.millis.has_value());
    VerifyOptions o;
    o.timings = true;
    CHECK(verify(builtin("th-5", {{"d", 2}, {"n", 7}}), Strategy::Auto, o).millis.has_value());
  }

  TEST_CASE("parametric specialization") {
    CHECK(verify_parametric_a(builtin("s-3", {{"d", 3}, {"s", 1}, {"n", 7}})).outcome == Outcome::Pass);
    CHECK(verify_parametric_a(builtin("s-3-1", {{"n", 5}})).outcome == Outcome::Pass);
    CHECK(verify(builtin("s-5", {{"d", 2}, {"s", 1}, {"n", 5}})).outcome == Outcome::Pass);
    VerifyOptions loose;
    loose.check_hypotheses = false;
    VerificationReport r = verify_parametric_a(builtin("s-3", {{"d", 2}, {"s", -1}, {"n", 3}}), loose);
    CHECK(r.outcome == Outcome::NonInvertible);
    CHECK(r.detail.find("degenerate denominator") != std::string::npos);
    CHECK(verify(builtin("s-3", {{"d", 2}, {"s", -1}, {"n", 3}})).outcome == Outcome::HypothesisFail);
  }

  TEST_CASE("classical identities") {
    CHECK(verify_identity("ss-0-0", {{"n", 2}}).outcome == Outcome::Pass);
    CHECK(verify_identity("ss-0-3", {{"n", 1}}).outcome == Outcome::Pass);
    CHECK(verify_identity("ss-0-3", {{"n", 0}}).outcome == Outcome::Pass);
    VerifyOptions o;
    o.random_points = 200;
    CHECK(verify_identity("s-2", {{"N", 3}}, o).outcome == Outcome::Pass);
    CHECK(verify_identity("s-1", {{"N", 2}}, o).outcome == Outcome::Pass);
    CHECK(verify_identity("ss-0-1", {{"d", 3}, {"n", 5}}).outcome == Outcome::Pass);
    CHECK(verify_identity("ss-0-2", {{"d", 2}, {"n", 9}}).outcome == Outcome::Pass);
    CHECK(verify_identity("ss-0-5", {{"d", 2}, {"n", 9}}).outcome == Outcome::Pass);
    CHECK(verify_identity("s-1", {{"N", -1}}).outcome == Outcome::HypothesisFail);
    CHECK_THROWS_AS(verify_identity("th-2", {{"d", 2}, {"n", 5}}), UnknownClaim);
  }

  TEST_CASE("ss-0-4 as printed and with the corrected exponent") {
    // The printed exponent -(n-1)(n+1-d)/(2d) of the last closed form disagrees
    // with the middle one; -(n^2+dn-d-1)/(2d) agrees.
    VerificationReport printed = verify_identity("ss-0-4", {{"d", 2}, {"n", 5}});
    CHECK(printed.outcome == Outcome::Fail);
    CHECK(printed.detail.find("side 3") != std::string::npos);
    CongruenceClaim c = builtin("ss-0-4", {{"d", 2}, {"n", 5}});
    auto& last = std::get<SeriesSpec>(c.sides[2]);
    last.power.offset = -(25 + 10 - 2 - 1) / 4;
    CHECK(verify(c).outcome == Outcome::Pass);
  }

  TEST_CASE("scan examples") {
    ParamRanges r{{"d", {2, 3}}, {"n", {}}};
    for (long long n = 1; n <= 25; ++n) r[1].second.push_back(n);
    std::vector<VerificationReport> out;
    for (const auto& rep : scan("th-2", r)) {
      if (rep.outcome != Outcome::HypothesisFail) out.push_back(rep);
    }
    CHECK(ns(out, 2) == std::vector<long long>{1, 5, 9, 13, 17, 21, 25});
    CHECK(ns(out, 3) == std::vector<long long>{1, 7, 13, 19, 25});
    for (const auto& rep : out) {
      if (rep.params.at("d") == 2) CHECK(rep.outcome == Outcome::Pass);
    }

    CHECK(scan("th-2", ParamRanges{{"d", {}}, {"n", {5}}}).empty());

    ParamRanges r1{{"d", {3}}, {"n", {}}};
    for (long long n = 1; n <= 23; ++n) r1[1].second.push_back(n);
    std::vector<long long> admissible;
    for (const auto& rep : scan("th-1", r1)) {
      if (rep.outcome != Outcome::HypothesisFail) admissible.push_back(rep.params.at("n"));
    }
    CHECK(admissible == std::vector<long long>{5, 11, 17, 23});
  }

  TEST_CASE("scan order does not depend on threads") {
    ParamRanges r{{"d", {1, 2}}, {"n", {1, 3, 5, 7, 9}}};
    auto serial = scan("th-5", r, Strategy::Auto, {}, 1);
    auto parallel = scan("th-5", r, Strategy::Auto, {}, 3);
    CHECK(to_json_lines(serial) == to_json_lines(parallel));
    CHECK(expand_ranges(r).size() == 10);
    CHECK(expand_ranges(r)[1] == Params{{"d", 1}, {"n", 3}});
  }

  TEST_CASE("strategies agree on a sample") {
    const std::vector<std::pair<std::string, Params>> cases = {
        {"th-2", {{"d", 2}, {"n", 9}}},           {"th-2", {{"d", 3}, {"n", 13}}},
        {"th-1", {{"d", 3}, {"n", 11}}},          {"th-2-4", {{"d", 3}, {"n", 5}}},
        {"th-3", {{"d", 2}, {"s", -1}, {"n", 7}}}, {"th-5", {{"d", 2}, {"n", 9}}},
        {"ss-0", {{"d", 1}, {"n", 5}}},           {"in-2", {{"n", 9}}}};
    for (const auto& [name, p] : cases) {
      CongruenceClaim c = builtin(name, p);
      CAPTURE(name);
      CHECK(verify(c, Strategy::Clearing).outcome == verify(c, Strategy::PointEval).outcome);
    }
  }

  TEST_CASE("clearing refuses an irregular multiplier") {
    // Both sides of th-2-0 divided by 1 - q^5, a zero divisor modulo Phi_5 once
    // the Phi_5 part is no longer split off.
    VerifyOptions raw;
    raw.extract_phi = false;
    CongruenceClaim c = builtin("th-2-0", {{"n", 5}});
    for (auto& side : c.sides) {
      auto& s = std::get<SeriesSpec>(side);
      s.denominator.push_back(PochSpec{QAtom::q(5), 1, {0, 1}});
      s.normalize();
    }
    Binomial zero_divisor = Binomial{1, {}, -1, 5, {}};
    CHECK(!regular_multiplier({zero_divisor}, 5, false));
    CHECK(regular_multiplier({zero_divisor}, 5, true));
    VerificationReport r = verify(c, Strategy::Clearing, raw);
    CHECK(r.outcome == Outcome::NonInvertible);
    CHECK(r.detail.find("zero divisor") != std::string::npos);
    VerificationReport a = verify(c, Strategy::Auto, raw);
    CHECK(a.outcome != Outcome::Pass);
    CHECK(a.detail.find("clearing refused") != std::string::npos);
    VerificationReport e = verify(c, Strategy::Clearing);
    CHECK(e.detail.find("zero divisor") == std::string::npos);
  }

  TEST_CASE("modulus strengthening") {
    CHECK(verify(with_phi_power(builtin("th-2", {{"d", 2}, {"n", 5}}), 1)).outcome == Outcome::Pass);
    bool some_fail = false;
    for (long long n : {3, 5, 7, 11, 13}) {
      for (long long s : {-1, 1}) {
        CongruenceClaim c = builtin("th-3", {{"d", 2}, {"s", s}, {"n", n}});
        if (!c.admissible()) continue;
        some_fail = some_fail || verify(with_phi_power(c, 2)).outcome == Outcome::Fail;
      }
    }
    CHECK(some_fail);
  }

  TEST_CASE("specialization chain") {
    for (unsigned n : {5u, 9u, 13u}) {
      CHECK(specialization_chain(n, 1).outcome == Outcome::Pass);
      CHECK(specialization_chain(n, -1).outcome == Outcome::Pass);
    }
    CHECK(specialization_chain(5, 1).claim == "th-2 x=q^2");
  }

  TEST_CASE("report serialization") {
    VerificationReport r = verify(builtin("th-2", {{"d", 2}, {"n", 5}}), Strategy::Clearing);
    auto j = to_json(r);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"claim", "params", "strategy", "outcome", "residue", "detail", "millis"});
    CHECK(j["outcome"] == "PASS");
    CHECK(j["residue"].is_null());
    CHECK(j["params"]["n"] == 5);
    CHECK(format_params(r.params) == "d=2;n=5");
    std::string csv = to_csv({r});
    CHECK(csv.rfind("claim,params,strategy,outcome,residue,detail,millis\n", 0) == 0);
    CHECK(csv.find("th-2,d=2;n=5,clearing,PASS") != std::string::npos);

    VerificationReport f = verify(builtin("th-2", {{"d", 3}, {"n", 7}}), Strategy::Clearing);
    REQUIRE(f.residue.has_value());
    CHECK(f.residue->size() > kPrettyResidueLimit);
    std::string pretty = to_pretty(f);
    CHECK(pretty.find(f.residue->substr(0, kPrettyResidueLimit)) != std::string::npos);
    CHECK(pretty.find(*f.residue) == std::string::npos);
    CHECK(to_json(f)["residue"] == *f.residue);
  }
}
