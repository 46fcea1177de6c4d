#include <filesystem>
#include <random>
#include <set>

#include "doctest.h"
#include "qcongr/dsl.hpp"
#include "qcongr/report.hpp"

using namespace qcongr;
using namespace qcongr::dsl;

namespace {

const char* kTh23 =
    "claim th23 params d,n: sum k=0..(n-1)/(2d) of poch(q; q^(2d))_k / poch(q^(2d); q^(2d))_k * q^(2*d*k) "
    "≡ 0 mod Phi(n)^1";

std::vector<ClaimAst> shipped() {
  std::vector<ClaimAst> all;
  for (const auto& entry : std::filesystem::directory_iterator(QCONGR_CLAIMS_DIR)) {
    if (entry.path().extension() != ".qcl") continue;
    for (auto& c : load_file(entry.path().string())) all.push_back(std::move(c));
  }
  return all;
}

bool is_parse_error_only(const std::string& text) {
  try {
    parse({text, "<fuzz>"});
  } catch (const ParseError&) {
  }
  return true;  // anything else propagates and fails the test
}

}  // namespace

TEST_SUITE("dsl") {
  TEST_CASE("example claim parses") {
    ClaimAst c = parse_claim({kTh23});
    CHECK(c.name == "th23");
    CHECK(c.params == std::vector<std::string>{"d", "n"});
    REQUIRE(c.sides.size() == 2);
    CHECK(c.sides[0].kind == SideAst::Kind::Sum);
    CHECK(c.sides[0].index == "k");
    REQUIRE(c.sides[0].upper);
    CHECK(c.sides[0].upper->kind == Expr::Kind::Div);
    CHECK(c.sides[0].upper->checked);
    CHECK(c.modulus.kind == ModulusAst::Kind::Phi);
    CHECK(c.modulus.power == 1);
    CHECK(c.where.empty());
  }

  TEST_CASE("parse error position") {
    try {
      parse({"claim bad : sum of", "<t>"});
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.position().line == 1);
      CHECK(e.position().column == 17);  // at "of"
      CHECK(!e.expected().empty());
    }
    try {
      parse({"claim bad params n:\n  sum k=0..n of q^k\n  ≡ 0\n  mod Phi(n)^2 where n > 1 extra", "<t>"});
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.position().line == 4);
    }
  }

  TEST_CASE("unknown identifiers are parse errors") {
    CHECK_THROWS_AS(parse({"claim u params n: sum k=0..n of q^(m2*k) ≡ 0 mod Phi(n)", "<t>"}), ParseError);
  }

  TEST_CASE("relation and modulus aliases") {
    ClaimAst a = parse_claim({"claim r params n: sum k=0..n-1 of q^k ≡ qint(n) mod Φ(n)^2"});
    ClaimAst b = parse_claim({"claim r params n: sum k=0..n-1 of q^k ~= qint(n) mod Phi(n)^2"});
    CHECK(a == b);
    CHECK_THROWS_AS(parse({"claim r params n: sum k=0..n-1 of q^k = qint(n) mod Phi(n)^2", "<t>"}), ParseError);
  }

  TEST_CASE("round trip of shipped claims") {
    auto all = shipped();
    CHECK(all.size() >= 24);
    for (const auto& c : all) {
      CAPTURE(c.name);
      std::string text = pretty(c);
      ClaimAst again = parse_claim({text, c.name});
      CHECK(again == c);
      CHECK(pretty(again) == text);
    }
  }

  TEST_CASE("lowering matches the builtin") {
    ClaimAst c = parse_claim({kTh23});
    CongruenceClaim lowered = lower(c, {{"d", 1}, {"n", 3}});
    CongruenceClaim built = builtin("th-2-3", {{"d", 1}, {"n", 3}});
    VerificationReport a = verify(lowered, Strategy::Clearing);
    VerificationReport b = verify(built, Strategy::Clearing);
    CHECK(a.outcome == Outcome::Pass);
    CHECK(a.outcome == b.outcome);
    CHECK(a.residue == b.residue);
    CHECK(lowered.sides == built.sides);
  }

  TEST_CASE("integrality violation") {
    ClaimAst c = parse_claim({kTh23});
    try {
      lower(c, {{"d", 2}, {"n", 4}});
      FAIL("expected an integrality violation");
    } catch (const IntegralityViolation& e) {
      std::string what = e.what();
      CHECK(what.find("(n - 1) / (2*d)") != std::string::npos);
      CHECK(what.find("d=2") != std::string::npos);
    }
  }

  TEST_CASE("unbound parameter") {
    ClaimAst c = parse_claim({kTh23});
    try {
      lower(c, {{"n", 5}});
      FAIL("expected a lowering error");
    } catch (const LowerError& e) {
      CHECK(std::string(e.what()).find("d") != std::string::npos);
    }
  }

  TEST_CASE("every builtin has a shipped claim that lowers to it") {
    auto all = shipped();
    const std::vector<long long> ds = {1, 2, 3, 4}, ss = {-1, 1}, ns = {3, 5, 7, 9, 11, 13, 17, 21};
    const std::vector<long long> ps = {3, 5, 7, 11, 13};
    for (const auto& name : builtin_names()) {
      CAPTURE(name);
      const ClaimAst* ast = find_claim(all, name);
      REQUIRE(ast != nullptr);
      auto params = builtin_parameters(name);
      CHECK(ast->params == params);
      ParamRanges ranges;
      for (const auto& p : params) {
        if (p == "d") ranges.push_back({p, ds});
        else if (p == "s") ranges.push_back({p, ss});
        else if (p == "p") ranges.push_back({p, ps});
        else ranges.push_back({p, ns});
      }
      int compared = 0;
      for (const auto& values : expand_ranges(ranges)) {
        CongruenceClaim built;
        try {
          built = builtin(name, values);
        } catch (const std::invalid_argument&) {
          continue;
        }
        if (!built.admissible()) continue;
        CongruenceClaim lowered = lower(*ast, values);
        CHECK(lowered.sides == built.sides);
        CHECK(describe(lowered.modulus) == describe(built.modulus));
        REQUIRE(lowered.hypotheses.size() == built.hypotheses.size());
        for (std::size_t i = 0; i < built.hypotheses.size(); ++i) {
          CHECK(lowered.hypotheses[i].text == built.hypotheses[i].text);
          CHECK(lowered.hypotheses[i].holds == built.hypotheses[i].holds);
        }
        if (++compared == 4) break;
      }
      CHECK(compared > 0);
    }
  }

  TEST_CASE("parser totality") {
    std::mt19937_64 rng(7);
    const std::string alphabet = "claim params sum of poch q x y Phi mod where note if then else k=0..n-1 ()^*/+-,;:_<>=%≡~\"\n 0123456789";
    for (int i = 0; i < 2000; ++i) {
      std::string s;
      std::size_t len = rng() % 60;
      for (std::size_t j = 0; j < len; ++j) s += alphabet[rng() % alphabet.size()];
      CHECK(is_parse_error_only(s));
    }
    const std::string base = kTh23;
    for (int i = 0; i < 2000; ++i) {
      std::string s = base;
      int edits = 1 + static_cast<int>(rng() % 4);
      for (int j = 0; j < edits; ++j) {
        std::size_t at = rng() % s.size();
        switch (rng() % 3) {
          case 0: s.erase(at, 1 + rng() % 3); break;
          case 1: s.insert(at, 1, alphabet[rng() % alphabet.size()]); break;
          default: s[at] = alphabet[rng() % alphabet.size()]; break;
        }
        if (s.empty()) s = "x";
      }
      CHECK(is_parse_error_only(s));
    }
  }
}
