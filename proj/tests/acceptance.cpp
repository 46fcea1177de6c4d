// Acceptance run: one PASS/FAIL line per criterion, findings underneath.
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qcongr/claims.hpp"
#include "qcongr/dsl.hpp"
#include "qcongr/padlim.hpp"
#include "qcongr/report.hpp"

using namespace qcongr;

namespace {

using Params = std::map<std::string, long long>;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Tally {
  int total = 0;
  int pass = 0;
  std::vector<std::string> failures;

  void add(const VerificationReport& r, const std::string& tag = "") {
    ++total;
    if (r.outcome == Outcome::Pass) {
      ++pass;
    } else {
      failures.push_back(r.claim + (tag.empty() ? "" : " " + tag) + " " + format_params(r.params) + " " +
                         to_string(r.outcome));
    }
  }
  bool ok() const { return total > 0 && pass == total; }
  std::string summary() const {
    std::string s = std::to_string(pass) + "/" + std::to_string(total) + " pass";
    if (!failures.empty()) {
      s += "; first failures:";
      for (std::size_t i = 0; i < failures.size() && i < 4; ++i) s += " [" + failures[i] + "]";
      if (failures.size() > 4) s += " ... (" + std::to_string(failures.size()) + " total)";
    }
    return s;
  }
};

// Outcomes of both strategies per instance, for the agreement criterion.
struct Pair {
  std::string label;
  Outcome clearing;
  Outcome pointeval;
};
std::vector<Pair> g_pairs;

std::vector<std::string> g_lines;
std::vector<std::string> g_findings;
int g_failed = 0;

void criterion(int id, bool ok, const std::string& text) {
  char head[64];
  std::snprintf(head, sizeof head, "criterion %2d: %s  ", id, ok ? "PASS" : "FAIL");
  g_lines.push_back(head + text);
  std::printf("%s\n", g_lines.back().c_str());
  std::fflush(stdout);
  if (!ok) ++g_failed;
}

void finding(const std::string& text) { g_findings.push_back(text); }

// Runs both engine strategies and records the pair.
void both(const std::string& name, const Params& params, Tally& tally) {
  const CongruenceClaim c = builtin(name, params);
  VerificationReport a = verify(c, Strategy::Clearing);
  VerificationReport b = verify(c, Strategy::PointEval);
  tally.add(a, "clearing");
  tally.add(b, "pointeval");
  g_pairs.push_back({name + " " + format_params(params), a.outcome, b.outcome});
}

std::vector<long long> primes_below(long long bound) {
  std::vector<long long> out;
  for (long long p = 2; p < bound; ++p) {
    if (is_prime(static_cast<std::uint64_t>(p))) out.push_back(p);
  }
  return out;
}

void c1() {
  auto t0 = Clock::now();
  Tally t;
  for (long long d = 2; d <= 5; ++d) {
    for (long long n = 5; n <= 45; ++n) {
      if (n % (2 * d) == 1) both("th-2", {{"d", d}, {"n", n}}, t);
    }
  }
  double s = seconds_since(t0);
  char buf[64];
  std::snprintf(buf, sizeof buf, "; %.1f s (limit 180 s)", s);
  criterion(1, t.ok() && s < 180, "th-2 d=2..5, n = 1 mod 2d, 5<=n<=45, both strategies: " + t.summary() + buf);
}

void c2() {
  Tally t;
  for (long long d = 3; d <= 5; ++d) {
    for (long long n = 1; n <= 49; ++n) {
      if (n % (2 * d) == 2 * d - 1) both("th-1", {{"d", d}, {"n", n}}, t);
    }
  }
  criterion(2, t.ok(), "th-1 d=3..5, n = -1 mod 2d, n<=49, both strategies: " + t.summary());
}

template <class F>
void minus_one_mod_d(F f) {
  for (long long d = 2; d <= 6; ++d) {
    for (long long n = 3; n <= 45; n += 2) {
      if (n % d == d - 1) f(d, n);
    }
  }
}

template <class F>
void one_mod_2d(F f) {
  for (long long d = 1; d <= 5; ++d) {
    for (long long n = 2; n <= 45; ++n) {
      if (n % (2 * d) == 1) f(d, n);
    }
  }
}

void c3() {
  Tally t22, t23, t24, t25;
  minus_one_mod_d([&](long long d, long long n) {
    both("th-2-2", {{"d", d}, {"n", n}}, t22);
    both("th-2-4", {{"d", d}, {"n", n}}, t24);
  });
  one_mod_2d([&](long long d, long long n) {
    both("th-2-3", {{"d", d}, {"n", n}}, t23);
    both("th-2-5", {{"d", d}, {"n", n}}, t25);
  });
  criterion(3, t22.ok() && t23.ok() && t24.ok() && t25.ok(),
            "th-2-2 " + t22.summary() + " | th-2-3 " + t23.summary() + " | th-2-4 " + t24.summary() + " | th-2-5 " +
                t25.summary());
}

void c4() {
  Tally t;
  int strengthened = 0, strengthened_fail = 0;
  std::string first_fail;
  for (long long d = 2; d <= 5; ++d) {
    for (long long s : {-1LL, 1LL}) {
      for (long long n = 1; n <= 45; ++n) {
        if (((n - s) % (2 * d) + 2 * d) % (2 * d) != 0) continue;
        Params p{{"d", d}, {"s", s}, {"n", n}};
        both("th-3", p, t);
        VerificationReport r = verify(with_phi_power(builtin("th-3", p), 2), Strategy::Clearing);
        ++strengthened;
        if (r.outcome == Outcome::Fail) {
          ++strengthened_fail;
          if (first_fail.empty()) first_fail = format_params(p);
        }
      }
    }
  }
  std::string probe;
  if (strengthened_fail > 0) {
    probe = "modulo Phi^2 fails for " + std::to_string(strengthened_fail) + "/" + std::to_string(strengthened) +
            " instances (first " + first_fail + "), so Phi^1 is sharp";
  } else {
    probe = "modulo Phi^2 holds for all " + std::to_string(strengthened) + " instances";
  }
  finding("th-3 sharpness: " + probe);
  criterion(4, t.ok(), "th-3 d=2..5, s=+-1, n = s mod 2d, n<=45, both strategies: " + t.summary() + "; probe: " + probe);
}

void c5() {
  Tally t;
  for (long long d = 1; d <= 4; ++d) {
    for (long long n = 1; n <= 35; n += 2) both("th-5", {{"d", d}, {"n", n}}, t);
  }
  criterion(5, t.ok(), "th-5 d=1..4, odd n<=35, symbolic x and y, both strategies: " + t.summary());
}

void c6() {
  Tally t;
  for (long long d = 3; d <= 5; ++d) {
    for (long long s : {-1LL, 1LL}) {
      for (long long n = 1; n <= 45; ++n) {
        if (((n - s) % (2 * d) + 2 * d) % (2 * d) == 0) t.add(verify(builtin("s-3", {{"d", d}, {"s", s}, {"n", n}})));
      }
    }
  }
  for (long long n = 1; n <= 45; n += 4) t.add(verify(builtin("s-3-1", {{"n", n}})));
  criterion(6, t.ok(), "s-3 d=3..5, s=+-1 and s-3-1, n<=45, exact at a=q^n and a=q^-n: " + t.summary());
}

void c7() {
  auto t0 = Clock::now();
  Tally t;
  for (long long d = 1; d <= 3; ++d) {
    for (long long n = 1; n <= 25; n += 2) both("ss-0", {{"d", d}, {"n", n}}, t);
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "; %.1f s", seconds_since(t0));
  criterion(7, t.ok(), "ss-0 d=1..3, odd n<=25, symbolic m, x, y, clearing with regularity guard (and pointeval): " +
                           t.summary() + buf);
}

void c8() {
  Tally t;
  for (unsigned n : {5u, 9u, 13u, 17u}) {
    for (int sign : {1, -1}) t.add(specialization_chain(n, sign));
  }
  criterion(8, t.ok(), "x -> q^2 and x -> -q^2 in th-2 (d=2) against th-2-0 and th-2-1, n=5,9,13,17: " + t.summary());
}

void c9() {
  auto t0 = Clock::now();
  Tally vh, qc, t13;
  for (long long p : primes_below(100)) {
    if (p > 2) vh.add(verify_van_hamme(static_cast<std::uint64_t>(p)));
  }
  for (long long p : primes_below(200)) {
    if (p % 4 == 3) qc.add(verify_quarter_corollary(static_cast<std::uint64_t>(p)));
  }
  for (int d = 2; d <= 4; ++d) {
    for (int s : {-1, 1}) {
      for (long long p : primes_below(150)) {
        if (((p - s) % (2 * d) + 2 * d) % (2 * d) == 0) t13.add(verify_thm13_limit(static_cast<std::uint64_t>(p), d, s));
      }
    }
  }
  for (const auto& f : vh.failures) finding("in-1 as printed: " + f);
  double s = seconds_since(t0);
  char buf[64];
  std::snprintf(buf, sizeof buf, "; %.2f s (limit 30 s)", s);
  criterion(9, vh.ok() && qc.ok() && t13.ok() && s < 30,
            "in-1 p<100 " + vh.summary() + " | quarter corollary p<200 " + qc.summary() + " | th-3 limit p<150 " +
                t13.summary() + buf);
}

void c10() {
  Tally t;
  VerifyOptions opt;
  opt.random_points = 200;
  for (long long n = 0; n <= 8; ++n) t.add(verify_identity("ss-0-0", {{"n", n}}, opt));
  for (long long n = 0; n <= 6; ++n) t.add(verify_identity("ss-0-3", {{"n", n}}, opt));
  for (long long N = 0; N <= 4; ++N) {
    t.add(verify_identity("s-1", {{"N", N}}, opt));
    t.add(verify_identity("s-2", {{"N", N}}, opt));
  }
  minus_one_mod_d([&](long long d, long long n) {
    t.add(verify_identity("ss-0-1", {{"d", d}, {"n", n}}, opt));
    t.add(verify_identity("ss-0-4", {{"d", d}, {"n", n}}, opt));
  });
  one_mod_2d([&](long long d, long long n) {
    t.add(verify_identity("ss-0-2", {{"d", d}, {"n", n}}, opt));
    t.add(verify_identity("ss-0-5", {{"d", d}, {"n", n}}, opt));
  });
  for (const auto& f : t.failures) finding("identity suite: " + f);
  criterion(10, t.ok(), "ss-0-0 n<=8, ss-0-3 n<=6 (20 grid points), s-1/s-2 N<=4 (200 points), ss-0-1/2/4/5: " +
                            t.summary());
}

void c11() {
  const Params p{{"d", 2}, {"n", 5}};
  const CongruenceClaim perturbed = perturb_power(builtin("th-2", p));
  VerificationReport a = verify(perturbed, Strategy::Clearing);
  VerificationReport b = verify(perturbed, Strategy::PointEval);
  const bool perturbed_fails =
      a.outcome == Outcome::Fail && a.residue && *a.residue != "0" && b.outcome == Outcome::Fail;
  VerificationReport weak = verify(with_phi_power(builtin("th-2", p), 1));
  VerifyOptions loose;
  loose.check_hypotheses = false;
  VerificationReport degenerate = verify(builtin("s-3", {{"d", 2}, {"s", -1}, {"n", 3}}), Strategy::Auto, loose);
  const bool typed = degenerate.outcome == Outcome::NonInvertible &&
                     degenerate.detail.find("degenerate denominator") != std::string::npos;
  criterion(11, perturbed_fails && weak.outcome == Outcome::Pass && typed,
            std::string("perturbed th-2 (d=2,n=5): ") + to_string(a.outcome) + "/" + to_string(b.outcome) +
                "; th-2 mod Phi^1: " + to_string(weak.outcome) + "; s-3 d=2 s=-1 n=3: " +
                to_string(degenerate.outcome) + " (" + degenerate.detail + ")");
}

void c12(const std::string& claims_dir) {
  int agree = 0;
  std::vector<std::string> disagree;
  for (const auto& pr : g_pairs) {
    if (pr.clearing == pr.pointeval) {
      ++agree;
    } else {
      disagree.push_back(pr.label);
    }
  }
  // DSL against builtin over criterion 1's range, both strategies, whole JSON reports.
  int same = 0, compared = 0;
  std::string mismatch;
  const auto claims = dsl::load_file(claims_dir + "/theorems.qcl");
  const dsl::ClaimAst* ast = dsl::find_claim(claims, "th-2");
  if (ast) {
    for (long long d = 2; d <= 5; ++d) {
      for (long long n = 5; n <= 45; ++n) {
        if (n % (2 * d) != 1) continue;
        Params p{{"d", d}, {"n", n}};
        for (Strategy st : {Strategy::Clearing, Strategy::PointEval}) {
          ++compared;
          std::string x = to_json(verify(builtin("th-2", p), st)).dump();
          std::string y = to_json(verify(dsl::lower(*ast, p), st)).dump();
          if (x == y) {
            ++same;
          } else if (mismatch.empty()) {
            mismatch = "; first mismatch " + format_params(p);
          }
        }
      }
    }
  }
  std::string text = "strategy agreement " + std::to_string(agree) + "/" + std::to_string(g_pairs.size()) +
                     " instances of criteria 1-7";
  if (!disagree.empty()) text += " (disagree: " + disagree.front() + ")";
  text += "; DSL vs builtin identical JSON " + std::to_string(same) + "/" + std::to_string(compared) + mismatch;
  criterion(12, !g_pairs.empty() && disagree.empty() && ast && same == compared, text);
}

void c13() {
  int produced = 0, consistent = 0;
  std::string status;
  for (long long n = 3; n <= 29; n += 2) {
    const CongruenceClaim c = builtin("in-2", {{"n", n}});
    VerificationReport a = verify(c, Strategy::Clearing);
    VerificationReport b = verify(c, Strategy::PointEval);
    ++produced;
    const bool decided = a.outcome == Outcome::Pass || a.outcome == Outcome::Fail;
    if (decided && a.outcome == b.outcome) ++consistent;
    status += " n=" + std::to_string(n) + ":" + to_string(a.outcome);
    if (a.outcome != b.outcome) status += "/" + to_string(b.outcome);
  }
  finding("in-2 as printed, per n:" + status);
  criterion(13, produced > 0 && consistent == produced,
            "in-2 as printed, odd 3<=n<=29: " + std::to_string(consistent) + "/" + std::to_string(produced) +
                " reports consistent across strategies;" + status);
}

}  // namespace

int main(int argc, char** argv) {
  const std::string claims_dir = argc > 1 ? argv[1] : QCONGR_CLAIMS_DIR;
  const std::vector<std::function<void()>> steps = {c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11,
                                                    [&] { c12(claims_dir); }, c13};
  auto t0 = Clock::now();
  for (std::size_t i = 0; i < steps.size(); ++i) {
    try {
      steps[i]();
    } catch (const std::exception& e) {
      criterion(static_cast<int>(i + 1), false, std::string("error: ") + e.what());
    }
  }
  std::printf("\nfindings:\n");
  for (const auto& f : g_findings) std::printf("  %s\n", f.c_str());
  std::printf("\nsummary: %zu criteria, %d failing, %.1f s\n", steps.size(), g_failed, seconds_since(t0));
  return g_failed == 0 ? 0 : 1;
}
