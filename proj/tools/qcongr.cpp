#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "qcongr/dsl.hpp"
#include "qcongr/padlim.hpp"
#include "qcongr/report.hpp"

using namespace qcongr;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitHypothesis = 2;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string format = "pretty";
  std::string output;
  std::string strategy = "auto";
  std::uint64_t seed = 0;
  int threads = 0;
  bool timings = false;
  std::map<std::string, std::string> ranges;  // parameter -> range text
  std::map<std::string, long long> maxima;    // --n-max, --p-max
  std::vector<std::string> sets;              // --set name=range
  std::string file;
};

// "3", "1..9", "-1,1", "2..4,7"
std::vector<long long> parse_range(const std::string& text) {
  std::vector<long long> out;
  std::size_t start = 0;
  auto number = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      long long v = std::stoll(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw UsageError("bad integer '" + s + "' in range '" + text + "'");
    }
  };
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string part = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    std::size_t dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(number(part));
    } else {
      long long lo = number(part.substr(0, dots)), hi = number(part.substr(dots + 2));
      if (hi - lo > 1000000) throw UsageError("range '" + part + "' is too long");
      for (long long v = lo; v <= hi; ++v) out.push_back(v);
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

unsigned thread_count(const Common& c) {
  if (const char* env = std::getenv("QCONGR_THREADS")) {
    try {
      int v = std::stoi(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("QCONGR_THREADS must be a positive integer, got '") + env + "'");
  }
  if (c.threads >= 1) return static_cast<unsigned>(c.threads);
  if (c.threads < 0) throw UsageError("--threads must be at least 1");
  return std::max(1u, std::thread::hardware_concurrency());
}

Strategy strategy_of(const Common& c) {
  auto s = strategy_from_name(c.strategy);
  if (!s) throw UsageError("unknown strategy '" + c.strategy + "' (clearing, pointeval, auto)");
  return *s;
}

VerifyOptions options_of(const Common& c) {
  VerifyOptions o;
  o.seed = c.seed;
  o.timings = c.timings;
  return o;
}

std::map<std::string, std::string> all_ranges(const Common& c) {
  auto out = c.ranges;
  for (const auto& s : c.sets) {
    auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--set expects name=value, got '" + s + "'");
    out[s.substr(0, eq)] = s.substr(eq + 1);
  }
  return out;
}

void emit(const Common& c, const std::vector<VerificationReport>& reports) {
  std::string text;
  if (c.format == "json") {
    text = to_json_lines(reports);
  } else if (c.format == "csv") {
    text = to_csv(reports);
  } else {
    for (const auto& r : reports) text += to_pretty(r);
  }
  if (c.output.empty()) {
    std::cout << text << std::flush;
  } else {
    std::ofstream out(c.output, std::ios::binary);
    if (!out) throw UsageError("cannot write " + c.output);
    out << text;
  }
}

int status_of(const std::vector<VerificationReport>& reports) {
  for (const auto& r : reports) {
    if (r.outcome == Outcome::Fail || r.outcome == Outcome::NonInvertible) return kExitFail;
  }
  return 0;
}

// A claim family either from a claim file or from the builtin table.
struct Family {
  std::string name;
  std::vector<std::string> params;
  std::optional<dsl::ClaimAst> ast;

  CongruenceClaim make(const std::map<std::string, long long>& values) const {
    return ast ? dsl::lower(*ast, values) : builtin(name, values);
  }
};

Family family_of(const std::string& name, const Common& c) {
  Family f;
  f.name = name;
  if (!c.file.empty()) {
    auto claims = dsl::load_file(c.file);
    const auto* ast = dsl::find_claim(claims, name);
    if (!ast) throw UsageError("no claim named " + name + " in " + c.file);
    f.ast = *ast;
    f.params = ast->params;
  } else {
    try {
      f.params = builtin_parameters(name);
    } catch (const UnknownClaim& e) {
      throw UsageError(e.what());
    }
  }
  return f;
}

int run_verify(const std::string& name, const Common& c, bool no_hypotheses, unsigned points) {
  VerifyOptions o = options_of(c);
  o.check_hypotheses = !no_hypotheses;
  o.random_points = points;
  std::map<std::string, long long> values;
  for (const auto& [k, text] : all_ranges(c)) {
    auto v = parse_range(text);
    if (v.size() != 1) throw UsageError("verify takes a single value for --" + k);
    values[k] = v.front();
  }
  VerificationReport report;
  if (c.file.empty() && (name == "s-1" || name == "s-2")) {
    report = verify_identity(name, values, o);
  } else {
    Family f = family_of(name, c);
    CongruenceClaim claim;
    try {
      claim = f.make(values);
    } catch (const dsl::IntegralityViolation&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    report = verify(claim, strategy_of(c), o);
  }
  emit(c, {report});
  if (report.outcome == Outcome::HypothesisFail) return kExitHypothesis;
  return status_of({report});
}

int run_scan(const std::string& name, const Common& c) {
  Family f = family_of(name, c);
  auto given = all_ranges(c);
  ParamRanges ranges;
  for (const auto& p : f.params) {
    if (given.count(p)) {
      ranges.emplace_back(p, parse_range(given.at(p)));
    } else if (c.maxima.count(p)) {
      ranges.emplace_back(p, parse_range("1.." + std::to_string(c.maxima.at(p))));
    } else if (p == "s") {
      ranges.emplace_back(p, std::vector<long long>{-1, 1});
    } else {
      throw UsageError("scan " + name + " needs a range for --" + p);
    }
    given.erase(p);
  }
  if (!given.empty()) throw UsageError("claim " + name + " has no parameter " + given.begin()->first);
  const auto tuples = expand_ranges(ranges);
  const Strategy strategy = strategy_of(c);
  const VerifyOptions o = options_of(c);
  auto reports = run_parallel(
      tuples.size(), [&](std::size_t i) { return verify(f.make(tuples[i]), strategy, o); }, thread_count(c));
  std::vector<VerificationReport> kept;
  std::size_t skipped = 0;
  for (auto& r : reports) {
    if (r.outcome == Outcome::HypothesisFail) {
      ++skipped;
    } else {
      kept.push_back(std::move(r));
    }
  }
  emit(c, kept);
  if (skipped) std::cerr << "note: skipped " << skipped << " inadmissible parameter tuple(s)\n";
  return status_of(kept);
}

std::vector<std::pair<std::string, std::map<std::string, long long>>> identity_jobs(long long n_max) {
  std::vector<std::pair<std::string, std::map<std::string, long long>>> jobs;
  for (long long n = 0; n <= std::min<long long>(n_max, 8); ++n) jobs.push_back({"ss-0-0", {{"n", n}}});
  for (long long n = 0; n <= std::min<long long>(n_max, 6); ++n) jobs.push_back({"ss-0-3", {{"n", n}}});
  for (long long N = 0; N <= 4; ++N) {
    jobs.push_back({"s-1", {{"N", N}}});
    jobs.push_back({"s-2", {{"N", N}}});
  }
  for (const char* name : {"ss-0-1", "ss-0-4"}) {
    for (long long d = 2; d <= 6; ++d) {
      for (long long n = 3; n <= n_max; n += 2) {
        if (mod_floor(n, d) == d - 1) jobs.push_back({name, {{"d", d}, {"n", n}}});
      }
    }
  }
  for (const char* name : {"ss-0-2", "ss-0-5"}) {
    for (long long d = 1; d <= 5; ++d) {
      for (long long n = 2 * d + 1; n <= n_max; n += 2 * d) jobs.push_back({name, {{"d", d}, {"n", n}}});
    }
  }
  return jobs;
}

int run_identities(const Common& c, unsigned points, long long n_max) {
  VerifyOptions o = options_of(c);
  o.random_points = points;
  auto jobs = identity_jobs(n_max);
  auto reports = run_parallel(
      jobs.size(), [&](std::size_t i) { return verify_identity(jobs[i].first, jobs[i].second, o); }, thread_count(c));
  emit(c, reports);
  return status_of(reports);
}

std::vector<long long> primes_up_to(long long limit) {
  std::vector<long long> out;
  for (long long p = 2; p <= limit; ++p) {
    if (is_prime(static_cast<std::uint64_t>(p))) out.push_back(p);
  }
  return out;
}

int run_limits(const Common& c, bool van_hamme, bool quarter, bool thm13, std::optional<long long> p_max) {
  if (!van_hamme && !quarter && !thm13) van_hamme = quarter = thm13 = true;
  const VerifyOptions o = options_of(c);
  std::vector<std::function<VerificationReport()>> jobs;
  if (van_hamme) {
    for (long long p : primes_up_to(p_max.value_or(99))) {
      if (p > 2) jobs.push_back([p, o] { return verify_van_hamme(static_cast<std::uint64_t>(p), o); });
    }
  }
  if (quarter) {
    for (long long p : primes_up_to(p_max.value_or(199))) {
      if (p % 4 == 3) jobs.push_back([p, o] { return verify_quarter_corollary(static_cast<std::uint64_t>(p), o); });
    }
  }
  if (thm13) {
    for (int d = 2; d <= 4; ++d) {
      for (int s : {-1, 1}) {
        for (long long p : primes_up_to(p_max.value_or(149))) {
          if (mod_floor(p - s, 2 * d) == 0) {
            jobs.push_back([p, d, s, o] { return verify_thm13_limit(static_cast<std::uint64_t>(p), d, s, o); });
          }
        }
      }
    }
  }
  auto reports = run_parallel(jobs.size(), [&](std::size_t i) { return jobs[i](); }, thread_count(c));
  emit(c, reports);
  return status_of(reports);
}

int run_parse_check(const std::vector<std::string>& files, bool print) {
  int status = 0;
  for (const auto& path : files) {
    try {
      auto claims = dsl::load_file(path);
      std::cout << path << ": " << claims.size() << " claim(s)\n";
      for (const auto& c : claims) {
        // The pretty form must read back to the same tree.
        if (!(dsl::parse_claim({dsl::pretty(c), "<pretty>"}) == c)) {
          std::cerr << path << ": claim " << c.name << " does not survive a pretty-print round trip\n";
          status = kExitData;
        }
        if (print) std::cout << dsl::pretty(c);
      }
    } catch (const dsl::ParseError& e) {
      std::cerr << e.what() << "\n";
      status = kExitData;
    } catch (const std::runtime_error& e) {
      std::cerr << e.what() << "\n";
      status = kExitData;
    }
  }
  return status;
}

void add_common(CLI::App* cmd, Common& c, bool params) {
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"pretty", "json", "csv"}));
  cmd->add_option("--output,-o", c.output, "Write the reports to a file");
  cmd->add_option("--seed", c.seed, "Seed for random evaluation points");
  cmd->add_option("--threads", c.threads, "Worker threads (QCONGR_THREADS overrides)");
  cmd->add_flag("--timings", c.timings, "Record wall time per report");
  if (!params) return;
  cmd->add_option("--strategy", c.strategy, "clearing, pointeval or auto");
  cmd->add_option("--file", c.file, "Read the claim from a claim file");
  for (const char* p : {"d", "n", "s", "p", "N"}) {
    cmd->add_option(std::string("--") + p, c.ranges[p], std::string("Value or range of ") + p)
        ->allow_extra_args(false);
  }
  cmd->add_option("--set", c.sets, "Other parameters, name=value or name=lo..hi");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qcongr: exact verification of truncated q-series congruences and their p-adic limits"};
  app.require_subcommand(1);
  app.allow_windows_style_options(false);

  Common common;
  std::string claim_name;
  bool no_hypotheses = false;
  unsigned points = 200;
  long long n_max_ident = 49;
  bool van_hamme = false, quarter = false, thm13 = false;
  std::optional<long long> p_max_limits;
  std::vector<std::string> files;
  bool print = false;

  auto* verify_cmd = app.add_subcommand("verify", "Verify one claim instance");
  verify_cmd->add_option("claim", claim_name, "Claim name")->required();
  add_common(verify_cmd, common, true);
  verify_cmd->add_flag("--no-hypotheses", no_hypotheses, "Run even when the side conditions fail");
  verify_cmd->add_option("--points", points, "Random specializations for s-1 and s-2");

  auto* scan_cmd = app.add_subcommand("scan", "Verify a claim family over parameter ranges");
  scan_cmd->add_option("claim", claim_name, "Claim family")->required();
  add_common(scan_cmd, common, true);
  for (const char* p : {"d", "n", "s", "p"}) {
    scan_cmd->add_option(std::string("--") + p + "-max", common.maxima[p], std::string("Scan ") + p + " over 1..max");
  }

  auto* ident_cmd = app.add_subcommand("identities", "Classical summations and the quadratic transformation");
  add_common(ident_cmd, common, false);
  ident_cmd->add_option("--points", points, "Random specializations for s-1 and s-2");
  ident_cmd->add_option("--n-max", n_max_ident, "Largest n for the closed forms");

  auto* limits_cmd = app.add_subcommand("limits", "p-adic congruences modulo p or p^2");
  add_common(limits_cmd, common, false);
  limits_cmd->add_flag("--van-hamme", van_hamme, "Sum of (1/2)_k^3/k!^3");
  limits_cmd->add_flag("--quarter", quarter, "Sum of (-1/4)_k/k! for p = 3 mod 4");
  limits_cmd->add_flag("--thm13", thm13, "(s/d)_k/k! against (s/(2d))_k/k!");
  limits_cmd->add_option("--p-max", p_max_limits, "Largest prime to check");

  auto* parse_cmd = app.add_subcommand("parse-check", "Parse claim files and report diagnostics");
  parse_cmd->add_option("files", files, "Claim files")->required();
  parse_cmd->add_flag("--print", print, "Print the normalized claims");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  // Options left empty were not given.
  for (auto it = common.ranges.begin(); it != common.ranges.end();) {
    it = it->second.empty() ? common.ranges.erase(it) : std::next(it);
  }
  for (auto it = common.maxima.begin(); it != common.maxima.end();) {
    auto* opt = scan_cmd->get_option_no_throw("--" + it->first + "-max");
    it = (opt == nullptr || opt->count() == 0) ? common.maxima.erase(it) : std::next(it);
  }

  try {
    if (*verify_cmd) return run_verify(claim_name, common, no_hypotheses, points);
    if (*scan_cmd) return run_scan(claim_name, common);
    if (*ident_cmd) return run_identities(common, points, n_max_ident);
    if (*limits_cmd) return run_limits(common, van_hamme, quarter, thm13, p_max_limits);
    if (*parse_cmd) return run_parse_check(files, print);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const dsl::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitData;
  } catch (const dsl::IntegralityViolation& e) {
    std::cerr << "integrality violation: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
