#pragma once

#include <optional>
#include <string>

#include "qcongr/claims.hpp"

namespace qcongr::engine {

struct CheckResult {
  Outcome outcome = Outcome::Pass;
  std::string strategy;
  std::optional<std::string> residue;
  std::string detail;
};

// lhs == rhs modulo Phi_n(q)^m with symbolic variables.
CheckResult check_phi(const SeriesSpec& lhs, const SeriesSpec& rhs, unsigned n, unsigned m, Strategy strategy,
                      const VerifyOptions& options);

// lhs == rhs as rational functions in q and the variables.
CheckResult check_exact(const SeriesSpec& lhs, const SeriesSpec& rhs);

// lhs == rhs at `points` random rational assignments of q and the variables.
CheckResult check_grid(const SeriesSpec& lhs, const SeriesSpec& rhs, unsigned points, std::uint64_t seed);

// Deterministic permutation of [0, count) from a seed.
std::vector<std::size_t> shuffled_indices(std::size_t count, std::uint64_t seed);

}  // namespace qcongr::engine
