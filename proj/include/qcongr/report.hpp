#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "qcongr/claims.hpp"

namespace qcongr {

// "d=2;n=5"
std::string format_params(const std::map<std::string, long long>& params);

nlohmann::ordered_json to_json(const VerificationReport& report);
// One JSON object per line.
std::string to_json_lines(const std::vector<VerificationReport>& reports);
std::string to_csv(const std::vector<VerificationReport>& reports);

constexpr std::size_t kPrettyResidueLimit = 120;
std::string to_pretty(const VerificationReport& report);

}  // namespace qcongr
