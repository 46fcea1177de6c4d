#include "qcongr/report.hpp"

#include <sstream>

namespace qcongr {

std::string format_params(const std::map<std::string, long long>& params) {
  std::string out;
  for (const auto& [k, v] : params) {
    if (!out.empty()) out += ';';
    out += k + "=" + std::to_string(v);
  }
  return out;
}

nlohmann::ordered_json to_json(const VerificationReport& report) {
  nlohmann::ordered_json j;
  j["claim"] = report.claim;
  j["params"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : report.params) j["params"][k] = v;
  j["strategy"] = report.strategy;
  j["outcome"] = to_string(report.outcome);
  j["residue"] = report.residue ? nlohmann::ordered_json(*report.residue) : nlohmann::ordered_json(nullptr);
  j["detail"] = report.detail;
  j["millis"] = report.millis ? nlohmann::ordered_json(*report.millis) : nlohmann::ordered_json(nullptr);
  return j;
}

std::string to_json_lines(const std::vector<VerificationReport>& reports) {
  std::string out;
  for (const auto& r : reports) out += to_json(r).dump() + "\n";
  return out;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string format_millis(double ms) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(3);
  os << ms;
  return os.str();
}

}  // namespace

std::string to_csv(const std::vector<VerificationReport>& reports) {
  std::string out = "claim,params,strategy,outcome,residue,detail,millis\n";
  for (const auto& r : reports) {
    out += csv_field(r.claim) + "," + csv_field(format_params(r.params)) + "," + csv_field(r.strategy) + "," +
           to_string(r.outcome) + "," + csv_field(r.residue.value_or("")) + "," + csv_field(r.detail) + "," +
           (r.millis ? format_millis(*r.millis) : "") + "\n";
  }
  return out;
}

std::string to_pretty(const VerificationReport& report) {
  std::string params;
  for (const auto& [k, v] : report.params) params += " " + k + "=" + std::to_string(v);
  std::string out = to_string(report.outcome);
  out.resize(std::max<std::size_t>(out.size(), 16), ' ');
  out += report.claim + params + "  [" + report.strategy + "]";
  if (report.millis) out += "  " + format_millis(*report.millis) + " ms";
  out += "\n";
  if (!report.detail.empty()) out += "    " + report.detail + "\n";
  if (report.residue) {
    const std::string& r = *report.residue;
    if (r.size() > kPrettyResidueLimit) {
      out += "    residue: " + r.substr(0, kPrettyResidueLimit) + "...\n";
      out += "    (residue truncated from " + std::to_string(r.size()) + " characters; JSON output has it in full)\n";
    } else {
      out += "    residue: " + r + "\n";
    }
  }
  return out;
}

}  // namespace qcongr
