#include "syzygy/report_io.hpp"

#include <iomanip>
#include <set>
#include <sstream>
#include <stdexcept>

namespace syzygy {
namespace {

using nlohmann::ordered_json;

ordered_json row_to_json(const std::map<int, std::size_t>& row) {
  ordered_json out = ordered_json::object();
  for (const auto& [p, dim] : row) out[std::to_string(p)] = dim;
  return out;
}

std::map<int, std::size_t> row_from_json(const ordered_json& j) {
  std::map<int, std::size_t> out;
  for (const auto& [key, value] : j.items()) {
    std::size_t used = 0;
    const int p = std::stoi(key, &used);
    if (used != key.size()) throw std::invalid_argument("Betti key '" + key + "' is not an integer");
    out[p] = value.get<std::size_t>();
  }
  return out;
}

void require_keys(const ordered_json& j, const std::set<std::string>& required, const std::set<std::string>& optional,
                  const std::string& where) {
  if (!j.is_object()) throw std::invalid_argument(where + " must be an object");
  for (const auto& key : required)
    if (!j.contains(key)) throw std::invalid_argument(where + " is missing '" + key + "'");
  for (const auto& [key, value] : j.items())
    if (!required.count(key) && !optional.count(key)) throw std::invalid_argument(where + " has unknown key '" + key + "'");
}

std::string params_string(const VerificationReport& r) {
  std::string out;
  for (const auto& [name, value] : r.params) out += (out.empty() ? "" : " ") + name + "=" + std::to_string(value);
  return out;
}

}  // namespace

ordered_json report_to_json(const VerificationReport& r) {
  ordered_json j;
  j["theorem"] = r.theorem;
  j["params"] = ordered_json::object();
  for (const auto& [name, value] : r.params) j["params"][name] = value;
  j["prime"] = r.prime;
  j["seed"] = r.seed;
  j["h0"] = r.h0;
  j["threshold"] = r.threshold;
  j["betti_q1"] = row_to_json(r.betti_q1);
  j["informational"] = row_to_json(r.informational);
  if (!r.curve_q1.empty()) j["curve_q1"] = row_to_json(r.curve_q1);
  j["hypotheses"] = ordered_json::object();
  for (const auto& [name, ok] : r.hypotheses) j["hypotheses"][name] = ok;
  ordered_json checks;
  checks["independence"] = r.independence;
  checks["d1_injective"] = r.d1_injective;
  checks["d2_d1_zero"] = r.d2_d1_zero;
  checks["dims"] = ordered_json::object();
  for (const auto& [name, value] : r.dims) checks["dims"][name] = value;
  j["checks"] = checks;
  j["verdict"] = to_string(r.verdict);
  j["message"] = r.message;
  j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

VerificationReport report_from_json(const ordered_json& j) {
  require_keys(j,
               {"theorem", "params", "prime", "seed", "h0", "threshold", "betti_q1", "informational", "hypotheses",
                "checks", "verdict", "message", "elapsed_ms"},
               {"curve_q1"}, "report");
  require_keys(j.at("checks"), {"independence", "d1_injective", "d2_d1_zero", "dims"}, {}, "checks");
  VerificationReport r;
  r.theorem = j.at("theorem").get<std::string>();
  for (const auto& [name, value] : j.at("params").items()) r.params.push_back({name, value.get<long long>()});
  r.prime = j.at("prime").get<std::uint32_t>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.h0 = j.at("h0").get<long long>();
  r.threshold = j.at("threshold").get<int>();
  r.betti_q1 = row_from_json(j.at("betti_q1"));
  r.informational = row_from_json(j.at("informational"));
  if (j.contains("curve_q1")) r.curve_q1 = row_from_json(j.at("curve_q1"));
  for (const auto& [name, value] : j.at("hypotheses").items()) r.hypotheses.push_back({name, value.get<bool>()});
  const ordered_json& checks = j.at("checks");
  r.independence = checks.at("independence").get<bool>();
  r.d1_injective = checks.at("d1_injective").get<bool>();
  r.d2_d1_zero = checks.at("d2_d1_zero").get<bool>();
  for (const auto& [name, value] : checks.at("dims").items()) r.dims.push_back({name, value.get<long long>()});
  r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  r.message = j.at("message").get<std::string>();
  r.elapsed_ms = j.at("elapsed_ms").get<long long>();
  return r;
}

std::string render_json(const VerificationReport& report) { return report_to_json(report).dump(2) + "\n"; }

std::string render_json(const std::vector<VerificationReport>& reports) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : reports) arr.push_back(report_to_json(r));
  return arr.dump(2) + "\n";
}

std::string render_csv(const VerificationReport& report) {
  std::ostringstream out;
  std::map<int, std::size_t> rows = report.informational;
  rows.insert(report.betti_q1.begin(), report.betti_q1.end());
  out << "p,dim\n";
  for (const auto& [p, dim] : rows) out << p << "," << dim << "\n";
  return out.str();
}

std::string render_csv(const std::vector<VerificationReport>& reports) {
  std::ostringstream out;
  out << "index,theorem,params,prime,seed,p,dim,verdict\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const VerificationReport& r = reports[i];
    const std::string head = std::to_string(i) + "," + r.theorem + "," + params_string(r) + "," +
                             std::to_string(r.prime) + "," + std::to_string(r.seed) + ",";
    if (r.betti_q1.empty()) out << head << ",," << to_string(r.verdict) << "\n";
    for (const auto& [p, dim] : r.betti_q1) out << head << p << "," << dim << "," << to_string(r.verdict) << "\n";
  }
  return out.str();
}

std::string render_text(const VerificationReport& r) {
  std::ostringstream out;
  out << r.theorem << "  " << params_string(r) << "  prime=" << r.prime << " seed=" << r.seed << "\n";
  if (r.h0 > 0) out << "h0 = " << r.h0 << ", vanishing claimed for p >= " << r.threshold << "\n";
  std::map<int, std::pair<std::size_t, bool>> rows;  // p -> (dim, claimed)
  for (const auto& [p, dim] : r.informational) rows[p] = {dim, false};
  for (const auto& [p, dim] : r.betti_q1) rows[p] = {dim, true};
  if (!rows.empty()) {
    out << "     p  dim K_{p,1}" << (r.curve_q1.empty() ? "" : "  curve") << "\n";
    for (const auto& [p, entry] : rows) {
      out << std::setw(6) << p << "  " << std::setw(11) << entry.first;
      if (!r.curve_q1.empty()) {
        const auto it = r.curve_q1.find(p);
        out << "  " << std::setw(5) << (it == r.curve_q1.end() ? std::string("-") : std::to_string(it->second));
      }
      if (p == r.threshold) out << "  <- threshold";
      if (!entry.second) out << "  (informational)";
      out << "\n";
    }
  }
  for (const auto& [name, ok] : r.hypotheses) out << "hypothesis " << name << ": " << (ok ? "yes" : "NO") << "\n";
  if (r.h0 > 0) {
    out << "independence: " << (r.independence ? "yes" : "no") << ", d1 injective: " << (r.d1_injective ? "yes" : "no")
        << ", d2*d1 = 0: " << (r.d2_d1_zero ? "yes" : "no") << "\n";
    for (const auto& [name, value] : r.dims) out << "  " << name << " = " << value << "\n";
  }
  out << "verdict: " << to_string(r.verdict);
  if (!r.message.empty()) out << " (" << r.message << ")";
  out << "\nelapsed: " << r.elapsed_ms << " ms\n";
  return out.str();
}

std::string render_summary(const std::vector<VerificationReport>& reports) {
  std::ostringstream out;
  for (const auto& r : reports) {
    out << r.theorem << " " << params_string(r) << " prime=" << r.prime << " seed=" << r.seed << " -> "
        << to_string(r.verdict);
    if (!r.message.empty()) out << " (" << r.message << ")";
    out << "\n";
  }
  return out.str();
}

}  // namespace syzygy
