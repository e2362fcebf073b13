#include "bregman/io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "bregman/errors.hpp"

namespace bregman {

namespace {

std::string format_value(double v) {
  if (is_inf(v)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_value(std::string tok) {
  size_t a = tok.find_first_not_of(" \t\r");
  size_t b = tok.find_last_not_of(" \t\r");
  if (a == std::string::npos) throw ImproperFunction("empty CSV field");
  tok = tok.substr(a, b - a + 1);
  std::string lower;
  for (char c : tok) lower.push_back(static_cast<char>(std::tolower(c)));
  if (lower == "inf" || lower == "+inf" || lower == "infinity") return kInf;
  return std::stod(tok);
}

nlohmann::json value_json(double v) {
  if (is_inf(v)) return "inf";
  return v;
}

}  // namespace

std::string to_csv(const SampledFunction& f) {
  std::ostringstream os;
  os << "x,value\n";
  for (Eigen::Index i = 0; i < f.size(); ++i)
    os << format_value(f.x(i)) << "," << format_value(f.value(i)) << "\n";
  return os.str();
}

SampledFunction from_csv(std::istream& in, const std::string& label) {
  std::string line;
  std::vector<double> xs, vs;
  bool header_skipped = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    size_t comma = line.find(',');
    if (comma == std::string::npos) throw ImproperFunction("CSV needs x,value");
    if (!header_skipped) {
      header_skipped = true;
      if (line.substr(0, comma) == "x") continue;  // header row
    }
    xs.push_back(parse_value(line.substr(0, comma)));
    vs.push_back(parse_value(line.substr(comma + 1)));
  }
  Grid1D grid(Eigen::Map<Eigen::ArrayXd>(xs.data(), static_cast<Eigen::Index>(xs.size())));
  return SampledFunction(
      grid, Eigen::Map<Eigen::ArrayXd>(vs.data(), static_cast<Eigen::Index>(vs.size())),
      label);
}

SampledFunction load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return from_csv(in, path);
}

void save_csv(const SampledFunction& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << to_csv(f);
}

std::string to_json(const SampledFunction& f) {
  nlohmann::json j;
  j["label"] = f.label();
  auto& xs = j["x"] = nlohmann::json::array();
  auto& vs = j["value"] = nlohmann::json::array();
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    xs.push_back(f.x(i));
    vs.push_back(value_json(f.value(i)));
  }
  return j.dump();
}

std::string to_json(const ProxSet& set) {
  nlohmann::json j;
  j["y"] = set.base_point;
  j["lambda"] = set.lambda;
  j["min_value"] = set.min_value;
  auto& iv = j["intervals"] = nlohmann::json::array();
  for (const auto& [a, b] : set.minimizers) iv.push_back({a, b});
  return j.dump();
}

std::string to_json(const ThresholdEstimate& est) {
  nlohmann::json j;
  j["lower_certified"] = value_json(est.lower_certified);
  j["upper_witness"] = value_json(est.upper_witness);
  j["grid_caveat"] = est.grid_caveat;
  return j.dump();
}

namespace {

nlohmann::json report_json(const VerificationReport& r) {
  nlohmann::json j;
  j["identity"] = r.identity;
  j["sup_error"] = value_json(r.sup_error);
  j["witness_x"] = r.witness_x;
  j["tolerance"] = r.tolerance;
  j["pass"] = r.pass;
  j["metadata"] = r.metadata;
  return j;
}

}  // namespace

std::string to_json(const VerificationReport& report) {
  return report_json(report).dump();
}

std::string to_json(const std::vector<VerificationReport>& reports) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : reports) j.push_back(report_json(r));
  return j.dump(2);
}

}  // namespace bregman
