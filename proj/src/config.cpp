#include "j2lab/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "j2lab/csv.hpp"
#include "j2lab/errors.hpp"

namespace j2lab {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw ConfigError("config: '" + key + "' expects a number, got '" + text + "'");
  }
  return value;
}

int parse_int(const std::string& key, const std::string& text) {
  int value = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ConfigError("config: '" + key + "' expects an integer, got '" + text + "'");
  }
  return value;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "on" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "off" || text == "no") return false;
  throw ConfigError("config: '" + key + "' expects true/false, got '" + text + "'");
}

std::vector<int> parse_orders(const std::string& key, const std::string& text) {
  std::vector<int> out;
  if (text == "none" || text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_int(key, trim(item)));
  return out;
}

using Setter = std::function<void(CampaignConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"a_km", [](auto& c, auto& k, auto& v) { c.elements.a = parse_double(k, v); }},
      {"e", [](auto& c, auto& k, auto& v) { c.elements.e = parse_double(k, v); }},
      {"inclination_deg", [](auto& c, auto& k, auto& v) { c.elements.I = parse_double(k, v) * kDeg; }},
      {"raan_deg", [](auto& c, auto& k, auto& v) { c.elements.raan = parse_double(k, v) * kDeg; }},
      {"argp_deg", [](auto& c, auto& k, auto& v) { c.elements.argp = parse_double(k, v) * kDeg; }},
      {"mean_anomaly_deg", [](auto& c, auto& k, auto& v) { c.elements.M = parse_double(k, v) * kDeg; }},
      {"mu", [](auto& c, auto& k, auto& v) { c.model.mu = parse_double(k, v); }},
      {"re", [](auto& c, auto& k, auto& v) { c.model.re = parse_double(k, v); }},
      {"j2", [](auto& c, auto& k, auto& v) { c.model.j2 = parse_double(k, v); }},
      {"horizon_days", [](auto& c, auto& k, auto& v) { c.horizon_days = parse_double(k, v); }},
      {"cadence_s", [](auto& c, auto& k, auto& v) { c.cadence = parse_double(k, v); }},
      {"eps_orders", [](auto& c, auto& k, auto& v) { c.eps_orders = parse_orders(k, v); }},
      {"classic_calibrated", [](auto& c, auto& k, auto& v) { c.classic_calibrated = parse_bool(k, v); }},
      {"classic_uncalibrated", [](auto& c, auto& k, auto& v) { c.classic_uncalibrated = parse_bool(k, v); }},
      {"drop_hidden", [](auto& c, auto& k, auto& v) { c.drop_hidden = parse_bool(k, v); }},
      {"newton_tol_s", [](auto& c, auto& k, auto& v) { c.newton_tol = parse_double(k, v); }},
      {"newton_max_iter", [](auto& c, auto& k, auto& v) { c.newton_max_iter = parse_int(k, v); }},
      {"reference_tol", [](auto& c, auto& k, auto& v) { c.reference_tol = parse_double(k, v); }},
      {"reference_precision",
       [](auto& c, auto& k, auto& v) {
         if (v == "double") {
           c.reference_precision = Precision::double_precision;
         } else if (v == "double_double") {
           c.reference_precision = Precision::double_double;
         } else {
           throw ConfigError("config: '" + k + "' must be double or double_double, got '" + v + "'");
         }
       }},
      {"write_reference", [](auto& c, auto& k, auto& v) { c.write_reference = parse_bool(k, v); }},
      {"bench_epochs", [](auto& c, auto& k, auto& v) { c.bench_epochs = parse_int(k, v); }},
      {"output_dir", [](auto& c, auto&, auto& v) { c.output_dir = v; }},
  };
  return table;
}

}  // namespace

ClassicalElements CampaignConfig::default_elements() {
  return {6878.14, 0.001, 97.42 * kDeg, 168.2 * kDeg, 20.0 * kDeg, 30.0 * kDeg};
}

void CampaignConfig::validate() const {
  try {
    model.validate();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  if (!(elements.a > 0.0)) throw ConfigError("config: a_km must be positive");
  if (!(elements.e >= 0.0 && elements.e < 1.0)) throw ConfigError("config: e must be in [0, 1)");
  if (!(elements.a * (1.0 - elements.e) > model.re)) throw ConfigError("config: perigee is below the reference radius");
  if (!(horizon_days > 0.0)) throw ConfigError("config: horizon_days must be positive");
  if (!(cadence > 0.0)) throw ConfigError("config: cadence_s must be positive");
  if (cadence > horizon_seconds()) throw ConfigError("config: cadence_s exceeds the horizon");
  for (int order : eps_orders) {
    if (order != 1 && order != 2) throw ConfigError("config: eps_orders entries must be 1 or 2");
  }
  if (!(newton_tol > 0.0)) throw ConfigError("config: newton_tol_s must be positive");
  if (newton_max_iter < 1) throw ConfigError("config: newton_max_iter must be at least 1");
  if (!(reference_tol > 0.0)) throw ConfigError("config: reference_tol must be positive");
  if (bench_epochs < 1) throw ConfigError("config: bench_epochs must be at least 1");
  if (output_dir.empty()) throw ConfigError("config: output_dir is empty");
}

void apply_setting(CampaignConfig& cfg, const std::string& key, const std::string& value) {
  const auto it = setters().find(key);
  if (it == setters().end()) throw ConfigError("config: unknown key '" + key + "'");
  it->second(cfg, key, value);
}

void apply_assignment(CampaignConfig& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("config: expected key=value, got '" + assignment + "'");
  apply_setting(cfg, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

CampaignConfig parse_config(std::istream& in, const std::string& source_name) {
  CampaignConfig cfg;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    try {
      apply_assignment(cfg, line);
    } catch (const ConfigError& e) {
      throw ConfigError(source_name + ":" + std::to_string(number) + ": " + e.what());
    }
  }
  return cfg;
}

CampaignConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path.string() + "'");
  return parse_config(in, path.string());
}

void apply_environment(CampaignConfig& cfg) {
  const char* dir = std::getenv(kOutputDirEnv);
  if (dir && *dir) cfg.output_dir = dir;
}

void write_config(const CampaignConfig& cfg, std::ostream& os) {
  auto num = [](double x) { return format_number(x); };
  auto flag = [](bool b) { return b ? "true" : "false"; };
  std::string orders;
  for (std::size_t i = 0; i < cfg.eps_orders.size(); ++i) {
    if (i) orders += ",";
    orders += std::to_string(cfg.eps_orders[i]);
  }
  if (orders.empty()) orders = "none";
  os << "a_km=" << num(cfg.elements.a) << "\n"
     << "e=" << num(cfg.elements.e) << "\n"
     << "inclination_deg=" << num(cfg.elements.I / kDeg) << "\n"
     << "raan_deg=" << num(cfg.elements.raan / kDeg) << "\n"
     << "argp_deg=" << num(cfg.elements.argp / kDeg) << "\n"
     << "mean_anomaly_deg=" << num(cfg.elements.M / kDeg) << "\n"
     << "mu=" << num(cfg.model.mu) << "\n"
     << "re=" << num(cfg.model.re) << "\n"
     << "j2=" << num(cfg.model.j2) << "\n"
     << "horizon_days=" << num(cfg.horizon_days) << "\n"
     << "cadence_s=" << num(cfg.cadence) << "\n"
     << "eps_orders=" << orders << "\n"
     << "classic_calibrated=" << flag(cfg.classic_calibrated) << "\n"
     << "classic_uncalibrated=" << flag(cfg.classic_uncalibrated) << "\n"
     << "drop_hidden=" << flag(cfg.drop_hidden) << "\n"
     << "newton_tol_s=" << num(cfg.newton_tol) << "\n"
     << "newton_max_iter=" << cfg.newton_max_iter << "\n"
     << "reference_tol=" << num(cfg.reference_tol) << "\n"
     << "reference_precision="
     << (cfg.reference_precision == Precision::double_double ? "double_double" : "double") << "\n"
     << "write_reference=" << flag(cfg.write_reference) << "\n"
     << "bench_epochs=" << cfg.bench_epochs << "\n"
     << "output_dir=" << cfg.output_dir.string() << "\n";
}

}  // namespace j2lab
