#pragma once

// Flat key=value campaign configuration. Angles are given in degrees in the
// file and stored in radians.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "j2lab/elements.hpp"
#include "j2lab/reference.hpp"

namespace j2lab {

struct CampaignConfig {
  ClassicalElements elements = default_elements();
  GravityModel model;
  double horizon_days = 10.0;
  double cadence = 60.0;             // seconds between samples
  std::vector<int> eps_orders{1, 2};
  bool classic_calibrated = true;
  bool classic_uncalibrated = true;
  bool drop_hidden = false;
  double newton_tol = 1e-12;         // seconds
  int newton_max_iter = 10;
  double reference_tol = 1e-13;
  Precision reference_precision = Precision::double_precision;
  bool write_reference = true;
  int bench_epochs = 2000;
  std::filesystem::path output_dir = "j2lab_out";

  static ClassicalElements default_elements();
  double horizon_seconds() const { return horizon_days * 86400.0; }
  void validate() const;
};

inline constexpr const char* kOutputDirEnv = "J2LAB_OUTPUT_DIR";

// Applies "key=value" to cfg. Throws ConfigError for unknown keys or bad values.
void apply_setting(CampaignConfig& cfg, const std::string& key, const std::string& value);
void apply_assignment(CampaignConfig& cfg, const std::string& assignment);

// '#' starts a comment; blank lines are ignored. Does not validate.
CampaignConfig parse_config(std::istream& in, const std::string& source_name = "<stream>");
CampaignConfig load_config(const std::filesystem::path& path);

// Replaces output_dir when J2LAB_OUTPUT_DIR is set and non-empty.
void apply_environment(CampaignConfig& cfg);

// Writes a file that parse_config reads back to the same configuration.
void write_config(const CampaignConfig& cfg, std::ostream& os);

}  // namespace j2lab
