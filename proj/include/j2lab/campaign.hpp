#pragma once

// Comparison campaign: every enabled theory against one numerical reference,
// sampled at common physical epochs.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "j2lab/config.hpp"
#include "j2lab/reference.hpp"
#include "j2lab/trend.hpp"

namespace j2lab {

// Sampling modes of an error series.
//   t      uniform physical time; EPS theories evaluated at the reference tau(t)
//   tau    uniform fictitious time; reference looked up by tau
//   newton uniform physical time; EPS theories evaluated at t by Newton inversion
inline constexpr const char* kSamplingT = "t";
inline constexpr const char* kSamplingTau = "tau";
inline constexpr const char* kSamplingNewton = "newton";

// Position errors in metres, timing error in seconds.
struct ErrorSeries {
  std::string theory;
  std::string sampling;
  std::vector<double> t;
  std::vector<double> tau;
  std::vector<double> radial;
  std::vector<double> along_track;
  std::vector<double> cross_track;
  std::vector<double> rss;
  std::vector<double> timing;         // eps theories only
  std::vector<int> iterations;        // newton sampling only
  std::vector<double> residual;       // newton sampling only, seconds

  bool has_timing() const { return !timing.empty(); }
};

struct SeriesFit {
  std::string theory;
  std::string sampling;
  std::string quantity;  // radial, along_track, cross_track, rss, timing
  std::string unit;      // m or s
  TrendFit fit;
};

struct NewtonSummary {
  int order = 0;
  std::size_t epochs = 0;
  int min_iterations = 0;
  int max_iterations = 0;
  double mean_iterations = 0.0;
  double max_abs_residual = 0.0;
  std::size_t failures = 0;
};

struct CampaignResult {
  CampaignConfig config;
  DriftDiagnostics drift;
  ReferenceStats reference_stats;
  std::vector<ErrorSeries> series;
  std::vector<SeriesFit> fits;
  std::vector<NewtonSummary> newton;
  std::vector<std::string> failures;
  std::vector<std::string> files;

  bool ok() const { return failures.empty(); }
  // Throws std::out_of_range when the combination was not run.
  const TrendFit& fit(const std::string& theory, const std::string& sampling, const std::string& quantity) const;
  const NewtonSummary& newton_for(int order) const;
};

std::string eps_theory_id(int order);
inline constexpr const char* kClassicCalibrated = "classic_calibrated";
inline constexpr const char* kClassicUncalibrated = "classic_uncalibrated";

CartesianState initial_state(const CampaignConfig& cfg);

// Builds the reference from the config and runs the campaign. When write_files
// is set, CSVs and summary.txt go to cfg.output_dir. Theory failures are
// recorded in the result rather than thrown.
CampaignResult run_campaign(const CampaignConfig& cfg, bool write_files = true, std::ostream* log = nullptr);

// Same, against an existing reference that must cover the configured horizon.
CampaignResult run_campaign(const CampaignConfig& cfg, const ReferenceTrajectory& reference, bool write_files,
                            std::ostream* log = nullptr);

void write_summary(const CampaignResult& result, std::ostream& os);

}  // namespace j2lab
