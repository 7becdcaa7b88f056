#pragma once

// Per-ephemeris cost of the three evaluation modes.

#include <iosfwd>

#include "j2lab/config.hpp"

namespace j2lab {

struct BenchReport {
  int epochs = 0;
  int eps_order = 1;
  double classic_at_t_us = 0.0;   // mean wall time per ephemeris, microseconds
  double eps_at_tau_us = 0.0;
  double eps_at_t_us = 0.0;
  double evaluation_ratio = 0.0;  // full EPS evaluations at t per evaluation at tau
  double mean_iterations = 0.0;
  int max_iterations = 0;
};

// Epochs are spread uniformly over the configured horizon. Uses the first
// configured EPS order, or order 1 when none is configured.
BenchReport benchmark_evaluation(const CampaignConfig& cfg);

void write_bench_report(const BenchReport& report, std::ostream& os);

}  // namespace j2lab
