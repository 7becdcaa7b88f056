#pragma once

// Least-squares secular trend of an error series plus the size of what is
// left after removing it.

#include <cstddef>
#include <span>

#include "j2lab/errors.hpp"

namespace j2lab {

class TrendError : public Error {
 public:
  using Error::Error;
};

struct TrendFit {
  double slope_per_day = 0.0;
  double slope_stderr_per_day = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
  double amplitude = 0.0;   // half peak-to-peak of the detrended series
  std::size_t samples = 0;
};

inline constexpr std::size_t kTrendMinSamples = 100;
inline constexpr double kTrendMinCycles = 20.0;

// t in seconds, y in any unit; slope is reported per day. When
// dominant_period > 0 the series must span at least kTrendMinCycles of it.
TrendFit fit_secular_trend(std::span<const double> t, std::span<const double> y, double dominant_period = 0.0);

}  // namespace j2lab
