#include "j2lab/trend.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

namespace j2lab {

TrendFit fit_secular_trend(std::span<const double> t, std::span<const double> y, double dominant_period) {
  if (t.size() != y.size()) throw TrendError("fit_secular_trend: t and y differ in length");
  const std::size_t n = t.size();
  if (n < kTrendMinSamples) {
    throw TrendError("fit_secular_trend: " + std::to_string(n) + " samples, need at least " +
                     std::to_string(kTrendMinSamples));
  }
  const auto [t_lo, t_hi] = std::minmax_element(t.begin(), t.end());
  const double span = *t_hi - *t_lo;
  if (dominant_period > 0.0 && span < kTrendMinCycles * dominant_period) {
    throw TrendError("fit_secular_trend: series spans fewer than 20 periodic cycles");
  }
  if (!(span > 0.0)) throw TrendError("fit_secular_trend: zero time span");

  // Days, centred, so the normal equations stay well conditioned.
  const double t_mid = 0.5 * (*t_lo + *t_hi);
  Eigen::MatrixX2d A(n, 2);
  Eigen::VectorXd b(n);
  for (std::size_t i = 0; i < n; ++i) {
    A(i, 0) = 1.0;
    A(i, 1) = (t[i] - t_mid) / 86400.0;
    b(i) = y[i];
  }
  const Eigen::Vector2d x = A.colPivHouseholderQr().solve(b);
  const Eigen::VectorXd r = b - A * x;

  TrendFit fit;
  fit.samples = n;
  fit.slope_per_day = x(1);
  fit.intercept = x(0) - x(1) * t_mid / 86400.0;
  fit.residual_rms = std::sqrt(r.squaredNorm() / static_cast<double>(n));
  fit.amplitude = 0.5 * (r.maxCoeff() - r.minCoeff());
  const double dof = static_cast<double>(n) - 2.0;
  const double sigma2 = r.squaredNorm() / dof;
  const double sxx = (A.col(1).array() - A.col(1).mean()).square().sum();
  fit.slope_stderr_per_day = std::sqrt(sigma2 / sxx);
  return fit;
}

}  // namespace j2lab
