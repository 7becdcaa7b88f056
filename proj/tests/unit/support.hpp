#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "j2lab/dsvars.hpp"
#include "j2lab/elements.hpp"
#include "j2lab/errors.hpp"

namespace j2lab::testing {

inline constexpr double kDeg = std::numbers::pi / 180.0;

inline ClassicalElements prisma_elements() {
  return {6878.14, 0.001, 97.42 * kDeg, 168.2 * kDeg, 20.0 * kDeg, 30.0 * kDeg};
}

inline CartesianState prisma_state(const GravityModel& model = {}) {
  return classical_to_cartesian(prisma_elements(), model);
}

inline DSState ds_of(const CartesianState& x, const GravityModel& model) {
  return polar_to_ds(cartesian_to_polar(x), -main_problem_energy(x, model), model);
}

inline DSState prisma_ds(const GravityModel& model = {}) { return ds_of(prisma_state(model), model); }

// Bound LEO-to-MEO states away from the critical inclinations.
inline ClassicalElements random_elements(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> a(6900.0, 12000.0), e(0.002, 0.15), angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> inc_low(10.0, 50.0), inc_high(75.0, 105.0), pick(0.0, 1.0);
  const double inc = pick(rng) < 0.5 ? inc_low(rng) : inc_high(rng);
  return {a(rng), e(rng), inc * kDeg, angle(rng), angle(rng), angle(rng)};
}

}  // namespace j2lab::testing

namespace j2lab::testing {

// DS point on the Kepler manifold (Gamma = G), where delta = upsilon = 0 and
// e, s^2 are exactly the requested values.
inline DSState kepler_point(double a, double e, double s2, double g, double phi, const GravityModel& model = {}) {
  DSState ds;
  const double L = std::sqrt(model.mu * a);
  ds.G = L * std::sqrt(1.0 - e * e);
  ds.H = ds.G * std::sqrt(1.0 - s2);
  ds.Lambda = model.mu / (2.0 * a);
  ds.Phi = model.mu / std::sqrt(2.0 * ds.Lambda);
  ds.g = g;
  ds.phi = phi;
  ds.h = 0.3;
  ds.lambda = 100.0;
  return ds;
}

}  // namespace j2lab::testing
