#pragma once

// Extended-phase-space analytical propagator in fictitious time.

#include <vector>

#include "j2lab/double_double.hpp"
#include "j2lab/dsvars.hpp"
#include "j2lab/elements.hpp"
#include "j2lab/lie.hpp"

namespace j2lab {

class ReferenceTrajectory;

struct TheoryOptions {
  int order = 1;                 // 1: m <= 2 secular terms, 2: m <= 3
  CorrectionOptions corrections;
  double newton_tol = 1e-12;     // seconds
  int newton_max_iter = 10;      // full-theory evaluations
};

struct MeanEpsState {
  double Phi = 0.0;
  double G = 0.0;
  double H = 0.0;
  double Lambda = 0.0;
  DoubleDouble lambda0;
  double theta0 = 0.0;
  double C0 = 0.0;
  double S0 = 0.0;
  double h0 = 0.0;
  double n_phi = 0.0;
  double n_g = 0.0;
  double n_h = 0.0;
  double n_lambda = 0.0;
  double t0 = 0.0;
  GravityModel model;
  TheoryOptions options;
};

struct Ephemeris {
  CartesianState state;
  DoubleDouble tau;
  DoubleDouble t;
  double dt_dtau = 0.0;
  int iterations = 0;
  std::vector<double> residuals;  // t(tau_k) - t_target per Newton evaluation
};

MeanEpsState initialize(const CartesianState& x0, const GravityModel& model, const TheoryOptions& options = {});

// Mean regular state at tau; lambda is returned separately in double-double.
RegularState propagate_mean(const MeanEpsState& m, double tau);
RegularState propagate_mean(const MeanEpsState& m, const DoubleDouble& tau, DoubleDouble* lambda);

Ephemeris osculating_at_tau(const MeanEpsState& m, const DoubleDouble& tau);
inline Ephemeris osculating_at_tau(const MeanEpsState& m, double tau) { return osculating_at_tau(m, DoubleDouble(tau)); }

// Newton-Raphson on t(tau) = t_target with dt/dtau = r^2/Gamma.
Ephemeris ephemeris_at_time(const MeanEpsState& m, const DoubleDouble& t_target);
inline Ephemeris ephemeris_at_time(const MeanEpsState& m, double t_target) {
  return ephemeris_at_time(m, DoubleDouble(t_target));
}

// Initial guess for the inversion from the mean-element time relation alone.
DoubleDouble initial_tau_guess(const MeanEpsState& m, const DoubleDouble& t_target);

// t_theory(tau) - t_reference(tau).
double timing_error(const MeanEpsState& m, const ReferenceTrajectory& reference, const DoubleDouble& tau);

}  // namespace j2lab
