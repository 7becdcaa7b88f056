#include "j2lab/eps_theory.hpp"

#include <cmath>

#include "j2lab/errors.hpp"
#include "j2lab/hamiltonians.hpp"
#include "j2lab/reference.hpp"

namespace j2lab {

namespace {

void check_options(const TheoryOptions& o) {
  if (o.order != 1 && o.order != 2) throw ConfigError("theory order must be 1 or 2");
  if (!(o.newton_tol > 0.0)) throw ConfigError("newton tolerance must be positive");
  if (o.newton_max_iter < 1) throw ConfigError("newton iteration cap must be at least 1");
}

RegularState mean_angles(const MeanEpsState& m, double tau) {
  RegularState reg;
  reg.theta = m.theta0 + (m.n_phi + m.n_g) * tau;
  const double angle = m.n_g * tau;
  const double ca = std::cos(angle), sa = std::sin(angle);
  reg.C = m.C0 * ca - m.S0 * sa;
  reg.S = m.C0 * sa + m.S0 * ca;
  reg.h = m.h0 + m.n_h * tau;
  reg.G = m.G;
  reg.H = m.H;
  reg.Lambda = m.Lambda;
  reg.chart = Chart::mean;
  return reg;
}

// Mean-element time relation t = lambda'' + Kepler offset, and its slope r^2/G.
double mean_time_residual(const MeanEpsState& m, const DoubleDouble& tau, const DoubleDouble& t_target,
                          double* slope) {
  DoubleDouble lambda;
  const RegularState reg = propagate_mean(m, tau, &lambda);
  const double ct = std::cos(reg.theta), st = std::sin(reg.theta);
  const double kc = reg.C * ct + reg.S * st;
  const double ks = reg.C * st - reg.S * ct;
  const double e2 = reg.C * reg.C + reg.S * reg.S;
  const double p = m.model.mu * (1.0 - e2) / (2.0 * m.Lambda);
  const double r = p / (1.0 + kc);
  *slope = r * r / m.G * (m.n_phi + m.n_g);
  const DoubleDouble t = lambda + time_offset(kc, ks, m.Lambda, m.model);
  return to_double(t - t_target);
}

}  // namespace

MeanEpsState initialize(const CartesianState& x0, const GravityModel& model, const TheoryOptions& options) {
  model.validate();
  check_options(options);
  const double Q = -main_problem_energy(x0, model);
  if (!(Q > 0.0)) throw ChartError("initialize: orbit is not bound");
  const DSState ds = polar_to_ds(cartesian_to_polar(x0), Q, model);

  RegularState reg = nonsingular_of(ds, model);
  const DoubleDouble lambda_osc(ds.lambda);
  reg.lambda = 0.0;
  const MapResult prime =
      apply_map(reg, PeriodKind::short_period, Direction::inverse, options.order, model, options.corrections);
  const MapResult mean = apply_map(prime.state, PeriodKind::long_period, Direction::inverse, options.order, model,
                                   options.corrections);

  MeanEpsState m;
  m.model = model;
  m.options = options;
  m.t0 = x0.t;
  m.lambda0 = lambda_osc + mean.state.lambda;
  m.theta0 = mean.state.theta;
  m.C0 = mean.state.C;
  m.S0 = mean.state.S;
  m.h0 = mean.state.h;
  m.G = mean.state.G;
  m.H = mean.state.H;
  m.Lambda = mean.state.Lambda;

  const DSState mean_ds = ds_from_regular(mean.state, model);
  m.Phi = mean_ds.Phi;
  const Jet1 F = secular_hamiltonian(seed<Jet1>(mean_ds, model), options.order == 1 ? 2 : 3);
  m.n_phi = F.g[4];
  m.n_g = F.g[5];
  m.n_h = F.g[6];
  m.n_lambda = F.g[7];
  return m;
}

RegularState propagate_mean(const MeanEpsState& m, double tau) {
  RegularState reg = mean_angles(m, tau);
  reg.lambda = to_double(m.lambda0 + DoubleDouble(m.n_lambda) * tau);
  return reg;
}

RegularState propagate_mean(const MeanEpsState& m, const DoubleDouble& tau, DoubleDouble* lambda) {
  RegularState reg = mean_angles(m, to_double(tau));
  const DoubleDouble l = m.lambda0 + DoubleDouble(m.n_lambda) * tau;
  reg.lambda = to_double(l);
  if (lambda) *lambda = l;
  return reg;
}

Ephemeris osculating_at_tau(const MeanEpsState& m, const DoubleDouble& tau) {
  DoubleDouble lambda;
  RegularState reg = propagate_mean(m, tau, &lambda);
  // The secular part of lambda is carried in double-double; the maps only
  // contribute increments.
  reg.lambda = 0.0;
  const int order = m.options.order;
  const MapResult prime =
      apply_map(reg, PeriodKind::long_period, Direction::direct, order, m.model, m.options.corrections);
  const MapResult osc =
      apply_map(prime.state, PeriodKind::short_period, Direction::direct, order, m.model, m.options.corrections);
  PolarState polar = regular_to_polar(osc.state, m.model);

  Ephemeris eph;
  eph.tau = tau;
  eph.t = lambda + polar.t;
  polar.t = to_double(eph.t);
  eph.state = polar_to_cartesian(polar);
  eph.dt_dtau = polar.r * polar.r / gamma_polar(polar, m.model);
  eph.iterations = 1;
  return eph;
}

DoubleDouble initial_tau_guess(const MeanEpsState& m, const DoubleDouble& t_target) {
  DoubleDouble tau = (t_target - m.lambda0) / m.n_lambda;
  for (int k = 0; k < 20; ++k) {
    double slope = 0.0;
    const double res = mean_time_residual(m, tau, t_target, &slope);
    tau -= DoubleDouble(res / slope);
    if (std::abs(res) < 1e-9) break;
  }
  return tau;
}

Ephemeris ephemeris_at_time(const MeanEpsState& m, const DoubleDouble& t_target) {
  DoubleDouble tau = initial_tau_guess(m, t_target);
  std::vector<double> residuals;
  for (int k = 1; k <= m.options.newton_max_iter; ++k) {
    Ephemeris eph = osculating_at_tau(m, tau);
    const double res = to_double(eph.t - t_target);
    residuals.push_back(res);
    if (std::abs(res) < m.options.newton_tol) {
      eph.iterations = k;
      eph.residuals = std::move(residuals);
      return eph;
    }
    tau -= DoubleDouble(res / eph.dt_dtau);
  }
  throw ConvergenceError("ephemeris_at_time: Newton iteration did not reach the time tolerance");
}

double timing_error(const MeanEpsState& m, const ReferenceTrajectory& reference, const DoubleDouble& tau) {
  const Ephemeris eph = osculating_at_tau(m, tau);
  const ReferenceSample ref = state_at_tau(reference, tau);
  return to_double(eph.t - ref.t);
}

}  // namespace j2lab
