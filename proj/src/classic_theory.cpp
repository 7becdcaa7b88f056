#include "j2lab/classic_theory.hpp"

#include <algorithm>
#include <cmath>

#include "j2lab/lie.hpp"

namespace j2lab {

namespace {

struct ClassicRegular {
  double lg, C, S, h, L, G, H;
};

ClassicRegular classic_map(const ClassicRegular& reg, PeriodKind kind, Direction direction, const GravityModel& model) {
  if (model.j2 == 0.0) return reg;
  const double g = std::atan2(reg.S, reg.C);
  const double l = reg.lg - g;
  const DelaunayPoint<Jet2> pt = seed_delaunay<Jet2>(l, g, reg.h, reg.L, reg.G, reg.H, model);

  GeneratorSet gen;
  gen.order = 1;
  gen.first = kind == PeriodKind::short_period ? brouwer_w1(pt) : brouwer_v1(pt);
  gen.nested_source = gen.first;

  const Jet2 eta = pt.G / pt.L;
  const Jet2 e = sqrt(1.0 - eta * eta);
  auto increment = [&](const Jet2& u) { return lie_increment(lie_terms(u, gen), model.j2, 1, direction); };

  ClassicRegular out = reg;
  out.lg += increment(pt.l + pt.g);
  out.C += increment(e * cos(pt.g));
  out.S += increment(e * sin(pt.g));
  out.h += increment(pt.h);
  out.L += increment(pt.L);
  out.G += increment(pt.G);
  return out;
}

EnergyCalibration calibrate_mean_axis(ClassicRegular& reg, double energy, const GravityModel& model) {
  EnergyCalibration cal;
  cal.energy = energy;
  cal.a_uncalibrated = reg.L * reg.L / model.mu;
  const double eta = reg.G / reg.L;
  const double g = std::atan2(reg.S, reg.C);
  double L = reg.L;
  for (int it = 1; it <= 50; ++it) {
    DelaunayPoint<Jet1> pt{Jet1(reg.lg - g), Jet1(g), Jet1(reg.h), Jet1::variable(L, 4), Jet1(0.0), Jet1(reg.H), model};
    pt.G = eta * pt.L;
    const Jet1 value = classic_secular_hamiltonian(pt);
    const double res = value.v - energy;
    cal.iterations = it;
    cal.residual = res;
    if (std::abs(res) <= 1e-14 * std::abs(energy)) break;
    L -= res / value.g[4];
    if (it == 50) throw ConvergenceError("classic calibration: energy equation did not converge");
  }
  reg.L = L;
  reg.G = eta * L;
  cal.a_calibrated = L * L / model.mu;
  return cal;
}

ClassicalElements to_elements(const ClassicRegular& reg, const GravityModel& model) {
  ClassicalElements coe;
  coe.a = reg.L * reg.L / model.mu;
  coe.e = std::hypot(reg.C, reg.S);
  coe.I = std::acos(std::clamp(reg.H / reg.G, -1.0, 1.0));
  coe.raan = reg.h;
  coe.argp = coe.e > 0.0 ? std::atan2(reg.S, reg.C) : 0.0;
  coe.M = reg.lg - coe.argp;
  return coe;
}

}  // namespace

ClassicalElements MeanClassicState::mean_elements() const {
  ClassicalElements coe = to_elements({lg0, C0, S0, h0, L, G, H}, model);
  coe.raan = wrap_angle(coe.raan);
  coe.M = wrap_angle(coe.M);
  return coe;
}

MeanClassicState initialize_classic(const CartesianState& x0, const GravityModel& model, bool calibrate) {
  model.validate();
  const double energy = main_problem_energy(x0, model);
  const ClassicalElements coe = cartesian_to_classical(x0, model);
  const PolarState polar = cartesian_to_polar(x0);

  ClassicRegular reg;
  reg.lg = coe.M + coe.argp;
  reg.C = coe.e * std::cos(coe.argp);
  reg.S = coe.e * std::sin(coe.argp);
  reg.h = coe.raan;
  reg.L = std::sqrt(model.mu * coe.a);
  reg.G = polar.Theta;
  reg.H = polar.N;

  reg = classic_map(reg, PeriodKind::short_period, Direction::inverse, model);
  reg = classic_map(reg, PeriodKind::long_period, Direction::inverse, model);

  MeanClassicState m;
  m.model = model;
  m.t0 = x0.t;
  m.calibrated = calibrate;
  if (calibrate) {
    m.calibration = calibrate_mean_axis(reg, energy, model);
  } else {
    m.calibration.energy = energy;
    m.calibration.a_uncalibrated = m.calibration.a_calibrated = reg.L * reg.L / model.mu;
  }
  m.lg0 = reg.lg;
  m.C0 = reg.C;
  m.S0 = reg.S;
  m.h0 = reg.h;
  m.L = reg.L;
  m.G = reg.G;
  m.H = reg.H;

  const double g = std::atan2(reg.S, reg.C);
  const Jet1 hbar = classic_secular_hamiltonian(seed_delaunay<Jet1>(reg.lg - g, g, reg.h, reg.L, reg.G, reg.H, model));
  if (!calibrate) m.calibration.residual = hbar.v - energy;
  m.n_l = hbar.g[4];
  m.n_g = hbar.g[5];
  m.n_h = hbar.g[6];
  return m;
}

CartesianState propagate_classic(const MeanClassicState& m, double t) {
  const double dt = t - m.t0;
  const double angle = m.n_g * dt;
  const double ca = std::cos(angle), sa = std::sin(angle);
  ClassicRegular reg;
  reg.lg = m.lg0 + (m.n_l + m.n_g) * dt;
  reg.C = m.C0 * ca - m.S0 * sa;
  reg.S = m.C0 * sa + m.S0 * ca;
  reg.h = m.h0 + m.n_h * dt;
  reg.L = m.L;
  reg.G = m.G;
  reg.H = m.H;
  reg = classic_map(reg, PeriodKind::long_period, Direction::direct, m.model);
  reg = classic_map(reg, PeriodKind::short_period, Direction::direct, m.model);
  return classical_to_cartesian(to_elements(reg, m.model), m.model, t);
}

}  // namespace j2lab
