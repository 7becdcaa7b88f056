#include "j2lab/dsvars.hpp"

#include <algorithm>
#include <cmath>

#include "j2lab/errors.hpp"

namespace j2lab {

namespace {

double kepler_momentum(double Lambda, const GravityModel& model) { return model.mu / std::sqrt(2.0 * Lambda); }

}  // namespace

double gamma_polar(const PolarState& p, const GravityModel& model) {
  const double ci = p.N / p.Theta;
  const double s = std::sqrt(std::max(0.0, 1.0 - ci * ci));
  const double radicand = 1.0 + 2.0 * model.j2 * (model.mu / p.r) * (model.re * model.re / (p.Theta * p.Theta)) *
                                    legendre_p2(s * std::sin(p.theta));
  if (!(radicand > 0.0)) throw ChartError("gamma_polar: negative radicand");
  return 0.5 * p.Theta * (1.0 + std::sqrt(radicand));
}

double gamma_ds(const DSState& ds, const GravityModel& model) {
  return ds.G - 0.5 * (ds.Phi - kepler_momentum(ds.Lambda, model));
}

double time_offset(double ecos_phi, double esin_phi, double Lambda, const GravityModel& model) {
  const double e2 = ecos_phi * ecos_phi + esin_phi * esin_phi;
  const double eta = std::sqrt(std::max(0.0, 1.0 - e2));
  const double u_minus_phi = -2.0 * std::atan2(esin_phi, 1.0 + eta + ecos_phi);
  const double esin_u = eta * esin_phi / (1.0 + ecos_phi);
  return model.mu / std::pow(2.0 * Lambda, 1.5) * (u_minus_phi - esin_u);
}

double eccentric_anomaly_ds(double phi, double e) {
  const double eta = std::sqrt(std::max(0.0, 1.0 - e * e));
  const double beta = e / (1.0 + eta);
  return phi - 2.0 * std::atan2(beta * std::sin(phi), 1.0 + beta * std::cos(phi));
}

AuxValues aux_values(const DSState& ds, const GravityModel& model) {
  const AuxSet<double> a = auxiliary(seed<double>(ds, model));
  if (a.e2 < -1e-12) throw ChartError("DS chart: negative eccentricity squared");
  AuxValues out;
  out.Gamma = a.Gamma;
  out.rho = a.rho;
  out.p = a.p;
  out.e = std::sqrt(std::max(0.0, a.e2));
  out.s = std::sqrt(std::max(0.0, a.s2));
  out.c = ds.H / ds.G;
  out.delta = a.delta;
  out.upsilon = a.upsilon;
  out.Delta = a.Delta;
  out.u = eccentric_anomaly_ds(ds.phi, out.e);
  return out;
}

DSState polar_to_ds(const PolarState& p, double Q, const GravityModel& model) {
  if (!(Q > 0.0)) throw ChartError("polar_to_ds: total-energy momentum must be positive");
  const double Gamma = gamma_polar(p, model);
  const double w = 2.0 * Gamma - p.Theta;
  const double semilatus = w * w / model.mu;
  const double e2 = 1.0 - 2.0 * Q * semilatus / model.mu;
  if (e2 < -1e-12) throw ChartError("polar_to_ds: energy momentum inconsistent with state");
  const double ecos_phi = semilatus / p.r - 1.0;
  const double esin_phi = p.R * std::sqrt(semilatus / model.mu);
  DSState ds;
  ds.chart = Chart::osculating;
  ds.phi = e2 > 0.0 ? std::atan2(esin_phi, ecos_phi) : 0.0;
  ds.g = wrap_angle(p.theta - ds.phi);
  ds.h = wrap_angle(p.nu);
  ds.lambda = p.t - time_offset(ecos_phi, esin_phi, Q, model);
  ds.Phi = 2.0 * (p.Theta - Gamma) + kepler_momentum(Q, model);
  ds.G = p.Theta;
  ds.H = p.N;
  ds.Lambda = Q;
  return ds;
}

PolarState ds_to_polar(const DSState& ds, const GravityModel& model) {
  const AuxValues a = aux_values(ds, model);
  const double ecos_phi = a.e * std::cos(ds.phi);
  const double esin_phi = a.e * std::sin(ds.phi);
  if (!(1.0 + ecos_phi > 0.0)) throw ChartError("ds_to_polar: conic denominator not positive");
  PolarState p;
  p.r = a.p / (1.0 + ecos_phi);
  p.R = esin_phi * std::sqrt(model.mu / a.p);
  p.theta = wrap_angle(ds.phi + ds.g);
  p.Theta = ds.G;
  p.N = ds.H;
  p.nu = wrap_angle(ds.h);
  p.t = ds.lambda + time_offset(ecos_phi, esin_phi, ds.Lambda, model);
  return p;
}

RegularState nonsingular_of(const DSState& ds, const GravityModel& model) {
  const double e = aux_values(ds, model).e;
  RegularState reg;
  reg.theta = wrap_angle(ds.phi + ds.g);
  reg.C = e * std::cos(ds.g);
  reg.S = e * std::sin(ds.g);
  reg.h = ds.h;
  reg.lambda = ds.lambda;
  reg.G = ds.G;
  reg.H = ds.H;
  reg.Lambda = ds.Lambda;
  reg.chart = ds.chart;
  return reg;
}

DSState ds_from_regular(const RegularState& reg, const GravityModel& model) {
  const double e2 = reg.C * reg.C + reg.S * reg.S;
  if (!(e2 < 1.0)) throw ChartError("ds_from_regular: eccentricity not below one");
  DSState ds;
  ds.chart = reg.chart;
  ds.g = e2 > 0.0 ? std::atan2(reg.S, reg.C) : 0.0;
  ds.phi = wrap_angle(reg.theta - ds.g);
  ds.h = reg.h;
  ds.lambda = reg.lambda;
  const double semilatus = model.mu * (1.0 - e2) / (2.0 * reg.Lambda);
  ds.Phi = reg.G + kepler_momentum(reg.Lambda, model) - std::sqrt(model.mu * semilatus);
  ds.G = reg.G;
  ds.H = reg.H;
  ds.Lambda = reg.Lambda;
  return ds;
}

PolarState regular_to_polar(const RegularState& reg, const GravityModel& model) {
  const double e2 = reg.C * reg.C + reg.S * reg.S;
  const double semilatus = model.mu * (1.0 - e2) / (2.0 * reg.Lambda);
  const double ct = std::cos(reg.theta), st = std::sin(reg.theta);
  const double ecos_phi = reg.C * ct + reg.S * st;
  const double esin_phi = reg.C * st - reg.S * ct;
  if (!(1.0 + ecos_phi > 0.0)) throw ChartError("regular_to_polar: conic denominator not positive");
  PolarState p;
  p.r = semilatus / (1.0 + ecos_phi);
  p.R = esin_phi * std::sqrt(model.mu / semilatus);
  p.theta = wrap_angle(reg.theta);
  p.Theta = reg.G;
  p.N = reg.H;
  p.nu = wrap_angle(reg.h);
  p.t = reg.lambda + time_offset(ecos_phi, esin_phi, reg.Lambda, model);
  return p;
}

}  // namespace j2lab
