#include "j2lab/elements.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "j2lab/errors.hpp"

namespace j2lab {

void GravityModel::validate() const {
  if (!(mu > 0.0)) throw ConfigError("gravity model: mu must be positive");
  if (!(re > 0.0)) throw ConfigError("gravity model: re must be positive");
  if (!(j2 >= 0.0)) throw ConfigError("gravity model: j2 must be non-negative");
}

double wrap_angle(double angle) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double w = std::fmod(angle, two_pi);
  if (w <= -std::numbers::pi) w += two_pi;
  if (w > std::numbers::pi) w -= two_pi;
  return w;
}

double solve_kepler(double mean_anomaly, double e) {
  if (e < 0.0 || e >= 1.0) throw ChartError("solve_kepler: eccentricity outside [0, 1)");
  const double M = wrap_angle(mean_anomaly);
  const double base = mean_anomaly - M;
  if (e == 0.0) return mean_anomaly;
  // Start from M + e sin M, which is within e^2 of the root, or from pi for
  // high eccentricity where that guess can overshoot.
  double E = e < 0.8 ? M + e * std::sin(M) : (M >= 0.0 ? std::numbers::pi : -std::numbers::pi);
  for (int it = 0; it < 50; ++it) {
    const double f = E - e * std::sin(E) - M;
    const double step = f / (1.0 - e * std::cos(E));
    E -= step;
    if (std::abs(step) < 1e-16 * (1.0 + std::abs(E))) break;
  }
  return base + E;
}

CartesianState classical_to_cartesian(const ClassicalElements& coe, const GravityModel& model, double t) {
  if (!(coe.a > 0.0)) throw ChartError("classical_to_cartesian: semimajor axis must be positive");
  if (!(coe.e >= 0.0 && coe.e < 1.0)) throw ChartError("classical_to_cartesian: eccentricity outside [0, 1)");
  const double p = coe.a * (1.0 - coe.e * coe.e);
  const double E = solve_kepler(coe.M, coe.e);
  const double eta = std::sqrt(1.0 - coe.e * coe.e);
  const double f = std::atan2(eta * std::sin(E), std::cos(E) - coe.e);
  PolarState polar;
  polar.r = coe.a * (1.0 - coe.e * std::cos(E));
  polar.R = std::sqrt(model.mu / p) * coe.e * std::sin(f);
  polar.theta = coe.argp + f;
  polar.Theta = std::sqrt(model.mu * p);
  polar.N = polar.Theta * std::cos(coe.I);
  polar.nu = coe.raan;
  polar.t = t;
  return polar_to_cartesian(polar);
}

ClassicalElements cartesian_to_classical(const CartesianState& x, const GravityModel& model) {
  const PolarState polar = cartesian_to_polar(x);
  const double energy = kepler_energy(x, model);
  if (!(energy < 0.0)) throw ChartError("cartesian_to_classical: orbit is not bound");
  ClassicalElements coe;
  coe.a = -model.mu / (2.0 * energy);
  const double p = polar.Theta * polar.Theta / model.mu;
  const double ecf = p / polar.r - 1.0;
  const double esf = polar.R * std::sqrt(p / model.mu);
  coe.e = std::hypot(ecf, esf);
  coe.I = std::acos(std::clamp(polar.N / polar.Theta, -1.0, 1.0));
  coe.raan = wrap_angle(polar.nu);
  if (coe.e < kCircularThreshold) {
    coe.e = 0.0;
    coe.argp = 0.0;
    coe.M = wrap_angle(polar.theta);
    return coe;
  }
  const double f = std::atan2(esf, ecf);
  coe.argp = wrap_angle(polar.theta - f);
  const double eta = std::sqrt(std::max(0.0, 1.0 - coe.e * coe.e));
  const double E = std::atan2(eta * std::sin(f), coe.e + std::cos(f));
  coe.M = wrap_angle(E - coe.e * std::sin(E));
  return coe;
}

PolarState cartesian_to_polar(const CartesianState& x) {
  const Vec3& r = x.position;
  const Vec3& v = x.velocity;
  const double rn = r.norm();
  if (!(rn > 0.0)) throw ChartError("cartesian_to_polar: zero radius");
  const Vec3 h = r.cross(v);
  const double hn = h.norm();
  if (!(hn > 1e-12 * rn * v.norm())) throw ChartError("cartesian_to_polar: rectilinear orbit");
  PolarState p;
  p.r = rn;
  p.R = r.dot(v) / rn;
  p.Theta = hn;
  p.N = h.z();
  p.t = x.t;
  // Ascending node direction z x h; an equatorial orbit takes the x axis.
  Vec3 node(-h.y(), h.x(), 0.0);
  if (node.norm() < 1e-14 * hn) {
    node = Vec3::UnitX();
    p.nu = 0.0;
  } else {
    node.normalize();
    p.nu = std::atan2(h.x(), -h.y());
  }
  const Vec3 in_plane = (h / hn).cross(node);
  p.theta = std::atan2(r.dot(in_plane), r.dot(node));
  return p;
}

CartesianState polar_to_cartesian(const PolarState& p) {
  if (!(p.r > 0.0) || !(p.Theta > 0.0)) throw ChartError("polar_to_cartesian: degenerate state");
  const double ci = std::clamp(p.N / p.Theta, -1.0, 1.0);
  const double si = std::sqrt(1.0 - ci * ci);
  const double cn = std::cos(p.nu), sn = std::sin(p.nu);
  const double ct = std::cos(p.theta), st = std::sin(p.theta);
  const Vec3 radial(cn * ct - sn * st * ci, sn * ct + cn * st * ci, st * si);
  const Vec3 transverse(-cn * st - sn * ct * ci, -sn * st + cn * ct * ci, ct * si);
  CartesianState x;
  x.position = p.r * radial;
  x.velocity = p.R * radial + (p.Theta / p.r) * transverse;
  x.t = p.t;
  return x;
}

RswError rsw_errors(const CartesianState& reference, const CartesianState& test) {
  if (std::abs(reference.t - test.t) > 1e-9) throw ChartError("rsw_errors: epochs differ");
  const Vec3 radial = reference.position.normalized();
  const Vec3 normal = reference.position.cross(reference.velocity).normalized();
  const Vec3 along = normal.cross(radial);
  const Vec3 d = test.position - reference.position;
  RswError err;
  err.radial = d.dot(radial);
  err.along_track = d.dot(along);
  err.cross_track = d.dot(normal);
  err.rss = d.norm();
  err.t = reference.t;
  return err;
}

double kepler_energy(const CartesianState& x, const GravityModel& model) {
  return 0.5 * x.velocity.squaredNorm() - model.mu / x.position.norm();
}

double main_problem_energy(const CartesianState& x, const GravityModel& model) {
  const double r = x.position.norm();
  const double sin_lat = x.position.z() / r;
  return kepler_energy(x, model) + model.j2 * (model.mu / r) * (model.re * model.re / (r * r)) * legendre_p2(sin_lat);
}

}  // namespace j2lab
