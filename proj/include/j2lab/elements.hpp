#pragma once

#include <Eigen/Core>

namespace j2lab {

using Vec3 = Eigen::Vector3d;

// Physical constants of the main problem. Units: km, s.
struct GravityModel {
  double mu = 398600.4415;
  double re = 6378.1363;
  double j2 = 1.08262617e-3;

  void validate() const;
  GravityModel with_j2(double value) const {
    GravityModel m = *this;
    m.j2 = value;
    return m;
  }
};

struct CartesianState {
  Vec3 position = Vec3::Zero();
  Vec3 velocity = Vec3::Zero();
  double t = 0.0;
};

// Polar-nodal chart. nu is the right ascension of the ascending node, carried
// along so that the chart is invertible on its own.
struct PolarState {
  double r = 0.0;
  double R = 0.0;
  double theta = 0.0;
  double Theta = 0.0;
  double N = 0.0;
  double nu = 0.0;
  double t = 0.0;
};

struct ClassicalElements {
  double a = 0.0;
  double e = 0.0;
  double I = 0.0;
  double raan = 0.0;
  double argp = 0.0;
  double M = 0.0;
};

struct RswError {
  double radial = 0.0;
  double along_track = 0.0;
  double cross_track = 0.0;
  double rss = 0.0;
  double t = 0.0;
};

// Wraps to (-pi, pi].
double wrap_angle(double angle);

// Smallest eccentricity treated as an actual ellipse by the element conversions.
inline constexpr double kCircularThreshold = 1e-12;

double solve_kepler(double mean_anomaly, double e);

CartesianState classical_to_cartesian(const ClassicalElements& coe, const GravityModel& model, double t = 0.0);
ClassicalElements cartesian_to_classical(const CartesianState& x, const GravityModel& model);

PolarState cartesian_to_polar(const CartesianState& x);
CartesianState polar_to_cartesian(const PolarState& p);

RswError rsw_errors(const CartesianState& reference, const CartesianState& test);

// Main-problem Hamiltonian (total energy per unit mass) and its Kepler part.
double main_problem_energy(const CartesianState& x, const GravityModel& model);
double kepler_energy(const CartesianState& x, const GravityModel& model);

inline double legendre_p2(double x) { return 0.5 * (3.0 * x * x - 1.0); }

}  // namespace j2lab
