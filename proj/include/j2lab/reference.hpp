#pragma once

// Numerical ground truth: the main problem integrated in Cartesian
// coordinates together with the fictitious time, dtau/dt = Gamma / r^2.

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <iosfwd>
#include <vector>

#include "j2lab/dop853.hpp"
#include "j2lab/double_double.hpp"
#include "j2lab/elements.hpp"

namespace j2lab {

enum class Precision { double_precision, double_double };

template <class S>
using Vec3T = Eigen::Matrix<S, 3, 1>;

// Minus the gradient of -mu/r + J2 (mu/r) (re/r)^2 P2(z/r).
template <class S>
Vec3T<S> accel_main_problem(const Vec3T<S>& x, const GravityModel& m) {
  using std::sqrt;
  const S r2 = x.squaredNorm();
  const S r = sqrt(r2);
  if (!(to_double(r) > 0.0)) throw ChartError("accel_main_problem: zero radius");
  const S z2_r2 = x[2] * x[2] / r2;
  const S k = S(1.5 * m.j2 * m.re * m.re) / r2;
  const S central = S(-m.mu) / (r2 * r);
  Vec3T<S> a;
  a[0] = central * x[0] * (S(1.0) + k * (S(1.0) - 5.0 * z2_r2));
  a[1] = central * x[1] * (S(1.0) + k * (S(1.0) - 5.0 * z2_r2));
  a[2] = central * x[2] * (S(1.0) + k * (S(3.0) - 5.0 * z2_r2));
  return a;
}

template <class S>
S potential_main_problem(const Vec3T<S>& x, const GravityModel& m) {
  using std::sqrt;
  const S r2 = x.squaredNorm();
  const S r = sqrt(r2);
  const S sin_lat = x[2] / r;
  const S p2 = 0.5 * (3.0 * sin_lat * sin_lat - 1.0);
  return S(-m.mu) / r + S(m.j2 * m.mu * m.re * m.re) * p2 / (r2 * r);
}

// Gamma/r^2 from the Cartesian state.
template <class S>
S tau_rate(const Vec3T<S>& x, const Vec3T<S>& v, const GravityModel& m) {
  using std::sqrt;
  const S r2 = x.squaredNorm();
  const S r = sqrt(r2);
  const S theta = sqrt(x.cross(v).squaredNorm());
  const S sin_lat = x[2] / r;
  const S p2 = 0.5 * (3.0 * sin_lat * sin_lat - 1.0);
  const S radicand = S(1.0) + S(2.0 * m.j2 * m.mu * m.re * m.re) * p2 / (r * theta * theta);
  const S gamma = 0.5 * theta * (S(1.0) + sqrt(radicand));
  return gamma / r2;
}

using Vec7DD = Eigen::Matrix<DoubleDouble, 7, 1>;

struct DriftDiagnostics {
  double max_energy_rel = 0.0;           // max |E - E0| / |E0| over accepted steps
  double max_polar_momentum_rel = 0.0;   // same for N = (x cross v)_z
  double final_energy_rel = 0.0;
  double final_polar_momentum_rel = 0.0;
};

struct ReferenceStats {
  StepperStats stepper;
  double wall_seconds = 0.0;
};

struct ReferenceSample {
  CartesianState state;
  DoubleDouble t;
  DoubleDouble tau;
};

class ReferenceTrajectory {
 public:
  using Segment = DenseSegment<DoubleDouble, 7>;

  ReferenceTrajectory(std::vector<Segment> segments, GravityModel model, Precision precision, double tol,
                      DriftDiagnostics drift, ReferenceStats stats);

  double t_begin() const;
  double t_end() const;
  DoubleDouble tau_end() const;
  const std::vector<Segment>& segments() const { return segments_; }
  const GravityModel& model() const { return model_; }
  Precision precision() const { return precision_; }
  double tolerance() const { return tol_; }
  const DriftDiagnostics& drift() const { return drift_; }
  const ReferenceStats& stats() const { return stats_; }

  Vec7DD full_state_at_time(const DoubleDouble& t) const;
  Vec7DD full_state_at_tau(const DoubleDouble& tau, DoubleDouble* t_out) const;

 private:
  std::vector<Segment> segments_;
  GravityModel model_;
  Precision precision_;
  double tol_;
  DriftDiagnostics drift_;
  ReferenceStats stats_;
};

// tol is used both as relative and absolute local error tolerance.
ReferenceTrajectory integrate(const CartesianState& x0, double t_end, double tol, Precision precision,
                              const GravityModel& model);

ReferenceSample state_at_time(const ReferenceTrajectory& traj, const DoubleDouble& t);
ReferenceSample state_at_tau(const ReferenceTrajectory& traj, const DoubleDouble& tau);

// One row per sample at the given cadence: t, tau, x, y, z, vx, vy, vz.
void write_trajectory_csv(const ReferenceTrajectory& traj, double cadence, std::ostream& os);

}  // namespace j2lab
