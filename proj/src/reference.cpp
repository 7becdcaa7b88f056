#include "j2lab/reference.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>

#include "j2lab/csv.hpp"
#include "j2lab/errors.hpp"

namespace j2lab {

namespace {

template <class S>
using Vec7 = Eigen::Matrix<S, 7, 1>;

template <class S>
Vec7<S> rhs(const Vec7<S>& y, const GravityModel& model) {
  const Vec3T<S> x = y.template head<3>();
  const Vec3T<S> v = y.template segment<3>(3);
  Vec7<S> dy;
  dy.template head<3>() = v;
  dy.template segment<3>(3) = accel_main_problem<S>(x, model);
  dy[6] = tau_rate<S>(x, v, model);
  return dy;
}

template <class S>
S energy(const Vec7<S>& y, const GravityModel& model) {
  const Vec3T<S> x = y.template head<3>();
  const Vec3T<S> v = y.template segment<3>(3);
  return 0.5 * v.squaredNorm() + potential_main_problem<S>(x, model);
}

template <class S>
S polar_momentum(const Vec7<S>& y) {
  return y[0] * y[4] - y[1] * y[3];
}

DoubleDouble widen(double x) { return DoubleDouble(x); }
const DoubleDouble& widen(const DoubleDouble& x) { return x; }

template <class S>
ReferenceTrajectory run(const CartesianState& x0, double t_end, double tol, Precision precision,
                        const GravityModel& model) {
  const auto start = std::chrono::steady_clock::now();
  Vec7<S> y0;
  for (int i = 0; i < 3; ++i) {
    y0[i] = S(x0.position[i]);
    y0[i + 3] = S(x0.velocity[i]);
  }
  y0[6] = S(0.0);

  const S e0 = energy<S>(y0, model);
  const S n0 = polar_momentum<S>(y0);
  DriftDiagnostics drift;
  std::vector<ReferenceTrajectory::Segment> segments;

  auto on_step = [&](const DenseSegment<S, 7>& seg) {
    ReferenceTrajectory::Segment wide;
    wide.t0 = widen(seg.t0);
    wide.h = widen(seg.h);
    for (int k = 0; k < 8; ++k) {
      for (int i = 0; i < 7; ++i) wide.r[k][i] = widen(seg.r[k][i]);
    }
    segments.push_back(wide);
    const Vec7<S> y_end = seg.r[0] + seg.r[1];
    const double de = std::abs(to_double((energy<S>(y_end, model) - e0) / e0));
    const double dn = std::abs(to_double((polar_momentum<S>(y_end) - n0) / n0));
    drift.max_energy_rel = std::max(drift.max_energy_rel, de);
    drift.max_polar_momentum_rel = std::max(drift.max_polar_momentum_rel, dn);
    drift.final_energy_rel = de;
    drift.final_polar_momentum_rel = dn;
  };

  Dop853<S, 7> stepper(tol, tol);
  stepper.integrate([&](const S&, const Vec7<S>& y) { return rhs<S>(y, model); }, S(x0.t), y0, S(t_end), on_step);

  ReferenceStats stats;
  stats.stepper = stepper.stats();
  stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return ReferenceTrajectory(std::move(segments), model, precision, tol, drift, stats);
}

CartesianState to_cartesian(const Vec7DD& y, const DoubleDouble& t) {
  CartesianState x;
  for (int i = 0; i < 3; ++i) {
    x.position[i] = to_double(y[i]);
    x.velocity[i] = to_double(y[i + 3]);
  }
  x.t = to_double(t);
  return x;
}

}  // namespace

ReferenceTrajectory::ReferenceTrajectory(std::vector<Segment> segments, GravityModel model, Precision precision,
                                         double tol, DriftDiagnostics drift, ReferenceStats stats)
    : segments_(std::move(segments)),
      model_(model),
      precision_(precision),
      tol_(tol),
      drift_(drift),
      stats_(stats) {
  if (segments_.empty()) throw IntegrationError("reference trajectory has no steps");
}

double ReferenceTrajectory::t_begin() const { return to_double(segments_.front().t0); }

double ReferenceTrajectory::t_end() const { return to_double(segments_.back().t0 + segments_.back().h); }

DoubleDouble ReferenceTrajectory::tau_end() const {
  const Segment& last = segments_.back();
  return last.r[0][6] + last.r[1][6];
}

Vec7DD ReferenceTrajectory::full_state_at_time(const DoubleDouble& t) const {
  const Segment& first = segments_.front();
  const Segment& last = segments_.back();
  const DoubleDouble t_last = last.t0 + last.h;
  const double slack = 1e-9;
  if (to_double(t - first.t0) < -slack || to_double(t - t_last) > slack) {
    throw SpanError("reference: epoch outside the integrated span");
  }
  auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                             [](const DoubleDouble& value, const Segment& s) { return value < s.t0; });
  const Segment& seg = it == segments_.begin() ? *it : *(it - 1);
  const DoubleDouble s = (t - seg.t0) / seg.h;
  return seg.evaluate(s);
}

Vec7DD ReferenceTrajectory::full_state_at_tau(const DoubleDouble& tau, DoubleDouble* t_out) const {
  const DoubleDouble tau0 = segments_.front().r[0][6];
  const double slack = 1e-12;
  if (to_double(tau - tau0) < -slack || to_double(tau - tau_end()) > slack) {
    throw SpanError("reference: fictitious time outside the integrated span");
  }
  auto it = std::upper_bound(segments_.begin(), segments_.end(), tau,
                             [](const DoubleDouble& value, const Segment& s) { return value < s.r[0][6]; });
  const Segment& seg = it == segments_.begin() ? *it : *(it - 1);
  const DoubleDouble ta = seg.r[0][6];
  const DoubleDouble tb = ta + seg.r[1][6];
  DoubleDouble s = (tau - ta) / (tb - ta);
  Vec7DD y, dy;
  for (int it_newton = 0; it_newton < 30; ++it_newton) {
    y = seg.evaluate(s, &dy);
    const DoubleDouble step = (y[6] - tau) / dy[6];
    s -= step;
    if (std::abs(to_double(step)) < 1e-31) break;
  }
  y = seg.evaluate(s);
  if (t_out) *t_out = seg.t0 + s * seg.h;
  return y;
}

ReferenceTrajectory integrate(const CartesianState& x0, double t_end, double tol, Precision precision,
                              const GravityModel& model) {
  model.validate();
  if (!(tol > 0.0)) throw ConfigError("reference: tolerance must be positive");
  if (!(t_end > x0.t)) throw ConfigError("reference: end epoch must follow the initial epoch");
  if (!(kepler_energy(x0, model) < 0.0)) throw ChartError("reference: orbit is not bound");
  if (precision == Precision::double_double) return run<DoubleDouble>(x0, t_end, tol, precision, model);
  return run<double>(x0, t_end, tol, precision, model);
}

ReferenceSample state_at_time(const ReferenceTrajectory& traj, const DoubleDouble& t) {
  const Vec7DD y = traj.full_state_at_time(t);
  return {to_cartesian(y, t), t, y[6]};
}

ReferenceSample state_at_tau(const ReferenceTrajectory& traj, const DoubleDouble& tau) {
  DoubleDouble t;
  const Vec7DD y = traj.full_state_at_tau(tau, &t);
  return {to_cartesian(y, t), t, y[6]};
}

void write_trajectory_csv(const ReferenceTrajectory& traj, double cadence, std::ostream& os) {
  if (!(cadence > 0.0)) throw ConfigError("trajectory export: cadence must be positive");
  CsvWriter csv(os, {"t", "tau", "x", "y", "z", "vx", "vy", "vz"});
  const double t0 = traj.t_begin();
  const long n = static_cast<long>(std::floor((traj.t_end() - t0) / cadence + 1e-9));
  for (long k = 0; k <= n; ++k) {
    const ReferenceSample s = state_at_time(traj, DoubleDouble(t0) + DoubleDouble(static_cast<double>(k)) * cadence);
    const Vec3& x = s.state.position;
    const Vec3& v = s.state.velocity;
    csv.row({s.state.t, to_double(s.tau), x[0], x[1], x[2], v[0], v[1], v[2]});
  }
}

}  // namespace j2lab
