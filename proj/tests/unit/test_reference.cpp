#include <gtest/gtest.h>

#include <sstream>

#include "j2lab/reference.hpp"
#include "support.hpp"

namespace j2lab {
namespace {

TEST(Dop853, HarmonicOscillatorWithDenseOutput) {
  using Stepper = Dop853<double, 2>;
  Stepper stepper(1e-12, 1e-12);
  std::vector<Stepper::Segment> segments;
  auto rhs = [](double, const Stepper::State& y) { return Stepper::State(y[1], -y[0]); };
  const Stepper::State y_end =
      stepper.integrate(rhs, 0.0, Stepper::State(1.0, 0.0), 20.0, [&](const Stepper::Segment& s) { segments.push_back(s); });
  EXPECT_NEAR(y_end[0], std::cos(20.0), 1e-10);
  EXPECT_NEAR(y_end[1], -std::sin(20.0), 1e-10);
  EXPECT_GT(stepper.stats().accepted, 5);

  for (const auto& seg : segments) {
    for (double s : {0.0, 0.3, 0.77, 1.0}) {
      Stepper::State d;
      const Stepper::State y = seg.evaluate(s, &d);
      const double t = seg.t0 + s * seg.h;
      ASSERT_NEAR(y[0], std::cos(t), 1e-9);
      ASSERT_NEAR(d[0] / seg.h, -std::sin(t), 1e-8);
    }
  }
}

TEST(Dop853, ErrorFollowsTolerance) {
  using Stepper = Dop853<double, 2>;
  auto run = [](double tol) {
    Stepper stepper(tol, tol);
    auto rhs = [](double, const Stepper::State& y) { return Stepper::State(y[1], -y[0]); };
    const Stepper::State y = stepper.integrate(rhs, 0.0, Stepper::State(1.0, 0.0), 50.0, [](const auto&) {});
    return std::hypot(y[0] - std::cos(50.0), y[1] + std::sin(50.0));
  };
  const double coarse = run(1e-7), fine = run(1e-10);
  EXPECT_LT(fine, coarse);
  EXPECT_GT(coarse / fine, 30.0);
}

TEST(Reference, ConservesEnergyAndPolarMomentum) {
  const GravityModel model;
  const ReferenceTrajectory ref = integrate(testing::prisma_state(model), 86400.0, 1e-13, Precision::double_precision, model);
  EXPECT_LT(ref.drift().max_energy_rel, 1e-12);
  EXPECT_LT(ref.drift().max_polar_momentum_rel, 1e-12);
  EXPECT_DOUBLE_EQ(ref.t_end(), 86400.0);
}

TEST(Reference, ConvergesWithTolerance) {
  const GravityModel model;
  const CartesianState x0 = testing::prisma_state(model);
  const double t_end = 86400.0;
  const Vec3 truth = state_at_time(integrate(x0, t_end, 1e-14, Precision::double_double, model), t_end).state.position;
  auto error = [&](double tol) {
    return (state_at_time(integrate(x0, t_end, tol, Precision::double_precision, model), t_end).state.position - truth)
        .norm();
  };
  const double e9 = error(1e-9), e11 = error(1e-11);
  EXPECT_LT(e11, e9 / 10.0);
}

TEST(Reference, DoubleDoubleAgreesWithDouble) {
  const GravityModel model;
  const CartesianState x0 = testing::prisma_state(model);
  const ReferenceTrajectory a = integrate(x0, 20000.0, 1e-13, Precision::double_precision, model);
  const ReferenceTrajectory b = integrate(x0, 20000.0, 1e-15, Precision::double_double, model);
  for (double t : {0.0, 7777.0, 20000.0}) {
    const ReferenceSample sa = state_at_time(a, t), sb = state_at_time(b, t);
    EXPECT_LT((sa.state.position - sb.state.position).norm(), 1e-7);
    EXPECT_NEAR(to_double(sa.tau - sb.tau), 0.0, 1e-10);
  }
  EXPECT_LT(b.drift().max_energy_rel, 1e-14);
}

TEST(Reference, FictitiousTimeChannelIsConsistent) {
  const GravityModel model;
  const ReferenceTrajectory ref = integrate(testing::prisma_state(model), 30000.0, 1e-13, Precision::double_precision, model);
  for (double t : {0.0, 1000.0, 12345.6, 29999.0}) {
    const ReferenceSample at_t = state_at_time(ref, t);
    const ReferenceSample at_tau = state_at_tau(ref, at_t.tau);
    EXPECT_NEAR(to_double(at_tau.t) - t, 0.0, 1e-9);
    EXPECT_LT((at_tau.state.position - at_t.state.position).norm(), 1e-10);
  }
  EXPECT_GT(to_double(ref.tau_end()), 0.0);
}

TEST(Reference, TauRateMatchesGammaOverRadiusSquared) {
  const GravityModel model;
  const CartesianState x = testing::prisma_state(model);
  const PolarState p = cartesian_to_polar(x);
  EXPECT_NEAR(tau_rate<double>(x.position, x.velocity, model), gamma_polar(p, model) / (p.r * p.r), 1e-18);
}

TEST(Reference, OutOfSpanIsRejected) {
  const GravityModel model;
  const ReferenceTrajectory ref = integrate(testing::prisma_state(model), 1000.0, 1e-12, Precision::double_precision, model);
  EXPECT_THROW(state_at_time(ref, 1001.0), SpanError);
  EXPECT_THROW(state_at_time(ref, -1.0), SpanError);
  EXPECT_THROW(state_at_tau(ref, ref.tau_end() + 1.0), SpanError);
}

TEST(Reference, TrajectoryCsv) {
  const GravityModel model;
  const ReferenceTrajectory ref = integrate(testing::prisma_state(model), 600.0, 1e-12, Precision::double_precision, model);
  std::ostringstream os;
  write_trajectory_csv(ref, 60.0, os);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "t,tau,x,y,z,vx,vy,vz");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 11);
  EXPECT_THROW(write_trajectory_csv(ref, 0.0, os), ConfigError);
}

}  // namespace
}  // namespace j2lab
