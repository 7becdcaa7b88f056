#include <gtest/gtest.h>

#include <Eigen/Geometry>

#include <random>

#include "j2lab/elements.hpp"
#include "support.hpp"

namespace j2lab {
namespace {

using testing::kDeg;

double angle_diff(double a, double b) { return std::abs(wrap_angle(a - b)); }

TEST(Elements, PrismaKeplerEnergyMatchesSemimajorAxis) {
  const GravityModel model;
  const CartesianState x = testing::prisma_state(model);
  EXPECT_NEAR(kepler_energy(x, model) / (-model.mu / (2.0 * 6878.14)), 1.0, 1e-13);
}

TEST(Elements, PrismaPolarMomentumRatioIsCosineOfInclination) {
  const PolarState p = cartesian_to_polar(testing::prisma_state());
  EXPECT_NEAR(std::abs(p.N / p.Theta), std::abs(std::cos(97.42 * kDeg)), 1e-12);
}

TEST(Elements, ClassicalRoundTripOverRandomStates) {
  const GravityModel model;
  std::mt19937_64 rng(7);
  for (int k = 0; k < 1000; ++k) {
    const ClassicalElements coe = testing::random_elements(rng);
    const ClassicalElements back = cartesian_to_classical(classical_to_cartesian(coe, model), model);
    ASSERT_NEAR(back.a / coe.a, 1.0, 1e-10);
    ASSERT_NEAR(back.e, coe.e, 1e-10);
    ASSERT_NEAR(back.I, coe.I, 1e-10);
    ASSERT_LT(angle_diff(back.raan, coe.raan), 1e-10);
    ASSERT_LT(angle_diff(back.argp + back.M, coe.argp + coe.M), 1e-10);
  }
}

TEST(Elements, PolarRoundTripOverRandomStates) {
  const GravityModel model;
  std::mt19937_64 rng(11);
  for (int k = 0; k < 1000; ++k) {
    const CartesianState x = classical_to_cartesian(testing::random_elements(rng), model, 123.0);
    const CartesianState y = polar_to_cartesian(cartesian_to_polar(x));
    ASSERT_LT((y.position - x.position).norm() / x.position.norm(), 1e-10);
    ASSERT_LT((y.velocity - x.velocity).norm() / x.velocity.norm(), 1e-10);
    ASSERT_EQ(y.t, x.t);
  }
}

TEST(Elements, CircularOrbitPutsPhaseInMeanAnomaly) {
  const GravityModel model;
  const ClassicalElements coe{7000.0, 0.0, 50.0 * kDeg, 10.0 * kDeg, 40.0 * kDeg, 5.0 * kDeg};
  const ClassicalElements back = cartesian_to_classical(classical_to_cartesian(coe, model), model);
  EXPECT_EQ(back.argp, 0.0);
  EXPECT_LT(angle_diff(back.M, 45.0 * kDeg), 1e-10);
}

TEST(Elements, KeplerSolverSatisfiesEquation) {
  for (double e : {0.0, 0.001, 0.3, 0.9}) {
    for (double M = -3.0; M <= 3.0; M += 0.25) {
      const double E = solve_kepler(M, e);
      EXPECT_NEAR(E - e * std::sin(E), M, 1e-14);
    }
  }
}

TEST(Elements, WrapAngleRange) {
  EXPECT_DOUBLE_EQ(wrap_angle(3.0 * std::numbers::pi), std::numbers::pi);
  EXPECT_NEAR(wrap_angle(-3.0 * std::numbers::pi / 2.0), std::numbers::pi / 2.0, 1e-15);
  EXPECT_DOUBLE_EQ(wrap_angle(0.5), 0.5);
}

TEST(Elements, RswErrorsDecomposeOffsets) {
  const CartesianState ref = testing::prisma_state();
  const Vec3 r_hat = ref.position.normalized();
  const Vec3 w_hat = ref.position.cross(ref.velocity).normalized();
  const Vec3 s_hat = w_hat.cross(r_hat);
  CartesianState test = ref;
  test.position += 1e-3 * r_hat - 2e-3 * s_hat + 3e-3 * w_hat;
  const RswError e = rsw_errors(ref, test);
  EXPECT_NEAR(e.radial, 1e-3, 1e-12);
  EXPECT_NEAR(e.along_track, -2e-3, 1e-12);
  EXPECT_NEAR(e.cross_track, 3e-3, 1e-12);
  EXPECT_NEAR(e.rss, std::sqrt(14.0) * 1e-3, 1e-12);
}

TEST(Elements, ValidateRejectsNonPhysicalModel) {
  GravityModel m;
  m.mu = -1.0;
  EXPECT_THROW(m.validate(), Error);
}

}  // namespace
}  // namespace j2lab
