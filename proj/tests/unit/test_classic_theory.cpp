#include <gtest/gtest.h>

#include "j2lab/classic_theory.hpp"
#include "support.hpp"

namespace j2lab {
namespace {

TEST(ClassicTheory, KeplerMotionWithoutJ2) {
  const GravityModel model = GravityModel{}.with_j2(0.0);
  const ClassicalElements coe = testing::prisma_elements();
  for (bool calibrate : {false, true}) {
    const MeanClassicState m = initialize_classic(classical_to_cartesian(coe, model), model, calibrate);
    EXPECT_NEAR(m.mean_elements().a, coe.a, 1e-9);
    EXPECT_NEAR(m.mean_elements().e, coe.e, 1e-12);
    EXPECT_NEAR(m.calibration.a_calibrated, m.calibration.a_uncalibrated, 1e-9);
    const double n = std::sqrt(model.mu / std::pow(coe.a, 3));
    for (double t : {0.0, 4000.0, 86400.0}) {
      ClassicalElements k = coe;
      k.M += n * t;
      EXPECT_LT((propagate_classic(m, t).position - classical_to_cartesian(k, model).position).norm(), 1e-8);
    }
  }
}

TEST(ClassicTheory, CalibrationSolvesTheEnergyEquation) {
  const GravityModel model;
  const CartesianState x0 = testing::prisma_state(model);
  const MeanClassicState m = initialize_classic(x0, model, true);
  const double E = main_problem_energy(x0, model);
  EXPECT_EQ(m.calibration.energy, E);
  EXPECT_LT(std::abs(m.calibration.residual), 1e-12 * std::abs(E));
  const double shift = std::abs(m.calibration.a_calibrated - m.calibration.a_uncalibrated);
  EXPECT_GT(shift, 0.0);
  EXPECT_LT(shift, model.j2 * m.calibration.a_uncalibrated);
  EXPECT_NEAR(m.mean_elements().a, m.calibration.a_calibrated, 1e-9);
}

TEST(ClassicTheory, UncalibratedMeanAxisDoesNotMatchEnergy) {
  const GravityModel model;
  const MeanClassicState m = initialize_classic(testing::prisma_state(model), model, false);
  EXPECT_GT(std::abs(m.calibration.residual), 1e-9 * std::abs(m.calibration.energy));
}

TEST(ClassicTheory, MeanRatesHaveTheExpectedSigns) {
  const GravityModel model;
  const MeanClassicState m = initialize_classic(testing::prisma_state(model), model, true);
  // Retrograde sun-synchronous orbit: the node advances, the perigee regresses.
  EXPECT_GT(m.n_h, 0.0);
  EXPECT_LT(m.n_g, 0.0);
  const double n0 = std::sqrt(model.mu / std::pow(m.mean_elements().a, 3));
  EXPECT_NEAR(m.n_l / n0, 1.0, 10.0 * model.j2);
  EXPECT_NEAR(m.n_h * 365.2422 * 86400.0, 2.0 * std::numbers::pi, 0.05);
}

// The initial-state residual is the neglected second-order periodic content.
TEST(ClassicTheory, InitialResidualScalesAsJ2Squared) {
  const GravityModel model;
  auto residual = [&](double j2) {
    const GravityModel m = model.with_j2(j2);
    const CartesianState x0 = testing::prisma_state(m);
    return (propagate_classic(initialize_classic(x0, m, false), 0.0).position - x0.position).norm();
  };
  const double full = residual(model.j2), half = residual(model.j2 / 2.0);
  EXPECT_LT(full, 0.05);
  EXPECT_NEAR(full / half, 4.0, 0.5);
}

TEST(ClassicTheory, CriticalInclinationIsRejected) {
  const GravityModel model;
  ClassicalElements coe = testing::prisma_elements();
  coe.I = std::asin(std::sqrt(0.8));
  EXPECT_THROW(initialize_classic(classical_to_cartesian(coe, model), model, true), CriticalInclination);
}

TEST(ClassicTheory, EquationOfCenterMatchesTrueAnomaly) {
  for (double e : {0.001, 0.1, 0.5}) {
    const double eta = std::sqrt(1.0 - e * e);
    for (double l = -3.0; l <= 3.0; l += 0.5) {
      const double E = solve_kepler(l, e);
      const double f = 2.0 * std::atan2(std::sqrt(1.0 + e) * std::sin(E / 2.0), std::sqrt(1.0 - e) * std::cos(E / 2.0));
      EXPECT_NEAR(std::remainder(equation_of_center(l, e, eta) - (f - l), 2.0 * std::numbers::pi), 0.0, 1e-13);
    }
  }
}

}  // namespace
}  // namespace j2lab
