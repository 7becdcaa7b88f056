#pragma once

// Physical-time comparison theory in Delaunay variables (l, g, h, L, G, H):
// second-order secular rates, first-order periodic corrections, optional
// Breakwell-Vagners calibration of the mean semimajor axis.
//
// Jets reuse the eight-slot layout of the extended phase space with the
// coordinates in slots 0-2 and the momenta in slots 4-6.

#include <cmath>

#include "j2lab/elements.hpp"
#include "j2lab/errors.hpp"
#include "j2lab/hamiltonians.hpp"
#include "j2lab/jet.hpp"

namespace j2lab {

template <class S>
struct DelaunayPoint {
  S l, g, h, L, G, H;
  GravityModel model;
};

template <class S>
DelaunayPoint<S> seed_delaunay(double l, double g, double h, double L, double G, double H, const GravityModel& model) {
  if constexpr (std::is_same_v<S, double>) {
    return {l, g, h, L, G, H, model};
  } else {
    return {S::variable(l, 0), S::variable(g, 1), S::variable(h, 2),
            S::variable(L, 4), S::variable(G, 5), S::variable(H, 6), model};
  }
}

// Kepler's equation solved in double and then refined in the jet algebra so
// that the derivatives of E follow.
template <class S>
S eccentric_anomaly(const S& l, const S& e) {
  using std::cos;
  using std::sin;
  S E(solve_kepler(value_of(l), value_of(e)));
  for (int k = 0; k < 2; ++k) E = E - (E - e * sin(E) - l) / (1.0 - e * cos(E));
  return E;
}

// f - l without going through the singular half-angle tangent.
template <class S>
S equation_of_center(const S& l, const S& e, const S& eta) {
  using std::atan;
  using std::cos;
  using std::sin;
  const S E = eccentric_anomaly(l, e);
  const S beta = e / (1.0 + eta);
  return e * sin(E) + 2.0 * atan(beta * sin(E) / (1.0 - beta * cos(E)));
}

template <class S>
S brouwer_w1(const DelaunayPoint<S>& pt) {
  using std::sin;
  using std::sqrt;
  const GravityModel& m = pt.model;
  const S eta = pt.G / pt.L;
  const S e = sqrt(1.0 - eta * eta);
  const S s2 = 1.0 - pt.H * pt.H / (pt.G * pt.G);
  const S p = pt.G * pt.G / m.mu;
  const S center = equation_of_center(pt.l, e, eta);
  const S f = pt.l + center;
  const S g2 = 2.0 * pt.g;
  const S bracket = (2.0 - 3.0 * s2) * (center + e * sin(f)) + 1.5 * s2 * sin(g2 + 2.0 * f) +
                    1.5 * e * s2 * sin(g2 + f) + 0.5 * e * s2 * sin(g2 + 3.0 * f);
  return -(m.mu * m.re * m.re) / (4.0 * pt.G * p) * bracket;
}

template <class S>
S brouwer_v1(const DelaunayPoint<S>& pt) {
  using std::sin;
  const GravityModel& m = pt.model;
  const S s2 = 1.0 - pt.H * pt.H / (pt.G * pt.G);
  const S divisor = 5.0 * s2 - 4.0;
  detail::guard_divisor(divisor);
  const S e2 = 1.0 - pt.G * pt.G / (pt.L * pt.L);
  const S p = pt.G * pt.G / m.mu;
  const S ratio = m.re / p;
  return pt.G * ratio * ratio / 32.0 * (15.0 * s2 - 14.0) / divisor * s2 * e2 * sin(2.0 * pt.g);
}

// Secular Hamiltonian through J2^2.
template <class S>
S classic_secular_hamiltonian(const DelaunayPoint<S>& pt) {
  const GravityModel& m = pt.model;
  const double mu = m.mu, re2 = m.re * m.re;
  const S& L = pt.L;
  const S& G = pt.G;
  const S& H = pt.H;
  const S L2 = L * L, L3 = L2 * L;
  const S G2 = G * G, G3 = G2 * G;
  const S H2 = H * H;
  const S s2 = 1.0 - H2 / G2;
  const S kepler = -(mu * mu) / (2.0 * L2);
  const S first = std::pow(mu, 4) * re2 * (3.0 * s2 - 2.0) / (4.0 * L3 * G3);
  const S G4 = G2 * G2, G5 = G4 * G, G6 = G3 * G3;
  const S P = 5.0 * G6 + 4.0 * G5 * L - 18.0 * G4 * H2 - 5.0 * G4 * L2 - 24.0 * G3 * H2 * L + 5.0 * G2 * H2 * H2 +
              10.0 * G2 * H2 * L2 + 36.0 * G * H2 * H2 * L + 35.0 * H2 * H2 * L2;
  const S second = -3.0 * re2 * re2 * std::pow(mu, 6) * P / (128.0 * ipow(G, 11) * ipow(L, 5));
  return kepler + m.j2 * first + m.j2 * m.j2 * second;
}

struct EnergyCalibration {
  double energy = 0.0;        // exact osculating energy, km^2/s^2
  double a_uncalibrated = 0.0;
  double a_calibrated = 0.0;
  double residual = 0.0;      // secular Hamiltonian minus energy after the solve
  int iterations = 0;
};

struct MeanClassicState {
  // Mean regular set: l+g, (C, S) = e (cos g, sin g), h, and the momenta.
  double lg0 = 0.0;
  double C0 = 0.0;
  double S0 = 0.0;
  double h0 = 0.0;
  double L = 0.0;
  double G = 0.0;
  double H = 0.0;
  double n_l = 0.0;
  double n_g = 0.0;
  double n_h = 0.0;
  double t0 = 0.0;
  bool calibrated = false;
  EnergyCalibration calibration;
  GravityModel model;

  ClassicalElements mean_elements() const;
};

MeanClassicState initialize_classic(const CartesianState& x0, const GravityModel& model, bool calibrate);

CartesianState propagate_classic(const MeanClassicState& m, double t);

}  // namespace j2lab
