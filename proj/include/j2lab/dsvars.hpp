#pragma once

// Delaunay-similar variables of the extended phase space.
//
//   phi     true anomaly                 Phi     Kepler-energy action
//   g       argument of perigee          G       total angular momentum
//   h       right ascension of the node  H       polar angular momentum
//   lambda  time element (seconds)       Lambda  minus the total energy, Q
//
// Conjugate pairs are (phi, Phi), (g, G), (h, H), (lambda, Lambda); jets index
// them 0..7 in that order.

#include <cmath>

#include "j2lab/elements.hpp"
#include "j2lab/jet.hpp"

namespace j2lab {

enum class Chart { osculating, prime, mean };

struct DSState {
  double phi = 0.0;
  double g = 0.0;
  double h = 0.0;
  double lambda = 0.0;
  double Phi = 0.0;
  double G = 0.0;
  double H = 0.0;
  double Lambda = 0.0;
  Chart chart = Chart::osculating;

  Vec8 as_vector() const {
    Vec8 v;
    v << phi, g, h, lambda, Phi, G, H, Lambda;
    return v;
  }
  static DSState from_vector(const Vec8& v, Chart c) { return {v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], c}; }
};

// Non-singular companion of the DS chart: argument of latitude and the
// eccentricity vector (C, S) = e (cos g, sin g) replace phi and g, and G
// replaces Phi.
struct RegularState {
  double theta = 0.0;
  double C = 0.0;
  double S = 0.0;
  double h = 0.0;
  double lambda = 0.0;
  double G = 0.0;
  double H = 0.0;
  double Lambda = 0.0;
  Chart chart = Chart::osculating;
};

template <class S>
struct CanonicalPoint {
  S phi, g, h, lambda, Phi, G, H, Lambda;
  GravityModel model;
};

template <class S>
CanonicalPoint<S> seed(const DSState& ds, const GravityModel& model) {
  if constexpr (std::is_same_v<S, double>) {
    return {ds.phi, ds.g, ds.h, ds.lambda, ds.Phi, ds.G, ds.H, ds.Lambda, model};
  } else {
    const Vec8 v = ds.as_vector();
    return {S::variable(v[0], 0), S::variable(v[1], 1), S::variable(v[2], 2), S::variable(v[3], 3),
            S::variable(v[4], 4), S::variable(v[5], 5), S::variable(v[6], 6), S::variable(v[7], 7), model};
  }
}

template <class S>
struct AuxSet {
  S Gamma;    // G - (Phi - mu/sqrt(2 Lambda))/2
  S p;        // (2 Gamma - G)^2 / mu
  S e2;
  S e;
  S rho;      // Gamma sqrt(p/mu)
  S s2;       // sin^2 I
  S c2;       // cos^2 I
  S delta;    // Gamma/G - 1
  S upsilon;  // rho/p - 1
  S Delta;    // critical-inclination divisor
};

// With drop_hidden the O(J2) functions delta and upsilon are zeroed, which
// also reduces Delta to 3(5 s^2 - 4).
template <class S>
AuxSet<S> auxiliary(const CanonicalPoint<S>& pt, bool drop_hidden = false) {
  using std::sqrt;
  const double mu = pt.model.mu;
  AuxSet<S> a;
  const S kepler = mu / sqrt(2.0 * pt.Lambda);
  a.Gamma = pt.G - 0.5 * (pt.Phi - kepler);
  const S w = 2.0 * a.Gamma - pt.G;
  a.p = w * w / mu;
  a.e2 = 1.0 - 2.0 * pt.Lambda * a.p / mu;
  a.e = sqrt(a.e2);
  a.rho = a.Gamma * sqrt(a.p / mu);
  a.c2 = pt.H * pt.H / (pt.G * pt.G);
  a.s2 = 1.0 - a.c2;
  if (drop_hidden) {
    a.delta = S(0.0);
    a.upsilon = S(0.0);
  } else {
    a.delta = a.Gamma / pt.G - 1.0;
    a.upsilon = a.rho / a.p - 1.0;
  }
  a.Delta = 3.0 * (5.0 * a.s2 - 4.0) + 6.0 * (a.s2 - 1.0) * a.delta + 2.0 * (3.0 * a.s2 - 2.0) * a.upsilon;
  return a;
}

// Plain-number auxiliary set including the angle-like quantities.
struct AuxValues {
  double Gamma, rho, p, e, s, c, delta, upsilon, Delta, u;
};
AuxValues aux_values(const DSState& ds, const GravityModel& model);

// Gamma in the polar chart; equals Theta when J2 vanishes.
double gamma_polar(const PolarState& p, const GravityModel& model);

// Gamma in the DS chart.
double gamma_ds(const DSState& ds, const GravityModel& model);

// Builds the osculating DS state from a polar state and the total-energy
// momentum Q = -H. lambda is the time element built from q = p.t.
DSState polar_to_ds(const PolarState& p, double Q, const GravityModel& model);

// Inverse of polar_to_ds, recovering the physical time from lambda.
PolarState ds_to_polar(const DSState& ds, const GravityModel& model);

RegularState nonsingular_of(const DSState& ds, const GravityModel& model);
DSState ds_from_regular(const RegularState& reg, const GravityModel& model);
PolarState regular_to_polar(const RegularState& reg, const GravityModel& model);

// Kepler correction t - lambda = mu (2 Lambda)^(-3/2) (u - e sin u - phi),
// written in terms of e cos(phi) and e sin(phi) so it stays regular at e = 0.
double time_offset(double ecos_phi, double esin_phi, double Lambda, const GravityModel& model);

// Eccentric-anomaly-like angle of the DS chart, continuous with phi.
double eccentric_anomaly_ds(double phi, double e);

// Main-problem Hamiltonian in DS variables; vanishes on the physical manifold.
template <class S>
S ds_hamiltonian(const CanonicalPoint<S>& pt) {
  using std::cos;
  using std::sqrt;
  const GravityModel& m = pt.model;
  const AuxSet<S> a = auxiliary(pt);
  const S r = a.p / (1.0 + a.e * cos(pt.phi));
  const S bracket = 2.0 - 3.0 * a.s2 + 3.0 * a.s2 * cos(2.0 * (pt.g + pt.phi));
  return pt.Phi - m.mu / sqrt(2.0 * pt.Lambda) - m.j2 * (m.mu / r) * (m.re * m.re / a.Gamma) * 0.25 * bracket;
}

}  // namespace j2lab
