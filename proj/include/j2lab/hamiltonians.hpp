#pragma once

// Generating functions and secular Hamiltonian terms of the extended-phase-space
// theory, written once over a scalar S (double, Jet1 or Jet2).

#include <cmath>

#include "j2lab/dsvars.hpp"
#include "j2lab/errors.hpp"
#include "j2lab/tables.hpp"

namespace j2lab {

inline constexpr double kCriticalDivisorMin = 1e-3;

namespace detail {

template <class S>
void guard_divisor(const S& Delta) {
  const double d = value_of(Delta);
  if (!(std::abs(d) >= kCriticalDivisorMin)) throw CriticalInclination(d);
}

// Gamma (R/rho)^(2n), the common scale of the order-n terms.
template <class S>
S scale(const AuxSet<S>& a, const GravityModel& m, int n) {
  const S ratio = m.re * m.re / (a.rho * a.rho);
  return a.Gamma * ipow(ratio, n);
}

}  // namespace detail

// Periodic first-order term of the Hamiltonian: mu R^2 P2(s sin(theta)) / (r Gamma).
template <class S>
S main_problem_perturbation(const CanonicalPoint<S>& pt) {
  using std::cos;
  const GravityModel& m = pt.model;
  const AuxSet<S> a = auxiliary(pt);
  const S r = a.p / (1.0 + a.e * cos(pt.phi));
  const S p2 = -0.25 * (2.0 - 3.0 * a.s2 + 3.0 * a.s2 * cos(2.0 * (pt.g + pt.phi)));
  return m.mu * m.re * m.re * p2 / (r * a.Gamma);
}

template <class S>
S w1(const CanonicalPoint<S>& pt) {
  using std::sin;
  const AuxSet<S> a = auxiliary(pt);
  const S& s = a.s2;
  const S& phi = pt.phi;
  const S two_g = 2.0 * pt.g;
  const S sum = (4.0 - 6.0 * s) * a.e * sin(phi) + 3.0 * a.e * s * sin(two_g + phi) + 3.0 * s * sin(two_g + 2.0 * phi) +
                a.e * s * sin(two_g + 3.0 * phi);
  return -0.125 * detail::scale(a, pt.model, 1) * sum;
}

template <class S>
S w2(const CanonicalPoint<S>& pt) {
  using std::sin;
  const AuxSet<S> a = auxiliary(pt);
  const S& s = a.s2;
  const S& d = a.delta;
  const S& u = a.upsilon;
  const S& e = a.e;
  const S& e2 = a.e2;
  const S& phi = pt.phi;
  const S g2 = 2.0 * pt.g;
  const S g4 = 4.0 * pt.g;
  const S sm1 = s - 1.0;
  const S t3s2 = 3.0 * s - 2.0;

  S sum = 60.0 * (45.0 * s * s + 72.0 * s - 80.0 + 168.0 * s * sm1 * d - 4.0 * (33.0 * s * s - 48.0 * s + 16.0) * u) * e *
          sin(phi);
  sum += 360.0 * ((5.0 * s - 4.0) * s + 4.0 * s * sm1 * d) * e2 * sin(2.0 * phi);
  sum -= 90.0 * (225.0 * s - 206.0 + 168.0 * sm1 * d + 4.0 * t3s2 * u) * s * e * sin(g2 + phi);
  sum -= 120.0 *
         (39.0 * s - 38.0 + 36.0 * sm1 * d - 2.0 * t3s2 * u + 2.0 * e2 * (3.0 * s - 4.0 + 6.0 * sm1 * d - t3s2 * u)) * s *
         sin(g2 + 2.0 * phi);
  sum += 10.0 * (75.0 * s - 42.0 - 24.0 * sm1 * d + 28.0 * t3s2 * u) * s * e * sin(g2 + 3.0 * phi);
  sum += 30.0 * (15.0 * s - 14.0 + 12.0 * sm1 * d) * s * e2 * sin(g2 + 4.0 * phi);
  sum += 45.0 * (4.0 * u + 5.0) * s * s * e * sin(g4 + 3.0 * phi);
  sum += 45.0 * (2.0 * (u + 1.0) + (2.0 * u + 3.0) * e2) * s * s * sin(g4 + 4.0 * phi);
  sum += 9.0 * (4.0 * u + 5.0) * s * s * e * sin(g4 + 5.0 * phi);
  return detail::scale(a, pt.model, 2) * sum / 3840.0;
}

template <class S>
S v1(const CanonicalPoint<S>& pt, bool drop_hidden = false) {
  using std::sin;
  const AuxSet<S> a = auxiliary(pt, drop_hidden);
  detail::guard_divisor(a.Delta);
  const S bracket = 15.0 * a.s2 - 14.0 + 12.0 * (a.s2 - 1.0) * a.delta;
  return detail::scale(a, pt.model, 1) * (3.0 / 32.0) * bracket * a.s2 * a.e2 * sin(2.0 * pt.g) / a.Delta;
}

template <class S>
S v2(const CanonicalPoint<S>& pt, bool drop_hidden = false) {
  using std::sin;
  const AuxSet<S> a = auxiliary(pt, drop_hidden);
  detail::guard_divisor(a.Delta);
  const S one_d = 1.0 + a.delta;
  const S one_u = 1.0 + a.upsilon;
  S sum(0.0);
  for (const TableEntry& entry : coefficient_tables().b) {
    const S term = entry.eval(a.s2) * ipow(one_d, entry.i) * ipow(one_u, entry.j) *
                   ipow(a.e2, entry.k + entry.l) * ipow(a.s2, entry.l) * sin(2.0 * entry.l * pt.g);
    sum += term;
  }
  const S D3 = a.Delta * a.Delta * a.Delta;
  return detail::scale(a, pt.model, 2) * (3.0 / 1024.0) * sum / D3;
}

// Terms of the secular Hamiltonian, each unweighted by J2^m / m!.
template <class S>
S f_secular(const CanonicalPoint<S>& pt, int order) {
  const AuxSet<S> a = auxiliary(pt);
  const S& s = a.s2;
  switch (order) {
    case 1:
      return detail::scale(a, pt.model, 1) * 0.25 * (3.0 * s - 2.0);
    case 2: {
      const S bracket = 4.0 * (15.0 * s * s - 6.0 * s - 4.0) + 3.0 * (5.0 * s * s + 8.0 * s - 8.0) * a.e2 +
                        24.0 * s * (2.0 * a.e2 + 3.0) * (s - 1.0) * a.delta -
                        2.0 * (a.e2 + 1.0) * (15.0 * s * s - 24.0 * s + 8.0) * a.upsilon;
      return detail::scale(a, pt.model, 2) * bracket / 64.0;
    }
    case 3: {
      detail::guard_divisor(a.Delta);
      const S one_d = 1.0 + a.delta;
      const S one_u = 1.0 + a.upsilon;
      S sum(0.0);
      for (const TableEntry& entry : coefficient_tables().q) {
        sum += entry.eval(s) * ipow(one_d, entry.i) * ipow(one_u, entry.j) * ipow(a.e2, entry.k);
      }
      return detail::scale(a, pt.model, 3) * (3.0 / 1024.0) * sum / (a.Delta * a.Delta);
    }
    default:
      throw ConfigError("f_secular: order must be 1, 2 or 3");
  }
}

// Phi - mu/sqrt(2 Lambda) + sum_{m <= max_order} J2^m / m! F_m.
template <class S>
S secular_hamiltonian(const CanonicalPoint<S>& pt, int max_order) {
  using std::sqrt;
  const double j2 = pt.model.j2;
  S total = pt.Phi - pt.model.mu / sqrt(2.0 * pt.Lambda);
  double weight = 1.0;
  for (int m = 1; m <= max_order; ++m) {
    weight *= j2 / m;
    total += weight * f_secular(pt, m);
  }
  return total;
}

// Brouwer's second-order long-period generator, kept as a size comparator.
double brouwer_v2star(double G, double p, double e, double s, double g, const GravityModel& model);

}  // namespace j2lab
