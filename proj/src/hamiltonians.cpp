#include "j2lab/hamiltonians.hpp"

#include <cmath>

namespace j2lab {

double brouwer_v2star(double G, double p, double e, double s, double g, const GravityModel& model) {
  const double s2 = s * s;
  const double tilde = 5.0 * s2 - 4.0;
  if (!(std::abs(tilde) >= kCriticalDivisorMin)) throw CriticalInclination(tilde);
  const double eta = std::sqrt(1.0 - e * e);
  double sum = 0.0;
  for (const TableEntry& entry : coefficient_tables().brouwer) {
    const int j = entry.l;
    const double outer = std::pow(1.0 + eta, j - 2) / std::pow(tilde, j - 1);
    sum += outer * entry.eval(s2) * std::pow(eta, entry.i) * std::pow(e * e * s2, j) * std::sin(2.0 * j * g);
  }
  const double ratio = model.re / p;
  return G * std::pow(ratio, 4) / 1024.0 / (tilde * tilde) * sum;
}

}  // namespace j2lab
