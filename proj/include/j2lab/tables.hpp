#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>

namespace j2lab {

// One inclination polynomial sum_m c[m] s^(2m) together with its indices.
//   third-order secular table:   l = 0, k = power of e^2, i = power of (1+delta), j = power of (1+upsilon)
//   long-period second order:     l = harmonic (sin 2lg), k, i, j as above
//   Brouwer comparison generator: l = j of the comparator, i = power of eta, k = j = 0
struct TableEntry {
  int l;
  int k;
  int i;
  int j;
  int n;
  std::array<std::int64_t, 6> c;

  template <class S>
  S eval(const S& s2) const {
    S acc(static_cast<double>(c[n - 1]));
    for (int m = n - 2; m >= 0; --m) acc = acc * s2 + static_cast<double>(c[m]);
    return acc;
  }
};

struct CoefficientTables {
  std::span<const TableEntry> q;        // third-order secular term
  std::span<const TableEntry> b;        // second-order long-period generator
  std::span<const TableEntry> brouwer;  // Brouwer second-order long-period comparator
};

const CoefficientTables& coefficient_tables();

// Integrity fingerprint: sum over entries of (1 + column + 3 i + 7 j) * 3^5 * P(s^2 = 1/3),
// where column is the printed column of the entry. Exact in 64-bit integers.
std::int64_t table_checksum(std::span<const TableEntry> table, bool long_period_columns);

// Human-auditable dump in printed row order, one row per (i, j).
void write_coefficient_tables(std::ostream& os);

}  // namespace j2lab
