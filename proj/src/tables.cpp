#include "j2lab/tables.hpp"

#include <ostream>
#include <sstream>
#include <string>

namespace j2lab {

namespace {

// Expanded polynomials in s^2 (ascending powers), with cos^2 I = 1 - s^2 substituted.
// Secular rows carry l = 0; long-period rows use l for the sin(2 l g) harmonic.
constexpr TableEntry kSecularThird[] = {
    {0, 0, 0, 0, 6, {0, 0, -576, 2592, -3888, 1944}},
    {0, 1, 0, 0, 6, {-256, 1920, -6496, 11952, -11448, 4428}},
    {0, 2, 0, 0, 6, {0, 0, 144, -648, 972, -486}},
    {0, 0, 0, 1, 6, {-256, 1920, -7328, 15696, -17064, 7236}},
    {0, 1, 0, 1, 6, {-2304, 17280, -53264, 84168, -67932, 22302}},
    {0, 2, 0, 1, 6, {0, 0, 432, -1944, 2916, -1458}},
    {0, 0, 0, 2, 6, {-2048, 15360, -45312, 65664, -46656, 12960}},
    {0, 1, 0, 2, 6, {-8704, 65280, -192672, 279504, -198936, 55404}},
    {0, 2, 0, 2, 6, {0, 0, 72, -324, 486, -243}},
    {0, 0, 0, 3, 6, {-5120, 38400, -111744, 157248, -106272, 27216}},
    {0, 1, 0, 3, 6, {-15360, 115200, -338816, 487872, -343008, 93744}},
    {0, 0, 0, 4, 6, {-4096, 30720, -91648, 135936, -100224, 29376}},
    {0, 1, 0, 4, 6, {-10240, 76800, -229120, 339840, -250560, 73440}},
    {0, 0, 1, 0, 6, {0, 1152, -13248, 40608, -47952, 19440}},
    {0, 1, 1, 0, 6, {-1536, 10240, -42112, 95616, -101952, 39744}},
    {0, 2, 1, 0, 6, {0, -144, 2736, -9396, 11664, -4860}},
    {0, 0, 1, 1, 6, {-1536, 10752, -48960, 117504, -128304, 50544}},
    {0, 1, 1, 1, 6, {-10752, 64512, -196944, 355008, -334404, 122580}},
    {0, 2, 1, 1, 6, {0, -288, 6336, -22248, 27864, -11664}},
    {0, 0, 1, 2, 6, {-9216, 50688, -118656, 153216, -109728, 33696}},
    {0, 1, 1, 2, 6, {-30720, 178176, -439680, 588288, -424800, 128736}},
    {0, 2, 1, 2, 6, {0, 0, 864, -3456, 4536, -1944}},
    {0, 0, 1, 3, 6, {-12288, 67584, -147456, 161280, -89856, 20736}},
    {0, 1, 1, 3, 6, {-30720, 180224, -426752, 514560, -318528, 81216}},
    {0, 0, 2, 0, 6, {0, 13824, -100224, 239328, -234576, 81648}},
    {0, 1, 2, 0, 6, {-2304, 28800, -190368, 472752, -481248, 172368}},
    {0, 2, 2, 0, 6, {0, -2160, 20196, -53352, 54999, -19683}},
    {0, 0, 2, 1, 6, {-2304, 28800, -179424, 438480, -447552, 162000}},
    {0, 1, 2, 1, 6, {-11520, 84096, -428256, 1019088, -1044864, 381456}},
    {0, 2, 2, 1, 6, {0, -3456, 32832, -87696, 91368, -33048}},
    {0, 0, 2, 2, 6, {-9216, 32256, -67968, 133056, -150336, 62208}},
    {0, 1, 2, 2, 6, {-23040, 112896, -308160, 549792, -524160, 192672}},
    {0, 2, 2, 2, 6, {0, 0, 2592, -9072, 10368, -3888}},
    {0, 0, 3, 0, 6, {0, 51840, -295488, 590976, -502848, 155520}},
    {0, 1, 3, 0, 6, {0, 96768, -606528, 1276992, -1121472, 354240}},
    {0, 2, 3, 0, 6, {0, -10368, 66096, -139968, 123120, -38880}},
    {0, 0, 3, 1, 6, {0, 41472, -273024, 601344, -549504, 179712}},
    {0, 1, 3, 1, 6, {0, 124416, -748224, 1574208, -1401408, 451008}},
    {0, 2, 3, 1, 6, {0, -10368, 62208, -132192, 119232, -38880}},
    {0, 0, 4, 0, 6, {0, 62208, -295488, 513216, -388800, 108864}},
    {0, 1, 4, 0, 6, {0, 152064, -722304, 1254528, -950400, 266112}},
    {0, 2, 4, 0, 6, {0, -15552, 73872, -128304, 97200, -27216}},
};

constexpr TableEntry kLongPeriodSecond[] = {
    {1, 0, 0, 0, 5, {-256, 1536, -2784, 1440, 216}},
    {1, 1, 0, 0, 5, {192, -1152, 2232, -1512, 162}},
    {2, 0, 0, 0, 4, {-24, 108, -162, 81}},
    {1, 0, 0, 1, 5, {-1920, 11520, -22848, 16704, -2808}},
    {1, 1, 0, 1, 5, {768, -4608, 9312, -7200, 1512}},
    {2, 0, 0, 1, 4, {-48, 216, -324, 162}},
    {1, 0, 0, 2, 5, {-5248, 31488, -66720, 58464, -17280}},
    {1, 1, 0, 2, 5, {1152, -6912, 14736, -13104, 3996}},
    {2, 0, 0, 2, 4, {-72, 324, -486, 243}},
    {1, 0, 0, 3, 5, {-6400, 38400, -84768, 81504, -28728}},
    {1, 1, 0, 3, 5, {768, -4608, 10080, -9504, 3240}},
    {1, 0, 0, 4, 5, {-3072, 18432, -40896, 39744, -14256}},
    {1, 0, 1, 0, 5, {0, -3264, 15792, -23976, 11448}},
    {1, 1, 1, 0, 5, {2112, -10368, 15528, -6732, -540}},
    {2, 0, 1, 0, 4, {-360, 1440, -1890, 810}},
    {1, 0, 1, 1, 5, {-6528, 21120, -11856, -17640, 14904}},
    {1, 1, 1, 1, 5, {7296, -36672, 60912, -37368, 5832}},
    {2, 0, 1, 1, 4, {-720, 2880, -3780, 1620}},
    {1, 0, 1, 2, 5, {-24192, 113472, -201744, 161928, -49464}},
    {1, 1, 1, 2, 5, {9600, -50880, 94992, -73800, 20088}},
    {2, 0, 1, 2, 4, {-864, 3456, -4536, 1944}},
    {1, 0, 1, 3, 5, {-23040, 120576, -236928, 206784, -67392}},
    {1, 1, 1, 3, 5, {4608, -25344, 50112, -42336, 12960}},
    {1, 0, 2, 0, 5, {19584, -117504, 254448, -236016, 79488}},
    {1, 1, 2, 0, 5, {6144, -18336, 6432, 17856, -12096}},
    {2, 0, 2, 0, 4, {-1836, 6480, -7479, 2835}},
    {1, 0, 2, 1, 5, {36864, -227520, 491760, -454464, 153360}},
    {1, 1, 2, 1, 5, {16896, -58560, 58368, -8064, -8640}},
    {2, 0, 2, 1, 4, {-3456, 12096, -13824, 5184}},
    {1, 0, 2, 2, 5, {0, -6912, 33264, -52704, 26352}},
    {1, 1, 2, 2, 5, {16128, -69120, 106272, -69696, 16416}},
    {2, 0, 2, 2, 4, {-2592, 9072, -10368, 3888}},
    {1, 0, 3, 0, 5, {86400, -428544, 780192, -620352, 182304}},
    {1, 1, 3, 0, 5, {0, 32832, -103680, 108864, -38016}},
    {2, 0, 3, 0, 4, {-3888, 12312, -12960, 4536}},
    {1, 0, 3, 1, 5, {110592, -514944, 912384, -722304, 214272}},
    {1, 1, 3, 1, 5, {4608, 10368, -65664, 81792, -31104}},
    {2, 0, 3, 1, 4, {-5184, 15552, -15552, 5184}},
    {1, 0, 4, 0, 5, {103680, -445824, 715392, -508032, 134784}},
    {1, 1, 4, 0, 5, {-13824, 76032, -145152, 117504, -34560}},
    {2, 0, 4, 0, 4, {-3888, 11664, -11664, 3888}},
};

constexpr TableEntry kBrouwer[] = {
    {1, 0, 0, 0, 4, {-32, -5856, 13740, -7950}},
    {1, 0, 1, 0, 4, {-4640, 12576, -10740, 2850}},
    {1, 0, 2, 0, 4, {5152, -16384, 17100, -5850}},
    {1, 0, 3, 0, 4, {1568, -2688, -180, 1350}},
    {2, 0, 0, 0, 4, {-2548, 8400, -9225, 3375}},
};

}  // namespace

const CoefficientTables& coefficient_tables() {
  static const CoefficientTables tables{kSecularThird, kLongPeriodSecond, kBrouwer};
  return tables;
}

namespace {

int printed_column(const TableEntry& e, bool long_period_columns) {
  return long_period_columns ? 2 * (e.l - 1) + e.k : e.k;
}

std::string polynomial_text(const TableEntry& e) {
  std::ostringstream os;
  bool first = true;
  for (int m = e.n - 1; m >= 0; --m) {
    const std::int64_t c = e.c[m];
    if (c == 0) continue;
    os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    const std::int64_t a = c < 0 ? -c : c;
    if (m == 0) {
      os << a;
    } else {
      if (a != 1) os << a << ' ';
      os << "s^" << 2 * m;
    }
    first = false;
  }
  return first ? "0" : os.str();
}

void write_table(std::ostream& os, std::span<const TableEntry> table, bool long_period_columns,
                 const char* const headers[3]) {
  os << "i,j";
  for (int col = 0; col < 3; ++col) os << " | " << headers[col];
  os << '\n';
  for (int i = 0; i <= 4; ++i) {
    for (int j = 0; j <= 4 - i; ++j) {
      os << i << ',' << j;
      for (int col = 0; col < 3; ++col) {
        std::string cell = "0";
        for (const TableEntry& e : table) {
          if (e.i == i && e.j == j && printed_column(e, long_period_columns) == col) cell = polynomial_text(e);
        }
        os << " | " << cell;
      }
      os << '\n';
    }
  }
}

}  // namespace

std::int64_t table_checksum(std::span<const TableEntry> table, bool long_period_columns) {
  std::int64_t total = 0;
  for (const TableEntry& e : table) {
    std::int64_t scaled = 0;
    std::int64_t pow3 = 243;
    for (int m = 0; m < e.n; ++m) {
      scaled += e.c[m] * pow3;
      pow3 /= 3;
    }
    total += (1 + printed_column(e, long_period_columns) + 3 * e.i + 7 * e.j) * scaled;
  }
  return total;
}

void write_coefficient_tables(std::ostream& os) {
  const CoefficientTables& t = coefficient_tables();
  os << "# Inclination polynomials, expanded in s = sin I with cos^2 I = 1 - s^2\n";
  os << "# Third-order secular term q_{k,i,j}: multiplies (1+delta)^i (1+upsilon)^j e^(2k)\n";
  const char* const q_headers[3] = {"k=0", "k=1", "k=2"};
  write_table(os, t.q, false, q_headers);
  os << "\n# Second-order long-period generator b_{l,k,i,j}: multiplies (1+delta)^i (1+upsilon)^j e^(2k+2l) s^(2l) sin(2lg)\n";
  const char* const b_headers[3] = {"l=1,k=0", "l=1,k=1", "l=2,k=0"};
  write_table(os, t.b, true, b_headers);
  os << "\n# Brouwer second-order long-period comparator b_{j,i}\n";
  for (const TableEntry& e : t.brouwer) os << "b_{" << e.l << ',' << e.i << "} = " << polynomial_text(e) << '\n';
}

}  // namespace j2lab
