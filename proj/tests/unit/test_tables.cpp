#include <gtest/gtest.h>

#include <sstream>

#include "j2lab/tables.hpp"

namespace j2lab {
namespace {

const TableEntry& find(std::span<const TableEntry> table, int l, int k, int i, int j) {
  for (const TableEntry& e : table) {
    if (e.l == l && e.k == k && e.i == i && e.j == j) return e;
  }
  throw std::out_of_range("table entry not found");
}

double cube(double x) { return x * x * x; }

TEST(Tables, ChecksumsFreezeTheData) {
  const CoefficientTables& t = coefficient_tables();
  EXPECT_EQ(table_checksum(t.q, false), -87109263);
  EXPECT_EQ(table_checksum(t.b, true), 145220364);
}

TEST(Tables, ThirdOrderSecularSpotValue) {
  const TableEntry& q = find(coefficient_tables().q, 0, 0, 0, 0);
  for (double s2 : {0.0, 0.1, 0.5, 0.98}) {
    EXPECT_NEAR(q.eval(s2), -72.0 * cube(2.0 - 3.0 * s2) * s2 * s2, 1e-9);
  }
}

TEST(Tables, LongPeriodSpotValue) {
  const TableEntry& b = find(coefficient_tables().b, 2, 0, 0, 0);
  for (double s2 : {0.0, 0.3, 0.7, 1.0}) EXPECT_NEAR(b.eval(s2), -3.0 * cube(2.0 - 3.0 * s2), 1e-10);
}

TEST(Tables, BrouwerSpotValue) {
  const TableEntry& b = find(coefficient_tables().brouwer, 2, 0, 0, 0);
  for (double s2 : {0.0, 0.4, 0.95}) {
    const double f = 15.0 * s2 - 14.0;
    EXPECT_NEAR(b.eval(s2), f * f * (15.0 * s2 - 13.0), 1e-9);
  }
}

TEST(Tables, BrouwerTableHasFiveEntries) { EXPECT_EQ(coefficient_tables().brouwer.size(), 5u); }

TEST(Tables, ExportListsBothTables) {
  std::ostringstream os;
  write_coefficient_tables(os);
  const std::string text = os.str();
  EXPECT_NE(text.find("q"), std::string::npos);
  EXPECT_NE(text.find("b"), std::string::npos);
  EXPECT_GT(std::count(text.begin(), text.end(), '\n'), 20);
}

}  // namespace
}  // namespace j2lab
