#pragma once

// Double-double arithmetic: an unevaluated sum hi + lo with |lo| <= ulp(hi)/2,
// giving about 106 bits of significand. Algorithms follow Dekker/Knuth error-free
// transformations; fma is used for the exact product.

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <string_view>

namespace j2lab {

namespace dd_detail {

inline void two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  const double bb = s - a;
  e = (a - (s - bb)) + (b - bb);
}

inline void quick_two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  e = b - (s - a);
}

inline void two_prod(double a, double b, double& p, double& e) {
  p = a * b;
  e = std::fma(a, b, -p);
}

}  // namespace dd_detail

struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  constexpr DoubleDouble() = default;
  constexpr DoubleDouble(double x) : hi(x), lo(0.0) {}  // NOLINT: implicit widening is intended
  constexpr DoubleDouble(int x) : hi(static_cast<double>(x)), lo(0.0) {}  // NOLINT
  constexpr DoubleDouble(double h, double l) : hi(h), lo(l) {}

  // Parses a decimal literal such as "-0.1234567890123456789012345e-3" with
  // full double-double accuracy.
  static DoubleDouble from_string(std::string_view text);

  explicit operator double() const { return hi; }

  DoubleDouble& operator+=(const DoubleDouble& b);
  DoubleDouble& operator-=(const DoubleDouble& b);
  DoubleDouble& operator*=(const DoubleDouble& b);
  DoubleDouble& operator/=(const DoubleDouble& b);
};

inline DoubleDouble operator-(const DoubleDouble& a) { return {-a.hi, -a.lo}; }

inline DoubleDouble operator+(const DoubleDouble& a, const DoubleDouble& b) {
  double s, e, t, f;
  dd_detail::two_sum(a.hi, b.hi, s, e);
  dd_detail::two_sum(a.lo, b.lo, t, f);
  e += t;
  dd_detail::quick_two_sum(s, e, s, e);
  e += f;
  dd_detail::quick_two_sum(s, e, s, e);
  return {s, e};
}

inline DoubleDouble operator+(const DoubleDouble& a, double b) {
  double s, e;
  dd_detail::two_sum(a.hi, b, s, e);
  e += a.lo;
  dd_detail::quick_two_sum(s, e, s, e);
  return {s, e};
}
inline DoubleDouble operator+(double a, const DoubleDouble& b) { return b + a; }

inline DoubleDouble operator-(const DoubleDouble& a, const DoubleDouble& b) { return a + (-b); }
inline DoubleDouble operator-(const DoubleDouble& a, double b) { return a + (-b); }
inline DoubleDouble operator-(double a, const DoubleDouble& b) { return (-b) + a; }

inline DoubleDouble operator*(const DoubleDouble& a, const DoubleDouble& b) {
  double p, e;
  dd_detail::two_prod(a.hi, b.hi, p, e);
  e += a.hi * b.lo + a.lo * b.hi;
  dd_detail::quick_two_sum(p, e, p, e);
  return {p, e};
}

inline DoubleDouble operator*(const DoubleDouble& a, double b) {
  double p, e;
  dd_detail::two_prod(a.hi, b, p, e);
  e += a.lo * b;
  dd_detail::quick_two_sum(p, e, p, e);
  return {p, e};
}
inline DoubleDouble operator*(double a, const DoubleDouble& b) { return b * a; }

inline DoubleDouble operator/(const DoubleDouble& a, const DoubleDouble& b) {
  const double q1 = a.hi / b.hi;
  DoubleDouble r = a - b * q1;
  const double q2 = r.hi / b.hi;
  r = r - b * q2;
  const double q3 = r.hi / b.hi;
  double s, e;
  dd_detail::quick_two_sum(q1, q2, s, e);
  return DoubleDouble(s, e) + q3;
}
inline DoubleDouble operator/(const DoubleDouble& a, double b) { return a / DoubleDouble(b); }
inline DoubleDouble operator/(double a, const DoubleDouble& b) { return DoubleDouble(a) / b; }

inline DoubleDouble& DoubleDouble::operator+=(const DoubleDouble& b) { return *this = *this + b; }
inline DoubleDouble& DoubleDouble::operator-=(const DoubleDouble& b) { return *this = *this - b; }
inline DoubleDouble& DoubleDouble::operator*=(const DoubleDouble& b) { return *this = *this * b; }
inline DoubleDouble& DoubleDouble::operator/=(const DoubleDouble& b) { return *this = *this / b; }

inline bool operator==(const DoubleDouble& a, const DoubleDouble& b) { return a.hi == b.hi && a.lo == b.lo; }
inline bool operator!=(const DoubleDouble& a, const DoubleDouble& b) { return !(a == b); }
inline bool operator<(const DoubleDouble& a, const DoubleDouble& b) {
  return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}
inline bool operator>(const DoubleDouble& a, const DoubleDouble& b) { return b < a; }
inline bool operator<=(const DoubleDouble& a, const DoubleDouble& b) { return !(b < a); }
inline bool operator>=(const DoubleDouble& a, const DoubleDouble& b) { return !(a < b); }

inline DoubleDouble abs(const DoubleDouble& a) { return a.hi < 0.0 ? -a : a; }
inline DoubleDouble fabs(const DoubleDouble& a) { return abs(a); }

inline DoubleDouble sqrt(const DoubleDouble& a) {
  if (a.hi <= 0.0) return DoubleDouble(a.hi == 0.0 ? 0.0 : std::numeric_limits<double>::quiet_NaN());
  const double y = std::sqrt(a.hi);
  double p, e;
  dd_detail::two_prod(y, y, p, e);
  const DoubleDouble r = (a - DoubleDouble(p, e));
  return DoubleDouble(y) + r.hi / (2.0 * y);
}

DoubleDouble sin(const DoubleDouble& a);
DoubleDouble cos(const DoubleDouble& a);

inline DoubleDouble dd_pi() { return {3.141592653589793116e+00, 1.224646799147353207e-16}; }

// Rounds to 17 significant digits when streamed, which is the lossless
// representation of the leading double; use to_string for all 32 digits.
std::ostream& operator<<(std::ostream& os, const DoubleDouble& a);
std::string to_string(const DoubleDouble& a, int digits = 32);

// Scalar-generic helpers so templated numerics can parse and narrow uniformly.
template <class S>
S scalar_from_string(std::string_view text);

template <>
inline double scalar_from_string<double>(std::string_view text) {
  return std::stod(std::string(text));
}

template <>
inline DoubleDouble scalar_from_string<DoubleDouble>(std::string_view text) {
  return DoubleDouble::from_string(text);
}

inline double to_double(double x) { return x; }
inline double to_double(const DoubleDouble& x) { return x.hi + x.lo; }

}  // namespace j2lab

namespace Eigen {

template <>
struct NumTraits<j2lab::DoubleDouble> : GenericNumTraits<j2lab::DoubleDouble> {
  using Real = j2lab::DoubleDouble;
  using NonInteger = j2lab::DoubleDouble;
  using Nested = j2lab::DoubleDouble;
  using Literal = j2lab::DoubleDouble;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 0,
    ReadCost = 2,
    AddCost = 20,
    MulCost = 10
  };
  static inline Real epsilon() { return Real(4.93038065763132e-32); }
  static inline Real dummy_precision() { return Real(1e-28); }
  static inline Real highest() { return Real(std::numeric_limits<double>::max()); }
  static inline Real lowest() { return Real(-std::numeric_limits<double>::max()); }
  static inline int digits10() { return 31; }
};

}  // namespace Eigen
