#pragma once

// Truncated Taylor scalars over the eight canonical variables.
//   Jet1: value and gradient.
//   Jet2: value, gradient and Hessian.
// Every elementary function f is propagated by the chain rule
//   grad f(u) = f'(u) grad u
//   hess f(u) = f'(u) hess u + f''(u) grad u grad u^T
// which is all the Poisson-bracket machinery needs.

#include <Eigen/Core>

#include <cmath>
#include <concepts>
#include <type_traits>

namespace j2lab {

inline constexpr int kCanonicalDim = 8;
using Vec8 = Eigen::Matrix<double, kCanonicalDim, 1>;
using Mat8 = Eigen::Matrix<double, kCanonicalDim, kCanonicalDim>;

struct Jet1 {
  double v = 0.0;
  Vec8 g = Vec8::Zero();

  Jet1() = default;
  Jet1(double value) : v(value) {}  // NOLINT: constants promote implicitly
  Jet1(double value, const Vec8& grad) : v(value), g(grad) {}

  static Jet1 variable(double value, int index) {
    Jet1 j(value);
    j.g[index] = 1.0;
    return j;
  }

  // Applies a scalar function with first derivative d1 (second derivative unused).
  Jet1 chain(double value, double d1, double /*d2*/) const { return {value, d1 * g}; }

  Jet1& operator+=(const Jet1& b) { v += b.v; g += b.g; return *this; }
  Jet1& operator-=(const Jet1& b) { v -= b.v; g -= b.g; return *this; }
  Jet1& operator*=(const Jet1& b) { g = g * b.v + b.g * v; v *= b.v; return *this; }
  Jet1& operator*=(double b) { v *= b; g *= b; return *this; }
};

struct Jet2 {
  double v = 0.0;
  Vec8 g = Vec8::Zero();
  Mat8 h = Mat8::Zero();

  Jet2() = default;
  Jet2(double value) : v(value) {}  // NOLINT: constants promote implicitly
  Jet2(double value, const Vec8& grad, const Mat8& hess) : v(value), g(grad), h(hess) {}

  static Jet2 variable(double value, int index) {
    Jet2 j(value);
    j.g[index] = 1.0;
    return j;
  }

  Jet2 chain(double value, double d1, double d2) const {
    Jet2 out;
    out.v = value;
    out.g = d1 * g;
    out.h.noalias() = d1 * h;
    out.h.noalias() += d2 * (g * g.transpose());
    return out;
  }

  Jet2& operator+=(const Jet2& b) { v += b.v; g += b.g; h += b.h; return *this; }
  Jet2& operator-=(const Jet2& b) { v -= b.v; g -= b.g; h -= b.h; return *this; }
  Jet2& operator*=(const Jet2& b) {
    Mat8 cross = g * b.g.transpose();
    h = h * b.v + b.h * v + cross + cross.transpose();
    g = g * b.v + b.g * v;
    v *= b.v;
    return *this;
  }
  Jet2& operator*=(double b) { v *= b; g *= b; h *= b; return *this; }
};

template <class J>
concept JetType = std::is_same_v<J, Jet1> || std::is_same_v<J, Jet2>;

template <JetType J> J operator+(J a, const J& b) { return a += b; }
template <JetType J> J operator-(J a, const J& b) { return a -= b; }
template <JetType J> J operator*(J a, const J& b) { return a *= b; }
template <JetType J> J operator+(J a, double b) { a.v += b; return a; }
template <JetType J> J operator+(double a, J b) { b.v += a; return b; }
template <JetType J> J operator-(J a, double b) { a.v -= b; return a; }
template <JetType J> J operator-(double a, const J& b) { J r = b; r *= -1.0; r.v += a; return r; }
template <JetType J> J operator-(J a) { a *= -1.0; return a; }
template <JetType J> J operator*(J a, double b) { return a *= b; }
template <JetType J> J operator*(double a, J b) { return b *= a; }

template <JetType J>
J reciprocal(const J& a) {
  const double inv = 1.0 / a.v;
  return a.chain(inv, -inv * inv, 2.0 * inv * inv * inv);
}

template <JetType J> J operator/(const J& a, const J& b) { return a * reciprocal(b); }
template <JetType J> J operator/(J a, double b) { return a *= 1.0 / b; }
template <JetType J> J operator/(double a, const J& b) { return reciprocal(b) * a; }

template <JetType J>
J sqrt(const J& a) {
  const double s = std::sqrt(a.v);
  return a.chain(s, 0.5 / s, -0.25 / (s * a.v));
}

template <JetType J>
J sin(const J& a) {
  const double s = std::sin(a.v), c = std::cos(a.v);
  return a.chain(s, c, -s);
}

template <JetType J>
J cos(const J& a) {
  const double s = std::sin(a.v), c = std::cos(a.v);
  return a.chain(c, -s, -c);
}

template <JetType J>
J atan(const J& a) {
  const double d = 1.0 / (1.0 + a.v * a.v);
  return a.chain(std::atan(a.v), d, -2.0 * a.v * d * d);
}

// atan2(y, x) with derivatives taken from atan(y/x); valid away from the origin.
template <JetType J>
J atan2(const J& y, const J& x) {
  const double angle = std::atan2(y.v, x.v);
  J ratio_angle = atan(y / x);
  ratio_angle.v = angle;
  return ratio_angle;
}

inline double value_of(double x) { return x; }
inline double value_of(const Jet1& x) { return x.v; }
inline double value_of(const Jet2& x) { return x.v; }

// Integer power by repeated squaring; works for double and jets alike.
template <class S>
S ipow(const S& base, int n) {
  S result(1.0);
  S b = base;
  while (n > 0) {
    if (n & 1) result = result * b;
    b = b * b;
    n >>= 1;
  }
  return result;
}

// Canonical symplectic action J v for v = (dq, dp): returns (dp, -dq).
inline Vec8 symplectic(const Vec8& v) {
  Vec8 out;
  out.head<4>() = v.tail<4>();
  out.tail<4>() = -v.head<4>();
  return out;
}

}  // namespace j2lab
