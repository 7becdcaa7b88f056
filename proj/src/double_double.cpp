#include "j2lab/double_double.hpp"

#include <cctype>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace j2lab {

namespace {

DoubleDouble pow10(int k) {
  DoubleDouble result(1.0);
  DoubleDouble base(10.0);
  int n = k < 0 ? -k : k;
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return k < 0 ? DoubleDouble(1.0) / result : result;
}

// Sine and cosine of |r| <= pi/4 by Taylor series.
void sincos_reduced(const DoubleDouble& r, DoubleDouble& s, DoubleDouble& c) {
  const DoubleDouble r2 = r * r;
  DoubleDouble term = r;
  s = r;
  for (int n = 1; n < 30; ++n) {
    term = term * r2 / static_cast<double>((2 * n) * (2 * n + 1));
    term = -term;
    s += term;
    if (std::abs(term.hi) < 1e-34) break;
  }
  term = DoubleDouble(1.0);
  c = term;
  for (int n = 1; n < 30; ++n) {
    term = term * r2 / static_cast<double>((2 * n - 1) * (2 * n));
    term = -term;
    c += term;
    if (std::abs(term.hi) < 1e-34) break;
  }
}

void sincos(const DoubleDouble& a, DoubleDouble& s, DoubleDouble& c) {
  const DoubleDouble half_pi = dd_pi() * 0.5;
  const double k = std::nearbyint(a.hi / half_pi.hi);
  const DoubleDouble r = a - half_pi * k;
  DoubleDouble sr, cr;
  sincos_reduced(r, sr, cr);
  const long quadrant = static_cast<long>(std::fmod(k, 4.0) + 4.0) % 4;
  switch (quadrant) {
    case 0: s = sr; c = cr; break;
    case 1: s = cr; c = -sr; break;
    case 2: s = -sr; c = -cr; break;
    default: s = -cr; c = sr; break;
  }
}

}  // namespace

DoubleDouble DoubleDouble::from_string(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  DoubleDouble value(0.0);
  int exponent = 0;
  bool seen_point = false;
  bool seen_digit = false;
  for (; i < text.size(); ++i) {
    const char ch = text[i];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      value = value * 10.0 + static_cast<double>(ch - '0');
      if (seen_point) --exponent;
      seen_digit = true;
    } else if (ch == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw std::invalid_argument("not a number: " + std::string(text));
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    exponent += std::stoi(std::string(text.substr(i + 1)));
  }
  if (exponent != 0) value = exponent > 0 ? value * pow10(exponent) : value / pow10(-exponent);
  return negative ? -value : value;
}

DoubleDouble sin(const DoubleDouble& a) {
  DoubleDouble s, c;
  sincos(a, s, c);
  return s;
}

DoubleDouble cos(const DoubleDouble& a) {
  DoubleDouble s, c;
  sincos(a, s, c);
  return c;
}

std::string to_string(const DoubleDouble& a, int digits) {
  if (std::isnan(a.hi)) return "nan";
  if (a.hi == 0.0) return "0";
  std::string out;
  DoubleDouble x = a.hi < 0.0 ? -a : a;
  if (a.hi < 0.0) out.push_back('-');
  int e = static_cast<int>(std::floor(std::log10(x.hi)));
  DoubleDouble m = x / pow10(e);
  if (m.hi >= 10.0) {
    m /= 10.0;
    ++e;
  } else if (m.hi < 1.0) {
    m *= 10.0;
    --e;
  }
  std::string mantissa;
  for (int k = 0; k < digits + 1; ++k) {
    int d = static_cast<int>(std::floor(m.hi));
    if (d < 0) d = 0;
    if (d > 9) d = 9;
    mantissa.push_back(static_cast<char>('0' + d));
    m = (m - static_cast<double>(d)) * 10.0;
  }
  // Round half up on the guard digit.
  if (mantissa.back() >= '5') {
    int k = digits - 1;
    while (k >= 0 && mantissa[k] == '9') mantissa[k--] = '0';
    if (k >= 0) {
      ++mantissa[k];
    } else {
      mantissa.insert(mantissa.begin(), '1');
      ++e;
    }
  }
  mantissa.resize(digits);
  out.push_back(mantissa[0]);
  out.push_back('.');
  out.append(mantissa.substr(1));
  out.push_back('e');
  out.append(std::to_string(e));
  return out;
}

std::ostream& operator<<(std::ostream& os, const DoubleDouble& a) { return os << to_string(a, 17); }

}  // namespace j2lab
