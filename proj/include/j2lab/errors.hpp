#pragma once

#include <stdexcept>
#include <string>

namespace j2lab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid or inconsistent user input (bad config values, out-of-range elements).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A state that cannot be represented in the requested chart.
class ChartError : public Error {
 public:
  using Error::Error;
};

class CriticalInclination : public Error {
 public:
  explicit CriticalInclination(double delta)
      : Error("critical inclination: divisor " + std::to_string(delta) + " below guard"), divisor(delta) {}
  double divisor;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class SpanError : public Error {
 public:
  using Error::Error;
};

class IntegrationError : public Error {
 public:
  using Error::Error;
};

}  // namespace j2lab
