#pragma once

#include <cmath>
#include <limits>
#include <vector>

namespace orlicz {

// Positive extended real stored as its natural log.
// -inf encodes zero, +inf encodes infinity.
struct LogScalar {
  double log_value = -std::numeric_limits<double>::infinity();

  static LogScalar from_log(double lv) { return LogScalar{lv}; }
  static LogScalar from_value(double v) {
    return LogScalar{v > 0 ? std::log(v) : -std::numeric_limits<double>::infinity()};
  }
  static LogScalar zero() { return LogScalar{-std::numeric_limits<double>::infinity()}; }
  static LogScalar one() { return LogScalar{0.0}; }
  static LogScalar infinity() { return LogScalar{std::numeric_limits<double>::infinity()}; }

  bool is_zero() const { return std::isinf(log_value) && log_value < 0; }
  bool is_infinite() const { return std::isinf(log_value) && log_value > 0; }
  double value() const { return std::exp(log_value); }

  LogScalar operator*(LogScalar o) const {
    if (is_zero() || o.is_zero()) return zero();
    return LogScalar{log_value + o.log_value};
  }
  LogScalar operator/(LogScalar o) const {
    if (is_zero()) return zero();
    return LogScalar{log_value - o.log_value};
  }
  bool operator<(LogScalar o) const { return log_value < o.log_value; }
  bool operator<=(LogScalar o) const { return log_value <= o.log_value; }
  bool operator>(LogScalar o) const { return log_value > o.log_value; }
  bool operator>=(LogScalar o) const { return log_value >= o.log_value; }
  bool operator==(LogScalar o) const { return log_value == o.log_value; }
};

// log of the sum of represented values; empty list gives zero.
inline LogScalar log_sum_exp(const std::vector<LogScalar>& terms) {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& t : terms) m = std::max(m, t.log_value);
  if (std::isinf(m)) return LogScalar{m};  // all zero, or one infinite
  double s = 0.0;
  for (const auto& t : terms) s += std::exp(t.log_value - m);
  return LogScalar{m + std::log(s)};
}

inline LogScalar log_add(LogScalar a, LogScalar b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.is_infinite() || b.is_infinite()) return LogScalar::infinity();
  double m = std::max(a.log_value, b.log_value);
  return LogScalar{m + std::log(std::exp(a.log_value - m) + std::exp(b.log_value - m))};
}

// log(e^a - e^b) for a >= b; returns zero() when a == b.
inline LogScalar log_sub(LogScalar a, LogScalar b) {
  if (b.is_zero()) return a;
  if (a.log_value <= b.log_value) return LogScalar::zero();
  return LogScalar{a.log_value + std::log1p(-std::exp(b.log_value - a.log_value))};
}

}  // namespace orlicz
