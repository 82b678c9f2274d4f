#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>

namespace orlicz {

// Iterated-exponential scalar: (level, mantissa_log) represents
// exp applied `level` times to mantissa_log.  Normalized form keeps
// mantissa_log in [1, e) whenever level >= 1, so comparison is
// lexicographic.  e_k is (k, 1): exp_k(1) = e_k with e_1 = e.
struct TowerScalar {
  int level = 0;
  double mantissa_log = 0.0;

  static constexpr int kMaxLevel = 8;
  static constexpr double kE = 2.718281828459045;

  static TowerScalar e_k(int k) {
    if (k < 0 || k > kMaxLevel) throw std::domain_error("tower level out of range");
    if (k == 0) return TowerScalar{0, 1.0};
    return TowerScalar{k, 1.0};
  }
  static TowerScalar from_double(double x) { return TowerScalar{0, x}.normalized(); }

  TowerScalar normalized() const {
    TowerScalar t = *this;
    while (t.level >= 1 && t.mantissa_log < 1.0) {
      t.mantissa_log = std::exp(t.mantissa_log);
      --t.level;
    }
    while (t.mantissa_log >= kE) {
      t.mantissa_log = std::log(t.mantissa_log);
      ++t.level;
      if (t.level > kMaxLevel) throw std::overflow_error("tower level exceeds maximum");
    }
    return t;
  }

  // Finite double value when representable, nullopt past ~1e300.
  std::optional<double> to_double() const {
    double x = mantissa_log;
    for (int i = 0; i < level; ++i) {
      if (x > 700.0) return std::nullopt;
      x = std::exp(x);
    }
    return x;
  }
};

inline int tower_compare(const TowerScalar& a, const TowerScalar& b) {
  TowerScalar x = a.normalized(), y = b.normalized();
  if (x.level != y.level) return x.level < y.level ? -1 : 1;
  if (x.mantissa_log < y.mantissa_log) return -1;
  if (x.mantissa_log > y.mantissa_log) return 1;
  return 0;
}

// One application of exp or log with level bookkeeping.
inline TowerScalar tower_exp(const TowerScalar& x) {
  TowerScalar t = x.normalized();
  if (t.level == 0 && t.mantissa_log < 1.0)
    return TowerScalar{0, std::exp(t.mantissa_log)}.normalized();
  if (t.level + 1 > TowerScalar::kMaxLevel) throw std::overflow_error("tower level exceeds maximum");
  return TowerScalar{t.level + 1, t.mantissa_log};
}

inline TowerScalar tower_log(const TowerScalar& x) {
  TowerScalar t = x.normalized();
  if (t.level >= 1) return TowerScalar{t.level - 1, t.mantissa_log};
  if (t.mantissa_log <= 0.0) throw std::domain_error("log of nonpositive value");
  return TowerScalar{0, std::log(t.mantissa_log)};
}

enum class TowerDirection { Log, Exp };

inline TowerScalar iterated(int k, TowerDirection dir, TowerScalar x) {
  for (int i = 0; i < k; ++i) x = (dir == TowerDirection::Exp) ? tower_exp(x) : tower_log(x);
  return x;
}

// x + a for a plain double a.  When x is too large for a double the
// perturbation is below representable relative precision and x is
// returned unchanged.
inline TowerScalar tower_add_const(const TowerScalar& x, double a) {
  if (auto v = x.to_double()) return TowerScalar::from_double(*v + a);
  return x;
}

// x * c for c > 0, via log-space addition.
inline TowerScalar tower_mul_const(const TowerScalar& x, double c) {
  if (c <= 0) throw std::domain_error("tower scalar must stay positive");
  if (auto v = x.to_double()) {
    double r = *v * c;
    if (std::isfinite(r)) return TowerScalar::from_double(r);
  }
  return tower_exp(tower_add_const(tower_log(x), std::log(c)));
}

}  // namespace orlicz
