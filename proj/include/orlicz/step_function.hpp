#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "orlicz/defining.hpp"
#include "orlicz/log_scalar.hpp"
#include "orlicz/series.hpp"

namespace orlicz {

// One level set of a step-modulus on the circle, identified with (0,1].
// log_value is ln of the modulus; -inf encodes modulus zero.  Positioned
// arcs additionally carry machine coordinates and support outer-function
// evaluation; measure-theoretic arcs only support modular bookkeeping
// (their measures may be far below the double range).
struct StepArc {
  LogScalar measure = LogScalar::zero();
  double log_value = 0.0;
  double start = std::numeric_limits<double>::quiet_NaN();
  double length = std::numeric_limits<double>::quiet_NaN();
  bool has_position() const { return !std::isnan(start); }
};

class StepFunction {
 public:
  // Measure-theoretic arcs (log_measure, log_value); total measure <= 1,
  // the remaining mass implicitly carries the value 1.
  static StepFunction measure_theoretic(std::vector<std::pair<LogScalar, double>> arcs);
  // Positioned arcs (start, length, log_value) with start in [0,1),
  // non-overlapping; measure = length.
  static StepFunction positioned(std::vector<std::array<double, 3>> arcs);
  static StepFunction from_arcs(std::vector<StepArc> arcs);

  const std::vector<StepArc>& arcs() const { return arcs_; }
  bool positioned_mode() const;
  LogScalar total_measure() const;
  // 1 - total measure, clamped to zero when the arcs fill the circle to
  // within 1e-12.
  LogScalar remainder() const;

 private:
  std::vector<StepArc> arcs_;
};

// Closed-form radial profiles t in (0,1] -> value, all monotone in t.
// eval_log returns the log-scale quantity natural to each kind:
//   Weight       ln w(t),  w(t) = e / (t * ln^{1+eta}(e/t))
//   InverseWeight ln|f(t)| = phi^{-1}(w(t))
//   Envelope     E(t) = phi^{-1}(e/t) - phi^{-1}(w(t)), a log-modulus bound
class ProfileFunction {
 public:
  enum class Kind { Weight, InverseWeight, Envelope };

  static ProfileFunction weight(double eta);
  static ProfileFunction inverse_weight(DefiningFunction phi, double eta);
  static ProfileFunction envelope(DefiningFunction phi, double eta);

  double eval_log(double t) const;
  Kind kind() const { return kind_; }
  double eta() const { return eta_; }
  const DefiningFunction* phi() const { return phi_.get(); }
  bool monotone() const { return true; }

 private:
  Kind kind_ = Kind::Weight;
  double eta_ = 1.0;
  std::shared_ptr<const DefiningFunction> phi_;
};

// ln w(t) for w(t) = e/(t ln^{1+eta}(e/t)).
double thm32_log_w(double t, double eta);

struct ModularValue {
  bool finite = true;
  LogScalar value = LogScalar::zero();  // meaningful when finite
  double error_bound = 0.0;             // absolute, linear scale
  SeriesVerdict verdict;
};

}  // namespace orlicz
