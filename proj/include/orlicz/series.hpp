#pragma once

#include <string>

#include "orlicz/log_scalar.hpp"

namespace orlicz {

// Convergence verdict with an explicit comparison certificate.
struct SeriesVerdict {
  enum class Kind { ConvergentWithTailBound, DivergentWithLowerBound, Inconclusive };

  Kind kind = Kind::Inconclusive;
  LogScalar partial_sum = LogScalar::zero();
  // ConvergentWithTailBound: bound on the tail beyond the truncation.
  // DivergentWithLowerBound: lower bound for the truncated sum, unbounded
  // in the truncation index.
  double bound = 0.0;
  std::string certificate;

  static SeriesVerdict convergent(LogScalar sum, double tail, std::string cert) {
    return SeriesVerdict{Kind::ConvergentWithTailBound, sum, tail, std::move(cert)};
  }
  static SeriesVerdict divergent(LogScalar sum, double lower, std::string cert) {
    return SeriesVerdict{Kind::DivergentWithLowerBound, sum, lower, std::move(cert)};
  }
  static SeriesVerdict inconclusive(LogScalar sum, std::string cert) {
    return SeriesVerdict{Kind::Inconclusive, sum, 0.0, std::move(cert)};
  }
};

}  // namespace orlicz
