#pragma once

#include <string>
#include <vector>

#include "orlicz/defining.hpp"
#include "orlicz/gamma.hpp"
#include "orlicz/grid.hpp"
#include "orlicz/series.hpp"

namespace orlicz {

// Finite-sample evidence for the shift conditions.  Verdicts are
// heuristic: the boundedness of sup_t phi(t+gamma(t))/phi(t) is not
// finitely decidable, so thresholds are fixed and reported.
struct AdmissibilityReport {
  enum class Verdict { AdmissibleEvidence, NonAdmissibleEvidence, Inconclusive };

  Verdict verdict = Verdict::Inconclusive;
  double sup_ratio_log = 0.0;                       // sup of ln(phi(t+g)/phi(t))
  std::vector<std::pair<double, double>> samples;   // (t, log ratio) or (s, margin)
  bool has_limit_estimate = false;
  double limit_estimate = 0.0;                      // ratio value, when flat at the end
  std::string note;
};

// Samples ln phi(t+gamma(t)) - ln phi(t) on the grid.  Non-admissible
// evidence requires the ratio to increase strictly over the top decade
// and the final sample to exceed ten times the first.
AdmissibilityReport check_tilde_delta(const DefiningFunction& phi, const GammaFunction& gamma,
                                      const Grid& grid);

// Checks ln(phi(s+gamma(s))/phi(s)) >= (1+eps) * ln ln phi(s) pointwise;
// samples carry the margin (lhs - rhs).
AdmissibilityReport check_tilde_nabla(const DefiningFunction& phi, const GammaFunction& gamma,
                                      double eps, const Grid& grid);

// gamma(t) = C t^{1-alpha}, the optimal gain for phi(t) = exp(t^alpha);
// the ratio tends to exp(alpha*C).
GammaFunction optimal_power_gamma(double alpha, double C);

struct DyadicGammaResult {
  GammaFunction gamma;                  // concave minorant, piecewise affine
  std::vector<double> t;                // dyadic breakpoints t_n with phi(t_n)=2^n
  std::vector<double> gamma1;           // gamma1(t_n) = t_{n+1} - t_n
  int n_start = 1;                      // first dyadic level used
  AdmissibilityReport report;           // phi(t+gamma(t)) <= 4 phi(t) check
};

// Breakpoints t_n = phi^{-1}(2^n); gamma0 maps [t_n,t_{n+1}) affinely onto
// [t_{n+1},t_{n+2}); gamma1 = gamma0 - id; the returned gamma is the lower
// envelope of the segment chords of gamma1 (a concave minorant equal to
// gamma1 whenever gamma1 is already concave).  Throws gap_error (as
// std::runtime_error) unless the gaps t_{n+1}-t_n increase toward infinity.
DyadicGammaResult dyadic_gamma(const DefiningFunction& phi, int n_max);

// psi_gamma = phi o gamma^{-1} as a DefiningFunction.
DefiningFunction compose_psi(const DefiningFunction& phi, const GammaFunction& gamma);

// Gap trend for the dyadic breakpoints of phi.
SeriesVerdict check_gap_divergence(const DefiningFunction& phi, int n_max);

}  // namespace orlicz
