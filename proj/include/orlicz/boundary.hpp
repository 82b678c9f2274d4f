#pragma once

#include <complex>
#include <optional>

#include "orlicz/step_function.hpp"

namespace orlicz {

// Decreasing rearrangement: arcs sorted by value descending, the implicit
// remainder (value 1) materialized as an explicit arc.  Positions are
// dropped; the distribution function is preserved at every level.
StepFunction rearrange_decreasing(const StepFunction& f);

// mu_f(level) = measure{ |f| > level }, strict inequality; the implicit
// remainder counts when level < 1.
LogScalar distribution(const StepFunction& f, LogScalar level);

// Sum of Phi(value_j) * measure_j in log scale (Phi = phi o log is the
// capital form, so the term for an arc with ln-value v is phi(v)).
ModularValue modular(const StepFunction& f, const DefiningFunction& phi);

// Integral of Phi(|f(t)|) dt over (0,1] by geometric-cell quadrature with
// monotone bracketing; closed-form tail below the cutoff when available,
// divergence declared when partial sums pass `divergence_bound` with
// increasing cell contributions.
ModularValue modular(const ProfileFunction& f, const DefiningFunction& phi,
                     double divergence_bound = 1e6);

// Integral of the profile value itself over (0,1] (same machinery).
ModularValue profile_integral(const ProfileFunction& f, double divergence_bound = 1e6);

// inf{ t > 0 : modular(f/t) <= 1 } by bisection in ln t with bracket
// doubling; a norm only when phi.capital_convex().
double luxemburg(const StepFunction& f, const DefiningFunction& phi, double tol = 1e-10);

enum class Alignment { Aligned, Antialigned };

// Aligned: identical arc partitions required, values add arc by arc.
// Antialigned: f sorted decreasing and g increasing by value (remainders
// materialized), then the partitions are merged by splitting measures.
StepFunction pointwise_product(const StepFunction& f, const StepFunction& g, Alignment mode);

// log F(z) of the outer function with boundary modulus f, |z| < 1, via the
// exact per-arc antiderivative of the Herglotz kernel with continuous
// branch tracking.  Requires positioned arcs.
std::complex<double> outer_eval(const StepFunction& f, std::complex<double> z);

struct ExtremalProfiles {
  ProfileFunction w;          // the weight itself
  ProfileFunction f_profile;  // ln|f(t)| = phi^{-1}(w(t))
};

// The extremal pair: weight w(t) = e/(t ln^{1+eta}(e/t)) and the profile
// whose modular under phi equals the integral of w (= e/eta).
ExtremalProfiles thm32_extremal(const DefiningFunction& phi, double eta);

// Largest sampled t* such that w(t) ln^{1+eps} w(t) >= e/t for all sampled
// t <= t*; requires eps > eta.
double thm32_inequality_threshold(double eta, double eps);

struct BoundCheckReport {
  bool holds = true;
  size_t violating_arc = 0;
  double t = 0.0;          // right endpoint where the check failed
  double log_lhs = 0.0;    // ln(t * f(t)) there
  double log_bound = 0.0;  // ln I
};

// For decreasing f with integral <= I, checks t * f(t) <= I at every arc
// right endpoint.
BoundCheckReport decreasing_bound_check(const StepFunction& f, double I);

// Smallest n <= n_max with modular of f^{1/n} (log-values divided by n)
// below `bound` under psi; nullopt when none qualifies.
std::optional<int> root_membership(const StepFunction& f, const DefiningFunction& psi,
                                   int n_max, double bound = 1e6);

}  // namespace orlicz
