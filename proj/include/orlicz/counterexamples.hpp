#pragma once

#include <string>
#include <vector>

#include "orlicz/admissibility.hpp"
#include "orlicz/boundary.hpp"
#include "orlicz/step_function.hpp"
#include "orlicz/tower.hpp"

namespace orlicz {

struct LevelRow {
  int n = 0;
  double t_n = 0.0;           // witness abscissa
  double log_weight = 0.0;    // ln of the arc measure (eps_n or |sigma'_k|)
  double product_term_log = 0.0;
  double partial_lower = 0.0; // running lower bound for the product modular
};

// A pair (f, g) with finite individual modulars whose product modular
// grows without bound in the truncation index, plus per-level data.
struct CounterexampleReport {
  StepFunction f = StepFunction::from_arcs({});
  StepFunction g = StepFunction::from_arcs({});
  ModularValue modular_f, modular_g, modular_product;
  std::vector<LevelRow> levels;
  std::string narrative;
};

// Levels n = 1..N: t_n is the smallest abscissa with both
// phi(t_n + gamma(t_n)) >= n * phi(t_n) and phi(t_n) >= 2^n / n^2;
// eps_n = 1/(n^2 phi(t_n)).  f has values e^{t_n} and g values
// e^{gamma(t_n)} on shared abstract arcs of measure eps_n; the f and g
// modulars are sum 1/n^2 while the product modular is at least the
// harmonic partial sum.  Requires non-admissible evidence for the pair;
// throws search_failure (std::runtime_error) if no witness abscissa is
// found below the scan ceiling.
CounterexampleReport prop34_build(const DefiningFunction& phi, const GammaFunction& gamma, int N);

// Staircase refutation: level sets sigma_k of measure 2^{-k} carrying
// log|g| = k; picks breakpoints t_{n_k} with phi(t_{n_k}) >= 2^k/k^2 and
// shrinks to |sigma'_k| = 1/(k^2 phi(t_{n_k})).  The slope bound
// phi(t+gamma) >= gamma*phi(t) makes the product modular at least the
// harmonic sum H_K.  Throws level_exhaustion (std::runtime_error) when the
// staircase has too few representable breakpoints.
CounterexampleReport thm43_refute(const StaircasePhi& stair, int K);

struct Thm42Row {
  int n = 0;
  double exponent = 0.0;        // ln ratio at t = e_n, ~ n/2
  bool inclusion_holds = false; // log_k(sqrt(u) eps(u)) >= eps(u) at u = e_n
};

struct Thm42Report {
  int k = 2;
  std::vector<Thm42Row> rows;
  int n0 = -1;  // first n in the range from which the inclusion holds on
};

// gamma(t) = sqrt(t) * eps(t) with eps(e_j) = j, evaluated at tower
// abscissas u = e_n: the shift-ratio exponent is n/(1 + sqrt(1+x)) with
// x = eps/sqrt(u) (vanishing), and the inclusion inequality is decided by
// exact tower comparison.
Thm42Report thm42_inclusion_check(int k, const std::vector<int>& n_range);

// E(t) = phi^{-1}(e/t) - phi^{-1}(w(t)): an upper envelope every
// multiplier log-modulus must respect.
ProfileFunction thm32_envelope(const DefiningFunction& phi, double eta);

struct EnvelopeCheckReport {
  bool compliant = true;
  size_t violating_arc = 0;
  double t = 0.0;       // right endpoint of the violating arc
  double log_g = 0.0;   // candidate log-modulus there
  double bound = 0.0;   // envelope value there
};

// Checks a decreasing candidate (arcs laid out from 0 by cumulative
// measure) against the envelope at each arc right endpoint.
EnvelopeCheckReport envelope_check(const StepFunction& g, const ProfileFunction& env);

}  // namespace orlicz
