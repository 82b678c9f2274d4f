#pragma once

#include <utility>
#include <vector>

#include "orlicz/defining.hpp"
#include "orlicz/step_function.hpp"

namespace orlicz {

struct DiskPoint {
  double re = 0.0, im = 0.0;
};

struct DiskSequence {
  std::vector<DiskPoint> points;  // all strictly inside the disk, distinct
};

struct PairedSequences {
  DiskSequence lambda1, lambda2;
  std::vector<double> d;  // pseudohyperbolic separations, d_n -> 0
};

// Values on the atomic measure sum w_n * delta_n; total L = sum w_n.
struct WeightedSequence {
  std::vector<double> values;
  std::vector<double> weights;
  double total() const;
};

// |b_a(b)| for the Moebius factor b_a(z) = (|a|/a)(a-z)/(1-conj(a)z).
double pseudo_distance(DiskPoint a, DiskPoint b);

// delta(Lambda) = inf over lambda of prod_{mu != lambda} |b_mu(lambda)|,
// computed exactly in log scale; 1 for a singleton.
double carleson_constant(const DiskSequence& seq);

// lambda_n = 1 - q^n, n = 1..N.
DiskSequence radial_carleson(double q, int N);

struct BlaschkeWeightsReport {
  std::vector<double> weights;  // w_n = 1 - |lambda_n|^2
  std::vector<double> gamma;    // tail_n^{-theta}, increasing to infinity
  double weighted_sum = 0.0;    // sum w_n gamma_n
  double telescope_bound = 0.0; // tail_1^{1-theta} / (1-theta), >= weighted_sum
};

// Increasing gains gamma_n = (sum_{m>=n} w_m)^{-theta} with the telescoping
// certificate sum w_n gamma_n <= tail_1^{1-theta}/(1-theta); theta in (0,1).
BlaschkeWeightsReport blaschke_weights(const DiskSequence& seq, double theta = 0.5);

// Places lambda_{n,2} radially outward from lambda_{n,1} at pseudohyperbolic
// distance d_n = max(2/(Psi^{-1}(gamma_n)-1), d_floor), where Psi is the
// defining formula applied directly to the argument (Psi^{-1}(y) solves
// eval_log(x) = ln y).
PairedSequences pair_with_targets(const DiskSequence& lambda1, const DefiningFunction& psi,
                                  const std::vector<double>& gamma, double d_floor = 1e-6);

// sum w_n Psi(|a1_n| + |a2_n - a1_n| / d_n) in log scale; needs bounded
// data (max |a| <= 1).
ModularValue trace_sum(const PairedSequences& pair, const DefiningFunction& psi,
                       const std::vector<double>& a1, const std::vector<double>& a2);

struct TraceWorstReport {
  ModularValue sum;                 // sum w_n Psi(1 + 2/d_n)
  double gamma_bound_sum = 0.0;     // sum w_n gamma_n
  bool term_bounded_by_gamma = true;  // Psi(1+2/d_n) <= gamma_n at every n
  double max_term_excess = 0.0;     // max of ln Psi(1+2/d_n) - ln gamma_n
};

// Worst case |a_{n,1}| = 1, |a_{n,2} - a_{n,1}| = 2, certified against the
// gamma gains used to build the pair.
TraceWorstReport trace_sum_worst(const PairedSequences& pair, const DefiningFunction& psi,
                                 const std::vector<double>& gamma);

// Decreasing rearrangement on [0, L].
struct RearrangedStep {
  std::vector<double> values;       // descending
  std::vector<double> weights;
  std::vector<double> breakpoints;  // cumulative weights s_1 < ... < s_n = L
  double total = 0.0;
  double value_at(double s) const;     // a*(s), right-continuous, a*(L) = min
  double integral_to(double s) const;  // integral of a* over [0, s]
};

RearrangedStep weighted_rearrangement(const WeightedSequence& a);

// Splits a = b + c at a rearrangement breakpoint s: b peels everything
// above the level a*(s), c keeps the capped part, so |c| <= a*(s) and
// the weighted l1 mass of b is integral_0^s a* - s a*(s).  Other s are
// rejected.
std::pair<WeightedSequence, WeightedSequence> calderon_split(const WeightedSequence& a, double s);

// integral_0^s u* <= integral_0^s v* for all s (checked at the merged
// breakpoints); requires equal totals.
bool majorization_leq(const WeightedSequence& u, const WeightedSequence& v);

// log of sum w_n Psi(a_n / t) with the defining formula applied directly
// to the argument.
double modular_direct_log(const WeightedSequence& a, const DefiningFunction& psi, double t);

// inf{t > 0 : modular <= 1}; a norm when the direct form is convex.
double luxemburg_direct(const WeightedSequence& a, const DefiningFunction& psi, double tol = 1e-10);

}  // namespace orlicz
