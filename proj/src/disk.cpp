#include "orlicz/disk.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>

namespace orlicz {

namespace {
std::complex<double> to_c(DiskPoint p) { return {p.re, p.im}; }

void check_in_disk(DiskPoint p) {
  if (!(p.re * p.re + p.im * p.im < 1.0))
    throw std::invalid_argument("point outside the open unit disk");
}
}  // namespace

double WeightedSequence::total() const {
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

double pseudo_distance(DiskPoint a, DiskPoint b) {
  check_in_disk(a);
  check_in_disk(b);
  std::complex<double> za = to_c(a), zb = to_c(b);
  return std::abs((za - zb) / (1.0 - std::conj(za) * zb));
}

double carleson_constant(const DiskSequence& seq) {
  const auto& pts = seq.points;
  double best = 0.0;  // log scale
  for (size_t i = 0; i < pts.size(); ++i) {
    double lp = 0.0;
    for (size_t j = 0; j < pts.size(); ++j) {
      if (j == i) continue;
      double d = pseudo_distance(pts[j], pts[i]);
      if (d == 0.0) throw std::invalid_argument("points must be distinct");
      lp += std::log(d);
    }
    best = std::min(best, lp);
  }
  return std::exp(best);
}

DiskSequence radial_carleson(double q, int N) {
  if (!(q > 0) || q >= 1 || N < 1) throw std::invalid_argument("need q in (0,1), N >= 1");
  DiskSequence seq;
  double p = 1.0;
  for (int n = 1; n <= N; ++n) {
    p *= q;
    seq.points.push_back(DiskPoint{1.0 - p, 0.0});
  }
  return seq;
}

BlaschkeWeightsReport blaschke_weights(const DiskSequence& seq, double theta) {
  if (!(theta > 0) || theta >= 1) throw std::invalid_argument("theta must lie in (0,1)");
  BlaschkeWeightsReport rep;
  for (const auto& p : seq.points) {
    check_in_disk(p);
    rep.weights.push_back(1.0 - (p.re * p.re + p.im * p.im));
  }
  size_t n = rep.weights.size();
  std::vector<double> tail(n + 1, 0.0);
  for (size_t i = n; i-- > 0;) tail[i] = tail[i + 1] + rep.weights[i];
  for (size_t i = 0; i < n; ++i) {
    rep.gamma.push_back(std::pow(tail[i], -theta));
    rep.weighted_sum += rep.weights[i] * rep.gamma.back();
  }
  rep.telescope_bound = n ? std::pow(tail[0], 1 - theta) / (1 - theta) : 0.0;
  return rep;
}

PairedSequences pair_with_targets(const DiskSequence& lambda1, const DefiningFunction& psi,
                                  const std::vector<double>& gamma, double d_floor) {
  if (lambda1.points.size() != gamma.size())
    throw std::invalid_argument("one gain per point required");
  PairedSequences pair;
  pair.lambda1 = lambda1;
  for (size_t i = 0; i < gamma.size(); ++i) {
    double x = psi.invert(LogScalar::from_value(gamma[i]));
    if (!(x > 1.0))
      throw std::invalid_argument("gain too small: direct inverse must exceed 1");
    double d = std::max(2.0 / (x - 1.0), d_floor);
    if (!(d < 1.0)) throw std::runtime_error("placement error: separation not below 1");
    DiskPoint p1 = lambda1.points[i];
    double r1 = std::hypot(p1.re, p1.im);
    double r2 = (r1 + d) / (1.0 + r1 * d);
    if (!(r2 < 1.0)) throw std::runtime_error("placement error: image point leaves the disk");
    DiskPoint p2 = r1 > 0 ? DiskPoint{p1.re * r2 / r1, p1.im * r2 / r1} : DiskPoint{r2, 0.0};
    pair.lambda2.points.push_back(p2);
    pair.d.push_back(d);
  }
  return pair;
}

namespace {
ModularValue log_scale_sum(const std::vector<LogScalar>& terms, const std::string& cert) {
  ModularValue m;
  m.value = log_sum_exp(terms);
  double v = m.value.log_value < 700 ? m.value.value() : 0.0;
  m.error_bound = 1e-12 * std::max(1.0, v) * double(terms.size());
  m.verdict = SeriesVerdict::convergent(m.value, m.error_bound, cert);
  return m;
}
}  // namespace

ModularValue trace_sum(const PairedSequences& pair, const DefiningFunction& psi,
                       const std::vector<double>& a1, const std::vector<double>& a2) {
  size_t n = pair.d.size();
  if (a1.size() != n || a2.size() != n) throw std::invalid_argument("data size mismatch");
  for (size_t i = 0; i < n; ++i)
    if (std::abs(a1[i]) > 1 || std::abs(a2[i]) > 1)
      throw std::invalid_argument("trace data must be bounded by 1");
  std::vector<LogScalar> terms;
  for (size_t i = 0; i < n; ++i) {
    const DiskPoint& p = pair.lambda1.points[i];
    double w = 1.0 - (p.re * p.re + p.im * p.im);
    double arg = std::abs(a1[i]) + std::abs(a2[i] - a1[i]) / pair.d[i];
    terms.push_back(LogScalar::from_log(psi.eval_log(arg) + std::log(w)));
  }
  return log_scale_sum(terms, "exact weighted sum of direct-form values");
}

TraceWorstReport trace_sum_worst(const PairedSequences& pair, const DefiningFunction& psi,
                                 const std::vector<double>& gamma) {
  size_t n = pair.d.size();
  if (gamma.size() != n) throw std::invalid_argument("one gain per point required");
  TraceWorstReport rep;
  rep.max_term_excess = -std::numeric_limits<double>::infinity();
  std::vector<LogScalar> terms;
  for (size_t i = 0; i < n; ++i) {
    const DiskPoint& p = pair.lambda1.points[i];
    double w = 1.0 - (p.re * p.re + p.im * p.im);
    double lp = psi.eval_log(1.0 + 2.0 / pair.d[i]);
    terms.push_back(LogScalar::from_log(lp + std::log(w)));
    double excess = lp - std::log(gamma[i]);
    rep.max_term_excess = std::max(rep.max_term_excess, excess);
    rep.term_bounded_by_gamma = rep.term_bounded_by_gamma && excess <= 1e-9;
    rep.gamma_bound_sum += w * gamma[i];
  }
  rep.sum = log_scale_sum(terms, "worst-case trace sum, bounded by sum w_n gamma_n");
  return rep;
}

RearrangedStep weighted_rearrangement(const WeightedSequence& a) {
  if (a.values.size() != a.weights.size())
    throw std::invalid_argument("values/weights size mismatch");
  std::vector<size_t> idx(a.values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](size_t i, size_t j) {
    return std::abs(a.values[i]) > std::abs(a.values[j]);
  });
  RearrangedStep r;
  double cum = 0.0;
  for (size_t i : idx) {
    if (!(a.weights[i] > 0)) throw std::invalid_argument("weights must be positive");
    r.values.push_back(std::abs(a.values[i]));
    r.weights.push_back(a.weights[i]);
    cum += a.weights[i];
    r.breakpoints.push_back(cum);
  }
  r.total = cum;
  return r;
}

double RearrangedStep::value_at(double s) const {
  if (s < 0 || s > total + 1e-12) throw std::domain_error("argument outside [0, L]");
  for (size_t i = 0; i < breakpoints.size(); ++i)
    if (s < breakpoints[i]) return values[i];
  return values.empty() ? 0.0 : values.back();
}

double RearrangedStep::integral_to(double s) const {
  if (s < 0 || s > total + 1e-12) throw std::domain_error("argument outside [0, L]");
  double acc = 0.0, prev = 0.0;
  for (size_t i = 0; i < breakpoints.size(); ++i) {
    double hi = std::min(s, breakpoints[i]);
    if (hi <= prev) break;
    acc += (hi - prev) * values[i];
    prev = breakpoints[i];
  }
  return acc;
}

std::pair<WeightedSequence, WeightedSequence> calderon_split(const WeightedSequence& a, double s) {
  RearrangedStep r = weighted_rearrangement(a);
  bool at_break = std::abs(s) <= 1e-12;
  for (double b : r.breakpoints) at_break = at_break || std::abs(s - b) <= 1e-12 * std::max(1.0, r.total);
  if (!at_break) throw std::invalid_argument("split level must be a rearrangement breakpoint");
  double level = r.value_at(std::min(s, r.total));
  WeightedSequence b{std::vector<double>(a.values.size(), 0.0), a.weights};
  WeightedSequence c{a.values, a.weights};
  for (size_t i = 0; i < a.values.size(); ++i) {
    double m = std::abs(a.values[i]);
    if (m > level) {
      double sign = a.values[i] >= 0 ? 1.0 : -1.0;
      b.values[i] = sign * (m - level);
      c.values[i] = sign * level;
    }
  }
  return {b, c};
}

bool majorization_leq(const WeightedSequence& u, const WeightedSequence& v) {
  RearrangedStep ru = weighted_rearrangement(u), rv = weighted_rearrangement(v);
  if (std::abs(ru.total - rv.total) > 1e-9 * std::max(1.0, ru.total))
    throw std::invalid_argument("totals must agree (pad with zero values)");
  std::vector<double> ss = ru.breakpoints;
  ss.insert(ss.end(), rv.breakpoints.begin(), rv.breakpoints.end());
  ss.push_back(0.0);
  std::sort(ss.begin(), ss.end());
  double L = std::min(ru.total, rv.total);
  for (double s : ss) {
    s = std::min(s, L);
    if (ru.integral_to(s) > rv.integral_to(s) + 1e-12 * std::max(1.0, rv.integral_to(L)))
      return false;
  }
  return true;
}

double modular_direct_log(const WeightedSequence& a, const DefiningFunction& psi, double t) {
  if (!(t > 0)) throw std::domain_error("scale must be positive");
  std::vector<LogScalar> terms;
  for (size_t i = 0; i < a.values.size(); ++i) {
    double lp = psi.eval_log(std::abs(a.values[i]) / t);
    if (lp != -std::numeric_limits<double>::infinity())
      terms.push_back(LogScalar::from_log(lp + std::log(a.weights[i])));
  }
  return log_sum_exp(terms).log_value;
}

double luxemburg_direct(const WeightedSequence& a, const DefiningFunction& psi, double tol) {
  double amax = 0.0;
  for (double v : a.values) amax = std::max(amax, std::abs(v));
  if (amax == 0.0) return 0.0;
  auto J = [&](double x) { return modular_direct_log(a, psi, std::exp(x)); };
  double lo, hi;
  if (J(0.0) > 0.0) {
    lo = 0.0;
    for (hi = 1.0; J(hi) > 0.0; hi *= 2) {
      lo = hi;
      // the direct form need not vanish at 0, so the modular can stay
      // above 1 at every scale: the infimum is then over the empty set
      if (hi > 700) return std::numeric_limits<double>::infinity();
    }
  } else {
    hi = 0.0;
    for (lo = -1.0; J(lo) <= 0.0; lo *= 2) {
      hi = lo;
      if (lo < -1e6) return 0.0;
    }
  }
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    (J(mid) > 0.0 ? lo : hi) = mid;
  }
  return std::exp(0.5 * (lo + hi));
}

}  // namespace orlicz
