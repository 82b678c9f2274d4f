#include "orlicz/admissibility.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace orlicz {

namespace {
std::vector<size_t> tail_indices(const Grid& grid) {
  std::vector<size_t> idx;
  double cutoff = grid.scale == Grid::Scale::Geometric ? grid.back() / 10.0
                                                       : grid.front() + 0.75 * (grid.back() - grid.front());
  for (size_t i = 0; i < grid.size(); ++i)
    if (grid.points[i] >= cutoff) idx.push_back(i);
  if (idx.size() < 2 && grid.size() >= 2) idx = {grid.size() - 2, grid.size() - 1};
  return idx;
}
}  // namespace

AdmissibilityReport check_tilde_delta(const DefiningFunction& phi, const GammaFunction& gamma,
                                      const Grid& grid) {
  AdmissibilityReport r;
  for (double t : grid.points) {
    double lr = phi.eval_log(t + gamma.eval(t)) - phi.eval_log(t);
    r.samples.emplace_back(t, lr);
  }
  double sup = -std::numeric_limits<double>::infinity();
  for (auto& [t, lr] : r.samples) sup = std::max(sup, lr);
  r.sup_ratio_log = sup;

  auto idx = tail_indices(grid);
  bool strictly_increasing = true;
  double tmin = r.samples[idx.front()].second, tmax = tmin;
  for (size_t k = 1; k < idx.size(); ++k) {
    double prev = r.samples[idx[k - 1]].second, cur = r.samples[idx[k]].second;
    strictly_increasing = strictly_increasing && cur > prev;
    tmin = std::min(tmin, cur);
    tmax = std::max(tmax, cur);
  }
  double first = r.samples.front().second, last = r.samples.back().second;
  bool grew_tenfold = last > first + std::log(10.0);
  bool flat_tail = (tmax - tmin) <= 0.01 * std::max(1.0, std::abs(last));
  if (strictly_increasing && grew_tenfold && !flat_tail) {
    r.verdict = AdmissibilityReport::Verdict::NonAdmissibleEvidence;
    r.note = "ratio strictly increasing over top decade and final sample > 10x first (heuristic)";
  } else if (flat_tail || !strictly_increasing) {
    r.verdict = AdmissibilityReport::Verdict::AdmissibleEvidence;
    r.has_limit_estimate = flat_tail;
    r.limit_estimate = std::exp(last);
    r.note = "ratio flat or nonincreasing over top decade (heuristic)";
  } else {
    r.verdict = AdmissibilityReport::Verdict::Inconclusive;
    r.note = "ratio increasing but below the tenfold threshold";
  }
  return r;
}

AdmissibilityReport check_tilde_nabla(const DefiningFunction& phi, const GammaFunction& gamma,
                                      double eps, const Grid& grid) {
  if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
  AdmissibilityReport r;
  bool all_hold = true;
  for (double s : grid.points) {
    double lphi = phi.eval_log(s);
    if (!(lphi > 0)) throw std::domain_error("check_tilde_nabla needs phi(s) > 1 on the grid");
    double lr = phi.eval_log(s + gamma.eval(s)) - lphi;
    double margin = lr - (1 + eps) * std::log(lphi);
    r.samples.emplace_back(s, margin);
    all_hold = all_hold && margin >= 0;
  }
  double sup = -std::numeric_limits<double>::infinity();
  for (auto& [s, m] : r.samples) sup = std::max(sup, m);
  r.sup_ratio_log = sup;
  auto idx = tail_indices(grid);
  bool tail_negative_decreasing = true;
  for (size_t k = 0; k < idx.size(); ++k) {
    double m = r.samples[idx[k]].second;
    tail_negative_decreasing = tail_negative_decreasing && m < 0 &&
                               (k == 0 || m <= r.samples[idx[k - 1]].second + 1e-12);
  }
  if (all_hold) {
    r.verdict = AdmissibilityReport::Verdict::AdmissibleEvidence;
    r.note = "margin nonnegative at every grid point";
  } else if (tail_negative_decreasing) {
    r.verdict = AdmissibilityReport::Verdict::NonAdmissibleEvidence;
    r.note = "margin negative and decreasing over top decade (heuristic)";
  } else {
    r.verdict = AdmissibilityReport::Verdict::Inconclusive;
    r.note = "margin changes sign without a monotone tail trend";
  }
  return r;
}

GammaFunction optimal_power_gamma(double alpha, double C) {
  if (!(alpha > 0) || alpha >= 1 || !(C > 0)) throw std::invalid_argument("need alpha in (0,1), C > 0");
  return GammaFunction::power(C, 1 - alpha);
}

namespace {
// Dyadic breakpoints t_n = phi^{-1}(2^n), starting at the first level at
// or above the formula floor (the affine completion region is skipped:
// the construction concerns large t).
std::vector<double> dyadic_breakpoints(const DefiningFunction& phi, int n_start, int count) {
  std::vector<double> t;
  const double ln2 = std::log(2.0);
  for (int n = n_start; n < n_start + count; ++n)
    t.push_back(phi.invert(LogScalar::from_log(n * ln2)));
  return t;
}

int dyadic_start_level(const DefiningFunction& phi) {
  double fl = phi.domain_floor();
  if (!std::isfinite(fl)) return 1;
  double v = phi.eval_log(fl);
  if (!std::isfinite(v) || v <= 0) return 1;
  return std::max(1, int(std::ceil(v / std::log(2.0))));
}

void require_gaps_increasing(const std::vector<double>& t) {
  std::vector<double> gaps;
  for (size_t i = 0; i + 1 < t.size(); ++i) gaps.push_back(t[i + 1] - t[i]);
  bool ok = gaps.size() >= 2 && gaps.back() > gaps.front() * (1 + 1e-6);
  for (size_t i = 0; ok && i + 1 < gaps.size(); ++i)
    ok = gaps[i + 1] >= gaps[i] * (1 - 1e-9);
  if (!ok) throw std::runtime_error("gap_error: dyadic gaps do not increase toward infinity");
}
}  // namespace

DyadicGammaResult dyadic_gamma(const DefiningFunction& phi, int n_max) {
  if (n_max < 3) throw std::invalid_argument("n_max too small");
  DyadicGammaResult res{GammaFunction::power(1, 1), {}, {}, 1, {}};
  res.n_start = dyadic_start_level(phi);
  // need t_{n+2} for the last gamma0 interval
  std::vector<double> t = dyadic_breakpoints(phi, res.n_start, n_max + 2);
  require_gaps_increasing(t);
  res.t.assign(t.begin(), t.end() - 2);
  std::vector<double> g1;  // gamma1(t_n) = t_{n+1} - t_n
  for (size_t i = 0; i + 1 < t.size(); ++i) g1.push_back(t[i + 1] - t[i]);
  res.gamma1.assign(g1.begin(), g1.end() - 1);

  // Lower envelope of the segment chords of gamma1.  Chord n joins
  // (t_n, g1_n) to (t_{n+1}, g1_{n+1}); the pointwise min of these affine
  // pieces is concave, lies under gamma1 everywhere, and equals gamma1
  // when gamma1 is already concave.
  struct Line { double m, c; };
  std::vector<Line> lines;
  for (size_t i = 0; i + 1 < g1.size(); ++i) {
    double m = (g1[i + 1] - g1[i]) / (t[i + 1] - t[i]);
    lines.push_back({m, g1[i] - m * t[i]});
  }
  std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) { return a.m > b.m; });
  std::vector<Line> hull;
  auto isect = [](const Line& a, const Line& b) { return (b.c - a.c) / (a.m - b.m); };
  for (const Line& l : lines) {
    if (!hull.empty() && std::abs(hull.back().m - l.m) < 1e-15 * std::abs(l.m)) {
      if (l.c < hull.back().c) hull.back() = l;
      continue;
    }
    while (hull.size() >= 2 && isect(l, hull[hull.size() - 2]) <= isect(hull.back(), hull[hull.size() - 2]))
      hull.pop_back();
    hull.push_back(l);
  }
  double lo = t.front(), hi = t[t.size() - 2];
  std::vector<std::pair<double, double>> pts;
  auto eval_line = [](const Line& l, double x) { return l.m * x + l.c; };
  pts.emplace_back(lo, eval_line(hull.front(), lo));
  size_t active = 0;
  for (size_t i = 0; i + 1 < hull.size(); ++i) {
    double x = isect(hull[i + 1], hull[i]);
    if (x > lo && x < hi) {
      pts.emplace_back(x, eval_line(hull[i], x));
      active = i + 1;
    } else if (x <= lo) {
      active = i + 1;
      pts.front() = {lo, eval_line(hull[active], lo)};
    }
  }
  pts.emplace_back(hi, eval_line(hull[active], hi));
  res.gamma = GammaFunction::piecewise_concave(pts);

  // verify phi(t + gamma(t)) <= 4 phi(t) on a grid refined between
  // breakpoints, via the chain through phi(t_{n+2})
  AdmissibilityReport rep;
  const double ln4 = std::log(4.0);
  bool ok = true;
  for (size_t n = 0; n + 2 < t.size(); ++n) {
    for (int k = 0; k < 8; ++k) {
      double x = t[n] + (t[n + 1] - t[n]) * k / 8.0;
      double lr = phi.eval_log(x + res.gamma.eval(x)) - phi.eval_log(x);
      rep.samples.emplace_back(x, lr);
      rep.sup_ratio_log = std::max(rep.sup_ratio_log, lr);
      ok = ok && lr <= ln4 + 1e-9;
    }
  }
  rep.verdict = ok ? AdmissibilityReport::Verdict::AdmissibleEvidence
                   : AdmissibilityReport::Verdict::Inconclusive;
  rep.has_limit_estimate = false;
  rep.note = ok ? "phi(t+gamma(t)) <= 4 phi(t) on refined grid" : "4x bound violated";
  res.report = rep;
  return res;
}

DefiningFunction compose_psi(const DefiningFunction& phi, const GammaFunction& gamma) {
  return DefiningFunction::composed(phi, gamma);
}

SeriesVerdict check_gap_divergence(const DefiningFunction& phi, int n_max) {
  int n_start = dyadic_start_level(phi);
  std::vector<double> t = dyadic_breakpoints(phi, n_start, n_max);
  std::vector<double> gaps;
  for (size_t i = 0; i + 1 < t.size(); ++i) gaps.push_back(t[i + 1] - t[i]);
  bool nondec = true;
  for (size_t i = 0; i + 1 < gaps.size(); ++i) nondec = nondec && gaps[i + 1] >= gaps[i] * (1 - 1e-9);
  bool grows = gaps.back() > gaps.front() * (1 + 1e-6);
  std::ostringstream cert;
  cert << "dyadic gaps t_{n+1}-t_n from level " << n_start << ": first " << gaps.front()
       << ", last " << gaps.back();
  if (nondec && grows)
    return SeriesVerdict::divergent(LogScalar::from_value(t.back()), gaps.back(),
                                    cert.str() + "; nondecreasing and growing (trend to infinity)");
  if (nondec)
    return SeriesVerdict::convergent(LogScalar::from_value(t.back()), gaps.back(),
                                     cert.str() + "; gaps bounded (do not tend to infinity)");
  return SeriesVerdict::inconclusive(LogScalar::from_value(t.back()), cert.str() + "; not monotone");
}

}  // namespace orlicz
