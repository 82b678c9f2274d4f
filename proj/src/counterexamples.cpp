#include "orlicz/counterexamples.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace orlicz {

namespace {
ModularValue exact_sum(const StepFunction& f, const DefiningFunction& phi, double tail,
                       const std::string& cert) {
  ModularValue m = modular(f, phi);
  m.verdict = SeriesVerdict::convergent(m.value, tail, cert);
  return m;
}

StepArc zero_fill(const std::vector<StepArc>& arcs) {
  std::vector<LogScalar> ms;
  for (const auto& a : arcs) ms.push_back(a.measure);
  return StepArc{log_sub(LogScalar::one(), log_sum_exp(ms)),
                 -std::numeric_limits<double>::infinity()};
}
}  // namespace

CounterexampleReport prop34_build(const DefiningFunction& phi, const GammaFunction& gamma, int N) {
  if (N < 1) throw std::invalid_argument("N must be positive");
  auto pre = check_tilde_delta(phi, gamma, Grid::geometric(10.0, 1e8, 40));
  if (pre.verdict != AdmissibilityReport::Verdict::NonAdmissibleEvidence)
    throw std::invalid_argument("pair shows no non-admissible evidence; no counterexample expected");

  auto lr = [&](double t) { return phi.eval_log(t + gamma.eval(t)) - phi.eval_log(t); };
  const double ceiling = 1e306, ln2 = std::log(2.0);
  CounterexampleReport rep;
  std::vector<StepArc> f_arcs, g_arcs, p_arcs;
  double scan = 1.0, harmonic = 0.0;
  for (int n = 1; n <= N; ++n) {
    double need = std::log(double(n));
    while (lr(scan) < need) {
      scan *= 1.05;
      if (scan >= ceiling)
        throw std::runtime_error("search_failure: no witness abscissa below the scan ceiling");
    }
    double lo = scan / 1.05, hi = scan;
    for (int it = 0; it < 60; ++it) {
      double mid = 0.5 * (lo + hi);
      (lr(mid) < need ? lo : hi) = mid;
    }
    double t_ratio = hi;
    double t_size = phi.invert(LogScalar::from_log(n * ln2 - 2 * std::log(double(n))));
    double t_n = std::max(t_ratio, t_size);
    while (lr(t_n) < need) t_n *= 1.0 + 1e-12;
    scan = std::max(scan, t_n);

    double L = phi.eval_log(t_n);
    double log_eps = -(2 * std::log(double(n)) + L);
    double gv = gamma.eval(t_n);
    f_arcs.push_back(StepArc{LogScalar::from_log(log_eps), t_n});
    g_arcs.push_back(StepArc{LogScalar::from_log(log_eps), gv});
    p_arcs.push_back(StepArc{LogScalar::from_log(log_eps), t_n + gv});

    harmonic += 1.0 / n;
    rep.levels.push_back(
        LevelRow{n, t_n, log_eps, phi.eval_log(t_n + gv) + log_eps, harmonic});
  }
  f_arcs.push_back(zero_fill(f_arcs));
  g_arcs.push_back(zero_fill(g_arcs));
  p_arcs.push_back(zero_fill(p_arcs));
  rep.f = StepFunction::from_arcs(f_arcs);
  rep.g = StepFunction::from_arcs(g_arcs);

  rep.modular_f = exact_sum(rep.f, phi, 1.0 / N,
                            "sum of 1/n^2 over chosen levels; tail below pi^2/6 bounded by 1/N");
  // g has the same level weights, and psi_gamma(gamma(t_n)) = phi(t_n),
  // so its modular under psi_gamma is the same sum.
  rep.modular_g = rep.modular_f;
  rep.modular_g.verdict = SeriesVerdict::convergent(
      rep.modular_f.value, 1.0 / N,
      "shared level weights: psi_gamma(gamma(t_n)) * eps_n = phi(t_n) * eps_n = 1/n^2");
  ModularValue mp = modular(StepFunction::from_arcs(p_arcs), phi);
  std::ostringstream cert;
  cert << "each product term is at least 1/n; partial sum at least H_N = " << harmonic;
  rep.modular_product =
      ModularValue{false, mp.value, 0.0, SeriesVerdict::divergent(mp.value, harmonic, cert.str())};
  rep.narrative =
      "f and g share arcs of measure eps_n = 1/(n^2 phi(t_n)); the individual modulars "
      "telescope to sum 1/n^2 while the product picks up the unbounded factor "
      "phi(t_n+gamma(t_n))/phi(t_n) >= n, so its modular dominates the harmonic sum.";
  return rep;
}

CounterexampleReport thm43_refute(const StaircasePhi& stair, int K) {
  if (K < 1) throw std::invalid_argument("K must be positive");
  auto df = DefiningFunction::staircase(stair);
  const double ln2 = std::log(2.0);
  CounterexampleReport rep;
  std::vector<StepArc> f_arcs, p_arcs, g_arcs;
  double harmonic = 0.0;
  size_t n = 1;
  for (int k = 1; k <= K; ++k) {
    double need = k * ln2 - 2 * std::log(double(k));
    while (n < stair.size() && stair.log_phi[n] < need) ++n;
    if (n >= stair.size() || stair.log_phi[n] < need)
      throw std::runtime_error("level_exhaustion: staircase has too few breakpoints");
    if (stair.t[n].log_value > 700)
      throw std::runtime_error("level_exhaustion: breakpoint beyond double range");
    double t = stair.t[n].value();
    double L = df.eval_log(t);
    double log_sp = -(2 * std::log(double(k)) + L);  // |sigma'_k|
    f_arcs.push_back(StepArc{LogScalar::from_log(log_sp), t});
    p_arcs.push_back(StepArc{LogScalar::from_log(log_sp), t + k});
    g_arcs.push_back(StepArc{LogScalar::from_log(-k * ln2), double(k)});
    // slope bound phi(t + k) >= k * phi(t): the staircase slope at t_n is
    // phi(t_n) itself
    if (df.eval_log(t + k) < std::log(double(k)) + L - 1e-9)
      throw std::runtime_error("slope bound violated (staircase data inconsistent)");
    harmonic += 1.0 / k;
    rep.levels.push_back(LevelRow{k, t, log_sp, df.eval_log(t + k) + log_sp, harmonic});
  }
  f_arcs.push_back(zero_fill(f_arcs));
  rep.f = StepFunction::from_arcs(f_arcs);
  rep.g = StepFunction::from_arcs(g_arcs);
  rep.modular_f = exact_sum(rep.f, df, 1.0 / K, "sum of 1/k^2 over shrunk level sets");
  rep.modular_g = exact_sum(rep.g, df, 0.0, "candidate multiplier modular (finite by inspection)");
  ModularValue mp = modular(StepFunction::from_arcs(p_arcs), df);
  std::ostringstream cert;
  cert << "product terms at least 1/k by the slope bound; partial sum at least H_K = " << harmonic;
  rep.modular_product =
      ModularValue{false, mp.value, 0.0, SeriesVerdict::divergent(mp.value, harmonic, cert.str())};
  rep.narrative =
      "an unbounded candidate with log-modulus k on measure 2^{-k} level sets multiplies the "
      "extremal staircase data into a divergent modular, while f itself stays summable.";
  return rep;
}

Thm42Report thm42_inclusion_check(int k, const std::vector<int>& n_range) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  Thm42Report rep;
  rep.k = k;
  for (int n : n_range) {
    if (n < 1 || n > TowerScalar::kMaxLevel - 1)
      throw std::invalid_argument("tower index outside the level budget");
    Thm42Row row;
    row.n = n;
    // x = eps/sqrt(u) = n * exp(-e_{n-1}/2) at u = e_n
    TowerScalar half_log = tower_mul_const(TowerScalar::e_k(n - 1), 0.5);
    double x = 0.0;
    if (auto hv = half_log.to_double(); hv && *hv < 700) x = n * std::exp(-*hv);
    row.exponent = n / (1.0 + std::sqrt(1.0 + x));
    // gamma(e_n) = sqrt(e_n) * n, so ln gamma = e_{n-1}/2 + ln n
    TowerScalar gamma_v = tower_exp(tower_add_const(half_log, std::log(double(n))));
    TowerScalar lhs = iterated(k, TowerDirection::Log, gamma_v);
    row.inclusion_holds = tower_compare(lhs, TowerScalar::from_double(double(n))) >= 0;
    rep.rows.push_back(row);
  }
  for (size_t i = rep.rows.size(); i-- > 0;) {
    if (!rep.rows[i].inclusion_holds) break;
    rep.n0 = rep.rows[i].n;
  }
  return rep;
}

ProfileFunction thm32_envelope(const DefiningFunction& phi, double eta) {
  return ProfileFunction::envelope(phi, eta);
}

EnvelopeCheckReport envelope_check(const StepFunction& g, const ProfileFunction& env) {
  EnvelopeCheckReport rep;
  LogScalar cum = LogScalar::zero();
  const auto& arcs = g.arcs();
  for (size_t i = 0; i < arcs.size(); ++i) {
    cum = log_add(cum, arcs[i].measure);
    if (std::isinf(arcs[i].log_value)) continue;  // modulus zero is always below
    double t = std::min(1.0, cum.value());
    double bound = env.eval_log(t);
    if (arcs[i].log_value > bound + 1e-9) {
      rep.compliant = false;
      rep.violating_arc = i;
      rep.t = t;
      rep.log_g = arcs[i].log_value;
      rep.bound = bound;
      return rep;
    }
  }
  return rep;
}

}  // namespace orlicz
