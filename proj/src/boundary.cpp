#include "orlicz/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace orlicz {

// ---------------------------------------------------------------- types

namespace {
void validate(const std::vector<StepArc>& arcs) {
  std::vector<LogScalar> ms;
  for (const auto& a : arcs) {
    if (a.measure.is_zero() || a.measure.is_infinite())
      throw std::invalid_argument("arc measures must be positive and finite");
    if (std::isnan(a.log_value) || a.log_value == std::numeric_limits<double>::infinity())
      throw std::invalid_argument("arc values must be finite (modulus zero allowed)");
    ms.push_back(a.measure);
  }
  if (log_sum_exp(ms).log_value > 1e-9)
    throw std::invalid_argument("total arc measure exceeds 1");
}
}  // namespace

StepFunction StepFunction::from_arcs(std::vector<StepArc> arcs) {
  validate(arcs);
  StepFunction f;
  f.arcs_ = std::move(arcs);
  return f;
}

StepFunction StepFunction::measure_theoretic(std::vector<std::pair<LogScalar, double>> arcs) {
  std::vector<StepArc> out;
  for (auto& [m, v] : arcs) out.push_back(StepArc{m, v});
  return from_arcs(std::move(out));
}

StepFunction StepFunction::positioned(std::vector<std::array<double, 3>> arcs) {
  std::vector<StepArc> out;
  std::vector<std::pair<double, double>> spans;
  for (auto& [start, length, lv] : arcs) {
    if (!(start >= 0) || start >= 1 || !(length > 0) || start + length > 1 + 1e-12)
      throw std::invalid_argument("positioned arcs need start in [0,1), length > 0, end <= 1");
    spans.emplace_back(start, start + length);
    out.push_back(StepArc{LogScalar::from_value(length), lv, start, length});
  }
  std::sort(spans.begin(), spans.end());
  for (size_t i = 0; i + 1 < spans.size(); ++i)
    if (spans[i + 1].first < spans[i].second - 1e-12)
      throw std::invalid_argument("positioned arcs overlap");
  return from_arcs(std::move(out));
}

bool StepFunction::positioned_mode() const {
  for (const auto& a : arcs_)
    if (!a.has_position()) return false;
  return !arcs_.empty();
}

LogScalar StepFunction::total_measure() const {
  std::vector<LogScalar> ms;
  for (const auto& a : arcs_) ms.push_back(a.measure);
  return log_sum_exp(ms);
}

LogScalar StepFunction::remainder() const {
  LogScalar total = total_measure();
  if (total.log_value > -1e-12) return LogScalar::zero();
  return log_sub(LogScalar::one(), total);
}

double thm32_log_w(double t, double eta) {
  if (!(t > 0) || t > 1) throw std::domain_error("profile argument must lie in (0,1]");
  return 1.0 - std::log(t) - (1 + eta) * std::log(1.0 - std::log(t));
}

ProfileFunction ProfileFunction::weight(double eta) {
  if (!(eta > 0)) throw std::invalid_argument("eta must be positive");
  ProfileFunction p;
  p.kind_ = Kind::Weight;
  p.eta_ = eta;
  return p;
}

ProfileFunction ProfileFunction::inverse_weight(DefiningFunction phi, double eta) {
  ProfileFunction p = weight(eta);
  p.kind_ = Kind::InverseWeight;
  p.phi_ = std::make_shared<DefiningFunction>(std::move(phi));
  return p;
}

ProfileFunction ProfileFunction::envelope(DefiningFunction phi, double eta) {
  ProfileFunction p = weight(eta);
  p.kind_ = Kind::Envelope;
  p.phi_ = std::make_shared<DefiningFunction>(std::move(phi));
  return p;
}

double ProfileFunction::eval_log(double t) const {
  double lw = thm32_log_w(t, eta_);
  switch (kind_) {
    case Kind::Weight:
      return lw;
    case Kind::InverseWeight:
      return phi_->invert(LogScalar::from_log(lw));
    case Kind::Envelope:
      return phi_->invert(LogScalar::from_log(1.0 - std::log(t))) -
             phi_->invert(LogScalar::from_log(lw));
  }
  return lw;
}

// ----------------------------------------------------- step operations

StepFunction rearrange_decreasing(const StepFunction& f) {
  std::vector<StepArc> arcs;
  for (const auto& a : f.arcs()) arcs.push_back(StepArc{a.measure, a.log_value});
  LogScalar rem = f.remainder();
  if (!rem.is_zero()) arcs.push_back(StepArc{rem, 0.0});
  std::stable_sort(arcs.begin(), arcs.end(),
                   [](const StepArc& a, const StepArc& b) { return a.log_value > b.log_value; });
  return StepFunction::from_arcs(std::move(arcs));
}

LogScalar distribution(const StepFunction& f, LogScalar level) {
  std::vector<LogScalar> ms;
  for (const auto& a : f.arcs())
    if (a.log_value > level.log_value) ms.push_back(a.measure);
  if (level.log_value < 0) {
    LogScalar rem = f.remainder();
    if (!rem.is_zero()) ms.push_back(rem);
  }
  return log_sum_exp(ms);
}

namespace {
// log of sum phi(v_j + shift) m_j including the implicit remainder.
LogScalar modular_log(const StepFunction& f, const DefiningFunction& phi, double shift) {
  std::vector<LogScalar> terms;
  for (const auto& a : f.arcs()) {
    double lv = std::isinf(a.log_value) ? a.log_value : a.log_value + shift;
    double lp = phi.eval_log(lv);
    if (lp != -std::numeric_limits<double>::infinity())
      terms.push_back(LogScalar::from_log(lp) * a.measure);
  }
  LogScalar rem = f.remainder();
  if (!rem.is_zero()) {
    double lp = phi.eval_log(shift);
    if (lp != -std::numeric_limits<double>::infinity())
      terms.push_back(LogScalar::from_log(lp) * rem);
  }
  return log_sum_exp(terms);
}
}  // namespace

ModularValue modular(const StepFunction& f, const DefiningFunction& phi) {
  ModularValue m;
  m.finite = true;
  m.value = modular_log(f, phi, 0.0);
  double v = m.value.log_value < 700 ? m.value.value() : 0.0;
  m.error_bound = 1e-12 * std::max(1.0, v) * double(f.arcs().size() + 1);
  std::ostringstream cert;
  cert << "exact log-scale sum over " << f.arcs().size() << " arcs";
  m.verdict = SeriesVerdict::convergent(m.value, m.error_bound, cert.str());
  return m;
}

double luxemburg(const StepFunction& f, const DefiningFunction& phi, double tol) {
  bool all_zero = f.remainder().is_zero();
  for (const auto& a : f.arcs()) all_zero = all_zero && std::isinf(a.log_value) && a.log_value < 0;
  if (all_zero) throw std::invalid_argument("luxemburg of the zero function");
  // J(x) = log modular of f scaled by e^{-x}, nonincreasing in x = ln t.
  auto J = [&](double x) { return modular_log(f, phi, -x).log_value; };
  double lo, hi;
  if (J(0.0) > 0.0) {
    lo = 0.0;
    for (hi = 1.0; J(hi) > 0.0; hi *= 2) lo = hi;
  } else {
    hi = 0.0;
    for (lo = -1.0; J(lo) <= 0.0; lo *= 2) {
      hi = lo;
      if (lo < -1e6) return 0.0;  // modular <= 1 at every scale
    }
  }
  // invariant: J(lo) > 0 >= J(hi)
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    (J(mid) > 0.0 ? lo : hi) = mid;
  }
  return std::exp(0.5 * (lo + hi));
}

namespace {
// append explicit remainder and strip positions
std::vector<StepArc> full_partition(const StepFunction& f) {
  std::vector<StepArc> arcs;
  for (const auto& a : f.arcs()) arcs.push_back(StepArc{a.measure, a.log_value});
  LogScalar rem = f.remainder();
  if (!rem.is_zero()) arcs.push_back(StepArc{rem, 0.0});
  return arcs;
}
}  // namespace

StepFunction pointwise_product(const StepFunction& f, const StepFunction& g, Alignment mode) {
  if (mode == Alignment::Aligned) {
    if (f.arcs().size() != g.arcs().size())
      throw std::invalid_argument("partition mismatch in aligned product");
    std::vector<StepArc> out;
    for (size_t i = 0; i < f.arcs().size(); ++i) {
      const StepArc &a = f.arcs()[i], &b = g.arcs()[i];
      if (std::abs(a.measure.log_value - b.measure.log_value) > 1e-12)
        throw std::invalid_argument("partition mismatch in aligned product");
      out.push_back(StepArc{a.measure, a.log_value + b.log_value});
    }
    return StepFunction::from_arcs(std::move(out));
  }
  // antialigned: f decreasing, g increasing, merged by measure splitting
  std::vector<StepArc> fa = full_partition(f), ga = full_partition(g);
  std::stable_sort(fa.begin(), fa.end(),
                   [](const StepArc& a, const StepArc& b) { return a.log_value > b.log_value; });
  std::stable_sort(ga.begin(), ga.end(),
                   [](const StepArc& a, const StepArc& b) { return a.log_value < b.log_value; });
  std::vector<StepArc> out;
  size_t i = 0, j = 0;
  LogScalar ri = fa.empty() ? LogScalar::zero() : fa[0].measure;
  LogScalar rj = ga.empty() ? LogScalar::zero() : ga[0].measure;
  while (i < fa.size() && j < ga.size()) {
    LogScalar m = ri <= rj ? ri : rj;
    out.push_back(StepArc{m, fa[i].log_value + ga[j].log_value});
    ri = log_sub(ri, m);
    rj = log_sub(rj, m);
    // residues below 2^-52 of the consumed mass are rounding dust
    if (ri.is_zero() || ri.log_value < m.log_value - 36) {
      if (++i < fa.size()) ri = fa[i].measure;
    }
    if (rj.is_zero() || rj.log_value < m.log_value - 36) {
      if (++j < ga.size()) rj = ga[j].measure;
    }
  }
  return StepFunction::from_arcs(std::move(out));
}

// --------------------------------------------------- profile quadrature

namespace {
struct QuadResult {
  bool finite = true;
  LogScalar value = LogScalar::zero();
  double error = 0.0;
  std::string note;
};

// Integral over (0,1] of exp(log_integrand(t)) for a monotone integrand,
// geometric cells down to 2^-k_max with per-cell Simpson estimate and a
// monotone bracketing error bound.  tail_log: closed-form log of the
// integral over (0, 2^-k_max), or -inf when unknown.
template <class F>
QuadResult integrate_unit(F&& log_integrand, double tail_log, bool tail_known,
                          double divergence_bound) {
  const int k_max = 900;
  std::vector<LogScalar> cells;
  double err = 0.0;
  double prev_cell = -std::numeric_limits<double>::infinity();
  int increasing_run = 0;
  for (int k = 0; k < k_max; ++k) {
    double b = std::ldexp(1.0, -k), a = 0.5 * b;
    double ga = log_integrand(a), gm = log_integrand(0.5 * (a + b)), gb = log_integrand(b);
    double ll = std::log(b - a);
    // Simpson in log scale: len * (g(a) + 4 g(m) + g(b)) / 6
    LogScalar est = log_sum_exp({LogScalar::from_log(ga), LogScalar::from_log(gm + std::log(4.0)),
                                 LogScalar::from_log(gb)});
    double cell = est.log_value + ll - std::log(6.0);
    cells.push_back(LogScalar::from_log(cell));
    double lo = std::min(ga, gb) + ll, hi = std::max(ga, gb) + ll;
    if (hi < 700) err += std::exp(hi) - std::exp(lo);
    increasing_run = cell > prev_cell ? increasing_run + 1 : 0;
    prev_cell = cell;
    LogScalar partial = log_sum_exp(cells);
    if (partial.log_value > std::log(divergence_bound) && increasing_run >= 4) {
      QuadResult q;
      q.finite = false;
      q.value = partial;
      std::ostringstream note;
      note << "partial integral exceeds " << divergence_bound
           << " with increasing cell contributions at t ~ " << a;
      q.note = note.str();
      return q;
    }
  }
  QuadResult q;
  q.value = log_sum_exp(cells);
  q.error = err;
  if (tail_known) {
    q.value = log_add(q.value, LogScalar::from_log(tail_log));
    q.note = "closed-form tail below 2^-900 included";
  } else {
    double g_edge = log_integrand(std::ldexp(1.0, -k_max));
    double g_in = log_integrand(std::ldexp(1.0, -k_max + 4));
    if (g_edge <= g_in) {  // integrand nonincreasing toward 0: tail <= g*delta
      double tl = g_edge - k_max * std::log(2.0);
      q.error += std::exp(std::min(tl, 700.0));
      q.note = "tail bounded by edge value times cutoff";
    } else {
      q.note = "tail below 2^-900 unverified (integrand increasing toward 0)";
    }
  }
  return q;
}

bool same_phi(const ProfileFunction& f, const DefiningFunction& phi) {
  return f.kind() == ProfileFunction::Kind::InverseWeight && f.phi() &&
         f.phi()->render() == phi.render();
}

// log of integral of w over (0, delta): (e/eta) * ln(e/delta)^{-eta}
double w_tail_log(double eta, double log2_delta_exp) {
  double u = 1.0 + log2_delta_exp * std::log(2.0);  // ln(e/delta)
  return 1.0 - std::log(eta) - eta * std::log(u);
}

ModularValue from_quad(const QuadResult& q) {
  ModularValue m;
  m.finite = q.finite;
  m.value = q.value;
  m.error_bound = q.error;
  m.verdict = q.finite ? SeriesVerdict::convergent(q.value, q.error, q.note)
                       : SeriesVerdict::divergent(q.value, q.value.log_value, q.note);
  return m;
}
}  // namespace

ModularValue modular(const ProfileFunction& f, const DefiningFunction& phi,
                     double divergence_bound) {
  auto integrand = [&](double t) { return phi.eval_log(f.eval_log(t)); };
  bool tail_known = same_phi(f, phi);
  double tail = tail_known ? w_tail_log(f.eta(), 900) : 0.0;
  return from_quad(integrate_unit(integrand, tail, tail_known, divergence_bound));
}

ModularValue profile_integral(const ProfileFunction& f, double divergence_bound) {
  auto integrand = [&](double t) { return f.eval_log(t); };
  bool tail_known = f.kind() == ProfileFunction::Kind::Weight;
  double tail = tail_known ? w_tail_log(f.eta(), 900) : 0.0;
  return from_quad(integrate_unit(integrand, tail, tail_known, divergence_bound));
}

// ------------------------------------------------------ thm32 profiles

ExtremalProfiles thm32_extremal(const DefiningFunction& phi, double eta) {
  return ExtremalProfiles{ProfileFunction::weight(eta),
                          ProfileFunction::inverse_weight(phi, eta)};
}

double thm32_inequality_threshold(double eta, double eps) {
  if (!(eps > eta)) throw std::invalid_argument("threshold requires eps > eta");
  const double l10 = std::log(10.0);
  int first_hold = -1;
  for (int k = 280; k >= 0; --k) {
    double log_t = -k * l10;
    double lw = 1.0 - log_t - (1 + eta) * std::log(1.0 - log_t);
    bool holds = lw > 1.0 && lw + (1 + eps) * std::log(lw) >= 1.0 - log_t;
    if (holds)
      first_hold = k;
    else
      break;  // scanning upward in t; stop at the first failure
  }
  if (first_hold < 0) throw std::runtime_error("inequality never holds on the sampled range");
  return std::pow(10.0, -first_hold);
}

// ------------------------------------------------------- misc checks

BoundCheckReport decreasing_bound_check(const StepFunction& f, double I) {
  if (!(I > 0)) throw std::invalid_argument("bound must be positive");
  BoundCheckReport rep;
  rep.log_bound = std::log(I);
  LogScalar cum = LogScalar::zero();
  const auto& arcs = f.arcs();
  for (size_t i = 0; i < arcs.size(); ++i) {
    if (i > 0 && arcs[i].log_value > arcs[i - 1].log_value + 1e-12)
      throw std::invalid_argument("step function must be decreasing (rearrange first)");
    cum = log_add(cum, arcs[i].measure);
    double lhs = cum.log_value + arcs[i].log_value;
    if (lhs > rep.log_bound + 1e-12) {
      rep.holds = false;
      rep.violating_arc = i;
      rep.t = cum.value();
      rep.log_lhs = lhs;
      return rep;
    }
  }
  return rep;
}

std::optional<int> root_membership(const StepFunction& f, const DefiningFunction& psi,
                                   int n_max, double bound) {
  for (int n = 1; n <= n_max; ++n) {
    std::vector<StepArc> arcs;
    for (const auto& a : f.arcs())
      arcs.push_back(StepArc{a.measure, std::isinf(a.log_value) ? a.log_value : a.log_value / n});
    ModularValue m = modular(StepFunction::from_arcs(std::move(arcs)), psi);
    if (m.finite && m.value.log_value <= std::log(bound)) return n;
  }
  return std::nullopt;
}

}  // namespace orlicz
