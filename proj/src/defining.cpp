#include "orlicz/defining.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace orlicz {

namespace {
constexpr double kE1 = 2.718281828459045;
const double kE2 = std::exp(kE1);
const double kE3 = std::exp(kE2);
const double kNegInf = -std::numeric_limits<double>::infinity();

// ln(exp(d) - 1) for d >= 0.
double log_expm1(double d) {
  if (d <= 0) return kNegInf;
  if (d > 30) return d + std::log1p(-std::exp(-d));
  return std::log(std::expm1(d));
}

double log_k(double t, int k) {
  for (int i = 0; i < k; ++i) t = std::log(t);
  return t;
}
}  // namespace

StaircasePhi build_staircase_phi(double gamma_exp, int n_max) {
  if (!(gamma_exp > 0) || n_max < 2) throw std::invalid_argument("staircase needs gamma_exp>0, n_max>=2");
  StaircasePhi s;
  s.gamma_exp = gamma_exp;
  s.t.reserve(n_max);
  s.log_phi.reserve(n_max);
  s.t.push_back(LogScalar::from_log(0.0));  // t_1 = 1
  s.log_phi.push_back(0.0);                 // phi(t_1) = 1
  for (int n = 1; n < n_max; ++n) {
    double step = std::pow(double(n), gamma_exp);         // t_{n+1}-t_n = e^step - 1
    LogScalar gap = LogScalar::from_log(log_expm1(step));
    s.t.push_back(log_add(s.t.back(), gap));
    s.log_phi.push_back(s.log_phi.back() + step);
  }
  return s;
}

DefiningFunction DefiningFunction::exp_pow(double alpha) {
  if (!(alpha > 0) || alpha >= 1) throw std::invalid_argument("exp_pow needs 0<alpha<1");
  DefiningFunction f;
  f.family_ = Family::ExpPow;
  f.p1_ = alpha;
  double t0 = std::pow((1 - alpha) / alpha, 1.0 / alpha);
  f.floor_log_value_ = std::pow(t0, alpha);
  f.floor_slope_ratio_ = alpha * std::pow(t0, alpha - 1);
  return f;
}

DefiningFunction DefiningFunction::exp_lin(double p) {
  if (!(p > 0)) throw std::invalid_argument("exp_lin needs p>0");
  DefiningFunction f;
  f.family_ = Family::ExpLin;
  f.p1_ = p;
  return f;
}

DefiningFunction DefiningFunction::pow(double p) {
  if (!(p >= 1)) throw std::invalid_argument("pow needs p>=1");
  DefiningFunction f;
  f.family_ = Family::Pow;
  f.p1_ = p;
  return f;
}

DefiningFunction DefiningFunction::log_pow(double alpha) {
  if (!(alpha > 0)) throw std::invalid_argument("log_pow needs alpha>0");
  DefiningFunction f;
  f.family_ = Family::LogPow;
  f.p1_ = alpha;
  f.floor_log_value_ = 1.0;                 // (ln e)^alpha
  f.floor_slope_ratio_ = alpha / kE1;       // alpha (ln t)^(alpha-1)/t at t=e
  return f;
}

DefiningFunction DefiningFunction::exp_log_quotient(double alpha, double delta) {
  if (!(alpha > 0) || alpha >= 1 || !(delta > 0))
    throw std::invalid_argument("exp_log_quotient needs 0<alpha<1, delta>0");
  DefiningFunction f;
  f.family_ = Family::ExpLogQuotient;
  f.p1_ = alpha;
  f.p2_ = delta;
  double t0 = kE1 * kE1, beta = alpha / (1 - alpha), q = t0 / 2.0;
  f.floor_log_value_ = delta * std::pow(q, beta);
  f.floor_slope_ratio_ = delta * beta * std::pow(q, beta - 1) * 0.25;  // q'(e^2) = 1/4
  return f;
}

DefiningFunction DefiningFunction::exp_iterlog(int j) {
  if (j < 1 || j > 2) throw std::invalid_argument("exp_iterlog supports j in {1,2} at machine scale");
  DefiningFunction f;
  f.family_ = Family::ExpIterLog;
  f.j_ = j;
  double t0 = f.base_floor();
  f.floor_log_value_ = t0 / log_k(t0, j);
  if (j == 1) {
    double L = std::log(t0);
    f.floor_slope_ratio_ = (L - 1) / (L * L);
  } else {
    double L = std::log(t0), M = std::log(L);
    f.floor_slope_ratio_ = 1.0 / M - 1.0 / (M * M * L);
  }
  return f;
}

DefiningFunction DefiningFunction::staircase(StaircasePhi s) {
  DefiningFunction f;
  f.family_ = Family::Staircase;
  f.stair_ = std::make_shared<const StaircasePhi>(std::move(s));
  return f;
}

DefiningFunction DefiningFunction::composed(DefiningFunction phi, GammaFunction gamma) {
  DefiningFunction f;
  f.family_ = Family::Composed;
  f.comp_phi_ = std::make_shared<const DefiningFunction>(std::move(phi));
  f.comp_gamma_ = std::make_shared<const GammaFunction>(std::move(gamma));
  return f;
}

DefiningFunction DefiningFunction::scaled_arg(double m) const {
  if (!(m > 0)) throw std::invalid_argument("argument scale must be positive");
  DefiningFunction f = *this;
  f.t_scale_ *= m;
  return f;
}

double DefiningFunction::base_floor() const {
  switch (family_) {
    case Family::ExpPow: return std::pow((1 - p1_) / p1_, 1.0 / p1_);
    case Family::ExpLin: return kNegInf;
    case Family::Pow: return 0.0;
    case Family::LogPow: return kE1;
    case Family::ExpLogQuotient: return kE1 * kE1;
    case Family::ExpIterLog: return j_ == 1 ? kE1 * kE1 : kE3;
    case Family::Staircase: return 0.0;
    case Family::Composed: return comp_gamma_->eval(comp_phi_->domain_floor());
  }
  return 0.0;
}

double DefiningFunction::domain_floor() const { return base_floor() / t_scale_; }

double DefiningFunction::formula_log(double u) const {
  switch (family_) {
    case Family::ExpPow: return std::pow(u, p1_);
    case Family::ExpLin: return p1_ * u;
    case Family::Pow: return u > 0 ? p1_ * std::log(u) : kNegInf;
    case Family::LogPow: return std::pow(std::log(u), p1_);
    case Family::ExpLogQuotient: return p2_ * std::pow(u / std::log(u), p1_ / (1 - p1_));
    case Family::ExpIterLog: return u / log_k(u, j_);
    default: break;
  }
  throw std::logic_error("formula_log: unsupported family");
}

double DefiningFunction::eval_log(double t) const {
  double u = t * t_scale_;
  switch (family_) {
    case Family::ExpLin:
      return p1_ * u;
    case Family::Pow:
      return u > 0 ? p1_ * std::log(u) : kNegInf;
    case Family::Composed:
      return comp_phi_->eval_log(comp_gamma_->invert(u));
    case Family::Staircase: {
      const StaircasePhi& s = *stair_;
      if (u <= 0) return kNegInf;
      double lu = std::log(u);
      if (lu < s.t.front().log_value) return lu;  // phi(t) = t below t_1 = 1
      size_t n = std::upper_bound(s.t.begin(), s.t.end(), LogScalar::from_log(lu),
                                  [](LogScalar a, LogScalar b) { return a.log_value < b.log_value; }) -
                 s.t.begin() - 1;
      double tn = std::exp(s.t[n].log_value);
      return s.log_phi[n] + std::log1p(u - tn);
    }
    default: {
      double t0 = base_floor();
      if (u >= t0) return formula_log(u);
      // affine completion: phi(u) = phi(t0) * (1 + r*(u - t0))
      double arg = floor_slope_ratio_ * (u - t0);
      if (arg <= -1) return kNegInf;
      return floor_log_value_ + std::log1p(arg);
    }
  }
}

double DefiningFunction::formula_invert(double g) const {
  switch (family_) {
    case Family::ExpPow: return std::pow(g, 1.0 / p1_);
    case Family::LogPow: return std::exp(std::pow(g, 1.0 / p1_));
    case Family::ExpLogQuotient:
    case Family::ExpIterLog: {
      // increasing formula; bracket doubling then bisection
      double lo = base_floor(), hi = 2 * lo;
      while (formula_log(hi) < g) {
        lo = hi;
        hi *= 2;
        if (!std::isfinite(hi)) throw std::range_error("inverse out of double range");
      }
      for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
        double mid = 0.5 * (lo + hi);
        (formula_log(mid) < g ? lo : hi) = mid;
      }
      return 0.5 * (lo + hi);
    }
    default: break;
  }
  throw std::logic_error("formula_invert: unsupported family");
}

// Inverse in log scale; valid whenever the inverse is positive (always
// the case for y above phi(domain floor) in the families used here).
LogScalar DefiningFunction::invert_log(LogScalar y) const {
  if (y.is_zero() || y.is_infinite()) throw std::range_error("inverse of zero or infinite value");
  double g = y.log_value;  // target ln phi
  double log_scale = std::log(t_scale_);
  switch (family_) {
    case Family::ExpLin: {
      double u = g / p1_;
      if (!(u > 0)) throw std::range_error("exp_lin inverse not positive; use invert()");
      return LogScalar::from_log(std::log(u) - log_scale);
    }
    case Family::Pow:
      return LogScalar::from_log(g / p1_ - log_scale);
    case Family::Staircase: {
      const StaircasePhi& s = *stair_;
      if (g < 0) return LogScalar::from_log(g - log_scale);  // phi(t) = t region
      size_t n = std::upper_bound(s.log_phi.begin(), s.log_phi.end(), g) - s.log_phi.begin();
      if (n == 0) n = 1;
      --n;
      LogScalar u = log_add(s.t[n], LogScalar::from_log(log_expm1(g - s.log_phi[n])));
      return LogScalar::from_log(u.log_value - log_scale);
    }
    case Family::Composed: {
      double u = comp_gamma_->eval(comp_phi_->invert(y));
      return LogScalar::from_log(std::log(u) - log_scale);
    }
    case Family::ExpPow:
      if (g >= floor_log_value_)
        return LogScalar::from_log(std::log(g) / p1_ - log_scale);
      break;
    case Family::LogPow:
      if (g >= floor_log_value_)
        return LogScalar::from_log(std::pow(g, 1.0 / p1_) - log_scale);
      break;
    default:
      if (g >= floor_log_value_)
        return LogScalar::from_log(std::log(formula_invert(g)) - log_scale);
      break;
  }
  // affine completion region: phi(u) = phi(t0)(1 + r (u - t0))
  double t0 = base_floor();
  double u = t0 + std::expm1(g - floor_log_value_) / floor_slope_ratio_;
  if (!(u > t0 - 1.0 / floor_slope_ratio_)) throw std::range_error("value below completion range");
  if (!(u > 0)) throw std::range_error("inverse not positive; use invert()");
  return LogScalar::from_log(std::log(u) - log_scale);
}

double DefiningFunction::invert(LogScalar y) const {
  if (y.is_zero() || y.is_infinite()) throw std::range_error("inverse of zero or infinite value");
  double g = y.log_value;
  switch (family_) {
    case Family::ExpLin:
      return (g / p1_) / t_scale_;
    case Family::Pow:
      return std::exp(g / p1_) / t_scale_;
    case Family::ExpPow:
    case Family::LogPow:
    case Family::ExpLogQuotient:
    case Family::ExpIterLog: {
      if (g >= floor_log_value_) return std::exp(invert_log(y).log_value);
      double t0 = base_floor();
      double u = t0 + std::expm1(g - floor_log_value_) / floor_slope_ratio_;
      if (!(u > t0 - 1.0 / floor_slope_ratio_)) throw std::range_error("value below completion range");
      return u / t_scale_;
    }
    case Family::Composed:
      return comp_gamma_->eval(comp_phi_->invert(y)) / t_scale_;
    case Family::Staircase:
      return std::exp(invert_log(y).log_value);
  }
  return std::exp(invert_log(y).log_value);
}

bool DefiningFunction::capital_convex() const {
  // Phi convex needs phi'' >= phi' everywhere; the affine lower completion
  // of most families breaks this globally.  exp_lin gives Phi(x) = x^p.
  return family_ == Family::ExpLin && p1_ >= 1.0;
}

std::string DefiningFunction::render() const {
  std::ostringstream os;
  os.precision(17);
  switch (family_) {
    case Family::ExpPow: os << "exp_pow(alpha=" << p1_ << ")"; break;
    case Family::ExpLin: os << "exp_lin(p=" << p1_ << ")"; break;
    case Family::Pow: os << "pow(p=" << p1_ << ")"; break;
    case Family::LogPow: os << "log_pow(alpha=" << p1_ << ")"; break;
    case Family::ExpLogQuotient: os << "exp_log_quotient(alpha=" << p1_ << ",delta=" << p2_ << ")"; break;
    case Family::ExpIterLog: os << "exp_iterlog(j=" << j_ << ")"; break;
    case Family::Staircase:
      os << "staircase(gamma=" << stair_->gamma_exp << ",n=" << stair_->size() << ")";
      break;
    case Family::Composed:
      os << "composed(" << comp_phi_->render() << "," << comp_gamma_->render() << ")";
      break;
  }
  if (t_scale_ != 1.0) {
    std::ostringstream os2;
    os2.precision(17);
    os2 << "scaled(" << os.str() << ",m=" << t_scale_ << ")";
    return os2.str();
  }
  return os.str();
}

namespace {
// Trend of a sample sequence over its last decade (geometric grids) or
// last quarter (linear grids).
std::vector<double> tail_samples(const Grid& grid, const std::vector<double>& vals) {
  std::vector<double> out;
  double cutoff = grid.scale == Grid::Scale::Geometric ? grid.back() / 10.0
                                                       : grid.front() + 0.75 * (grid.back() - grid.front());
  for (size_t i = 0; i < vals.size(); ++i)
    if (grid.points[i] >= cutoff) out.push_back(vals[i]);
  if (out.size() < 2 && vals.size() >= 2) out.assign(vals.end() - 2, vals.end());
  return out;
}

bool nonincreasing(const std::vector<double>& v, double tol) {
  for (size_t i = 0; i + 1 < v.size(); ++i)
    if (v[i + 1] > v[i] + tol) return false;
  return true;
}
bool nondecreasing(const std::vector<double>& v, double tol) {
  for (size_t i = 0; i + 1 < v.size(); ++i)
    if (v[i + 1] < v[i] - tol) return false;
  return true;
}
}  // namespace

OrderVerdict compare_orders(const DefiningFunction& phi1, const DefiningFunction& phi2, const Grid& grid) {
  OrderVerdict v;
  std::vector<double> lr, rho;
  double sup = kNegInf;
  for (double t : grid.points) {
    double a = phi1.eval_log(t), b = phi2.eval_log(t);
    double d = a - b;
    v.samples.emplace_back(t, d);
    lr.push_back(d);
    sup = std::max(sup, d);
    rho.push_back((a > 1e-12 && b > 1e-12) ? a / b : std::numeric_limits<double>::quiet_NaN());
  }
  v.sup_ratio_observed = LogScalar::from_log(sup);
  std::vector<double> rtail = tail_samples(grid, rho);
  bool finite_tail = !rtail.empty();
  for (double x : rtail) finite_tail = finite_tail && std::isfinite(x);
  if (!finite_tail) {
    v.trend = OrderVerdict::Trend::Inconclusive;
    v.implied_inclusion = "exponent ratio undefined on grid tail";
    return v;
  }
  double rfin = rtail.back();
  bool comparable = true;
  for (double x : rtail) comparable = comparable && std::abs(x - 1) <= 1e-9;
  if (comparable || nonincreasing(rtail, 1e-12 * std::abs(rtail.front()))) {
    // Heuristic: ln phi1 / ln phi2 nonincreasing over the top decade is
    // taken as evidence limsup Phi1/Phi2 < inf, even if the raw ratio has
    // not yet turned at the grid end.
    v.trend = OrderVerdict::Trend::Bounded;
    v.implied_inclusion =
        "heuristic: Phi1 <= c Phi2 eventually, hence L_{Phi2} subset L_{Phi1} "
        "(exponent ratio nonincreasing over top decade)";
  } else if (nondecreasing(rtail, 1e-12 * std::abs(rtail.front())) && rfin > 1 + 1e-12) {
    v.trend = OrderVerdict::Trend::Unbounded;
    v.implied_inclusion =
        "heuristic: Phi1/Phi2 unbounded, hence L_{Phi1} subset L_{Phi2} strictly "
        "(exponent ratio increasing over top decade)";
  } else {
    v.trend = OrderVerdict::Trend::Inconclusive;
    v.implied_inclusion = "no monotone exponent-ratio trend over top decade";
  }
  return v;
}

OrderVerdict check_delta2(const DefiningFunction& phi, const Grid& grid) {
  OrderVerdict v;
  std::vector<double> lr;
  double sup = kNegInf;
  const double ln2 = std::log(2.0);
  for (double s : grid.points) {
    double t = std::log(s);
    double d = phi.eval_log(t + ln2) - phi.eval_log(t);
    v.samples.emplace_back(s, d);
    lr.push_back(d);
    sup = std::max(sup, d);
  }
  v.sup_ratio_observed = LogScalar::from_log(sup);
  std::vector<double> tail = tail_samples(grid, lr);
  if (nonincreasing(tail, 1e-12 * std::max(1.0, std::abs(tail.front())))) {
    v.trend = OrderVerdict::Trend::Bounded;
    v.implied_inclusion = "heuristic: Phi(2s) <= M Phi(s) + K (ratio nonincreasing over top decade)";
  } else if (tail.back() > lr.front() + std::log(10.0)) {
    v.trend = OrderVerdict::Trend::Unbounded;
    v.implied_inclusion = "heuristic: doubling ratio grows unboundedly";
  } else {
    v.trend = OrderVerdict::Trend::Inconclusive;
    v.implied_inclusion = "no monotone doubling-ratio trend over top decade";
  }
  return v;
}

OrderVerdict check_mult_ordering(const DefiningFunction& phi1, const DefiningFunction& phi2, const Grid& grid) {
  OrderVerdict v;
  std::vector<double> h;
  for (double ly : grid.points) {
    LogScalar y = LogScalar::from_log(ly);
    double d = phi2.invert(y) - phi1.invert(y);
    v.samples.emplace_back(ly, d);
    h.push_back(d);
  }
  v.sup_ratio_observed = LogScalar::from_log(h.empty() ? kNegInf : *std::max_element(h.begin(), h.end()));
  if (nondecreasing(h, 1e-10)) {
    v.trend = OrderVerdict::Trend::Bounded;
    v.implied_inclusion = "phi2^{-1} - phi1^{-1} nondecreasing on grid: Mult ordering inherited";
  } else {
    v.trend = OrderVerdict::Trend::Inconclusive;
    v.implied_inclusion = "phi2^{-1} - phi1^{-1} not monotone on grid";
  }
  return v;
}

}  // namespace orlicz
