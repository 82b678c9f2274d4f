#include "orlicz/gamma.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace orlicz {

namespace {
constexpr double kE1 = 2.718281828459045;
const double kE2 = std::exp(kE1);
const double kE3 = std::exp(kE2);

double log_k(double t, int k) {
  for (int i = 0; i < k; ++i) {
    if (t <= 0) throw std::domain_error("iterated log of nonpositive value");
    t = std::log(t);
  }
  return t;
}

// eps(e_k) = k, affine between successive e_k, final slope continued.
double eps_profile(double t) {
  if (t <= kE1) return 1.0 + (t - kE1) / (kE2 - kE1);
  if (t <= kE2) return 1.0 + (t - kE1) / (kE2 - kE1);
  if (t <= kE3) return 2.0 + (t - kE2) / (kE3 - kE2);
  // e_4 overflows doubles; the next segment's slope underflows to zero
  // at machine scale, so eps is flat at 3 past e_3.
  return 3.0;
}
}  // namespace

GammaFunction GammaFunction::power(double C, double p) {
  if (!(C > 0) || !(p > 0) || p > 1) throw std::invalid_argument("power gamma needs C>0, 0<p<=1");
  GammaFunction g;
  g.family_ = Family::Power;
  g.p1_ = C;
  g.p2_ = p;
  g.floor_ = 0.0;
  g.floor_value_ = 0.0;
  g.floor_slope_ = 0.0;  // unused: formula covers t >= 0
  return g;
}

GammaFunction GammaFunction::log_weighted(double alpha, double eta) {
  if (!(alpha > 0) || alpha >= 1 || eta < 0) throw std::invalid_argument("log_weighted gamma needs 0<alpha<1, eta>=0");
  GammaFunction g;
  g.family_ = Family::LogWeighted;
  g.p1_ = alpha;
  g.p2_ = eta;
  g.floor_ = kE1;
  g.floor_value_ = g.formula(g.floor_);
  double h = 1e-6 * g.floor_;
  g.floor_slope_ = (g.formula(g.floor_ + h) - g.floor_value_) / h;
  return g;
}

GammaFunction GammaFunction::iterlog(int k, double c) {
  if (k < 1 || k > 3 || !(c > 0)) throw std::invalid_argument("iterlog gamma needs 1<=k<=3, c>0");
  GammaFunction g;
  g.family_ = Family::IterLog;
  g.k_ = k;
  g.p1_ = c;
  g.floor_ = (k == 1) ? kE1 : (k == 2 ? kE2 : kE3);
  g.floor_value_ = g.formula(g.floor_);
  double h = 1e-6 * g.floor_;
  g.floor_slope_ = (g.formula(g.floor_ + h) - g.floor_value_) / h;
  return g;
}

GammaFunction GammaFunction::sqrt_eps() {
  GammaFunction g;
  g.family_ = Family::SqrtEps;
  g.floor_ = kE1;
  g.floor_value_ = g.formula(g.floor_);
  double h = 1e-6 * g.floor_;
  g.floor_slope_ = (g.formula(g.floor_ + h) - g.floor_value_) / h;
  return g;
}

GammaFunction GammaFunction::piecewise_concave(std::vector<std::pair<double, double>> pts) {
  if (pts.size() < 2) throw std::invalid_argument("need at least two breakpoints");
  double prev_slope = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    double dt = pts[i + 1].first - pts[i].first;
    if (!(dt > 0)) throw std::invalid_argument("breakpoints must increase");
    double s = (pts[i + 1].second - pts[i].second) / dt;
    if (s > prev_slope * (1 + 1e-12) + 1e-12) throw std::invalid_argument("breakpoints not concave");
    prev_slope = s;
  }
  GammaFunction g;
  g.family_ = Family::PiecewiseConcave;
  g.pts_ = std::move(pts);
  g.floor_ = g.pts_.front().first;
  return g;
}

double GammaFunction::formula(double t) const {
  switch (family_) {
    case Family::Power:
      return p1_ * std::pow(t, p2_);
    case Family::LogWeighted:
      return (1.0 + p2_) * std::pow(t, 1.0 - p1_) * std::log(t);
    case Family::IterLog:
      return p1_ * log_k(t, k_);
    case Family::SqrtEps:
      return std::sqrt(t) * eps_profile(t);
    case Family::PiecewiseConcave: {
      size_t i = 0;
      while (i + 2 < pts_.size() && t >= pts_[i + 1].first) ++i;
      double s = (pts_[i + 1].second - pts_[i].second) / (pts_[i + 1].first - pts_[i].first);
      return pts_[i].second + s * (t - pts_[i].first);
    }
  }
  return 0.0;
}

double GammaFunction::eval(double t) const {
  if (family_ == Family::Power) return t >= 0 ? formula(t) : 0.0;
  if (t >= floor_) return formula(t);
  return floor_value_ + floor_slope_ * (t - floor_);
}

double GammaFunction::invert(double y) const {
  if (family_ == Family::Power) {
    if (y < 0) throw std::domain_error("gamma inverse of negative value");
    return std::pow(y / p1_, 1.0 / p2_);
  }
  // bracket doubling around the floor, then bisection to 1e-10 relative
  double lo = floor_, hi = floor_ + 1.0;
  while (eval(hi) < y) {
    lo = hi;
    hi = 2 * hi;
    if (!std::isfinite(hi)) throw std::domain_error("gamma inverse out of range");
  }
  if (eval(lo) > y) {
    // below the floor: walk down the affine extension
    while (eval(lo) > y) {
      lo = floor_ - 2 * (floor_ - lo) - 1.0;
      if (!std::isfinite(lo)) throw std::domain_error("gamma inverse out of range");
    }
    hi = floor_;
  }
  for (int i = 0; i < 200 && (hi - lo) > 1e-10 * std::max(1.0, std::abs(hi)); ++i) {
    double mid = 0.5 * (lo + hi);
    (eval(mid) < y ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::string GammaFunction::render() const {
  std::ostringstream os;
  os.precision(17);
  switch (family_) {
    case Family::Power: os << "power(C=" << p1_ << ",p=" << p2_ << ")"; break;
    case Family::LogWeighted: os << "log_weighted(alpha=" << p1_ << ",eta=" << p2_ << ")"; break;
    case Family::IterLog: os << "iterlog(k=" << k_ << ",c=" << p1_ << ")"; break;
    case Family::SqrtEps: os << "sqrt_eps()"; break;
    case Family::PiecewiseConcave: os << "piecewise_concave(n=" << pts_.size() << ")"; break;
  }
  return os.str();
}

}  // namespace orlicz
