#pragma once

#include <memory>
#include <string>
#include <vector>

#include "orlicz/gamma.hpp"
#include "orlicz/grid.hpp"
#include "orlicz/log_scalar.hpp"

namespace orlicz {

// Piecewise-affine convex function with slope phi(t_n) on [t_n, t_{n+1})
// and phi(t_{n+1}) = phi(t_n) * (1 + t_{n+1} - t_n).  Breakpoints are kept
// in log scale: t_n grows like exp(n^gamma_exp).
struct StaircasePhi {
  double gamma_exp = 1.0;
  std::vector<LogScalar> t;        // breakpoints t_n, log scale, t_1 = 1
  std::vector<double> log_phi;     // ln phi(t_n), log_phi[0] = 0
  size_t size() const { return t.size(); }
};

// t_1 = 1, phi(t_1) = 1, t_{n+1} = t_n + exp(n^gamma_exp) - 1,
// ln phi(t_n) = sum_{k<n} k^gamma_exp.
StaircasePhi build_staircase_phi(double gamma_exp, int n_max);

// Convex nondecreasing superlinear phi acting on t = log|f|.  The capital
// form Phi = phi o log acts on |f| itself.  Families below their natural
// floor are completed affinely (value and slope matched, clamped at zero),
// so Phi(x) -> 0 as x -> 0.
class DefiningFunction {
 public:
  enum class Family {
    ExpPow,           // exp(t^alpha)
    ExpLin,           // exp(p*t)
    Pow,              // max(t,0)^p
    LogPow,           // exp((ln t)^alpha), t >= e
    ExpLogQuotient,   // exp(delta * (t/ln t)^(alpha/(1-alpha)))
    ExpIterLog,       // exp(t / log_j(t))
    Staircase,
    Composed,         // phi o gamma^{-1}
  };

  static DefiningFunction exp_pow(double alpha);
  static DefiningFunction exp_lin(double p);
  static DefiningFunction pow(double p);
  static DefiningFunction log_pow(double alpha);
  static DefiningFunction exp_log_quotient(double alpha, double delta);
  static DefiningFunction exp_iterlog(int j);
  static DefiningFunction staircase(StaircasePhi s);
  static DefiningFunction composed(DefiningFunction phi, GammaFunction gamma);

  // ln phi(t).  Total on the reals: below the completion's zero crossing
  // the result is -inf.
  double eval_log(double t) const;

  // t with phi(t) = y, i.e. ln phi(t) = y.log_value; closed form where
  // available, otherwise bracketed bisection to 1e-10 relative.
  double invert(LogScalar y) const;
  LogScalar invert_log(LogScalar y) const;  // same, returned in log scale

  // ln Phi(x) = ln phi(ln x).
  LogScalar capital_eval_log(LogScalar x) const { return LogScalar::from_log(eval_log(x.log_value)); }
  // Phi^{-1}(y) in log scale: ln Phi^{-1}(y) = phi^{-1}(y).
  LogScalar capital_invert(LogScalar y) const { return LogScalar::from_log(invert(y)); }

  // psi_n(t) = psi(t/n); the capital forms satisfy Psi_n(x) = Psi(x^{1/n}).
  DefiningFunction scale_root(double n) const { return scaled_arg(1.0 / n); }
  // psi^{[m]}(t) = psi(m*t).
  DefiningFunction scaled_arg(double m) const;

  double domain_floor() const;  // floor in the (possibly rescaled) argument
  Family family() const { return family_; }
  double param1() const { return p1_; }
  double param2() const { return p2_; }
  double arg_scale() const { return t_scale_; }
  const StaircasePhi* staircase_data() const { return stair_.get(); }
  // True when the capital form Phi is convex, so the Luxemburg functional
  // is a genuine norm.
  bool capital_convex() const;
  std::string render() const;

 private:
  double formula_log(double u) const;      // ln phi at u >= base floor
  double formula_invert(double g) const;   // inverse of formula_log
  double base_floor() const;

  Family family_ = Family::ExpLin;
  double p1_ = 1.0, p2_ = 0.0;
  int j_ = 1;
  double t_scale_ = 1.0;
  double floor_log_value_ = 0.0;  // ln phi(base floor)
  double floor_slope_ratio_ = 0.0;  // phi'(floor)/phi(floor) = (ln phi)'(floor)
  std::shared_ptr<const StaircasePhi> stair_;
  std::shared_ptr<const DefiningFunction> comp_phi_;
  std::shared_ptr<const GammaFunction> comp_gamma_;
};

// Heuristic boundedness verdict for ratios observed on a finite grid.
struct OrderVerdict {
  enum class Trend { Bounded, Unbounded, Inconclusive };
  LogScalar sup_ratio_observed = LogScalar::zero();
  Trend trend = Trend::Inconclusive;
  std::string implied_inclusion;
  std::vector<std::pair<double, double>> samples;  // (grid point, log ratio)
};

// Brackets limsup Phi_1/Phi_2.  The grid lives in the lower-case variable
// t = ln x; the trend is judged on the exponent ratio
// ln phi_1(t) / ln phi_2(t) over the top decade, which is decisive at
// desk scale where the raw ratio may not have turned yet (heuristic,
// labeled as such in the verdict text).
OrderVerdict compare_orders(const DefiningFunction& phi1, const DefiningFunction& phi2, const Grid& grid);

// sup_s Phi(2s)/Phi(s) over the grid (grid in the capital variable s),
// trend judged on the raw log ratio over the top decade.
OrderVerdict check_delta2(const DefiningFunction& phi, const Grid& grid);

// Evaluates h(y) = phi_2^{-1}(y) - phi_1^{-1}(y) on the grid (grid points
// are ln y) and reports whether h is nondecreasing, the hypothesis under
// which multiplier ordering is inherited.
OrderVerdict check_mult_ordering(const DefiningFunction& phi1, const DefiningFunction& phi2, const Grid& grid);

}  // namespace orlicz
