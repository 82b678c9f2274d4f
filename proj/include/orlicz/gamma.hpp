#pragma once

#include <string>
#include <vector>

namespace orlicz {

// Concave increasing unbounded gain function gamma(t), candidate for the
// shift phi(t + gamma(t)) admissibility checks.  Families below their
// natural floor are extended affinely with matching value and slope.
class GammaFunction {
 public:
  enum class Family {
    Power,             // C * t^p, 0 < p <= 1
    LogWeighted,       // (1+eta) * s^(1-alpha) * log s
    IterLog,           // c * log_k(t)
    SqrtEps,           // sqrt(t) * eps(t), eps piecewise affine with eps(e_k) = k
    PiecewiseConcave,  // explicit concave breakpoint interpolation
  };

  static GammaFunction power(double C, double p);
  static GammaFunction log_weighted(double alpha, double eta);
  static GammaFunction iterlog(int k, double c);
  static GammaFunction sqrt_eps();
  // Breakpoints (t_i, v_i); between them affine, past the last the final
  // slope continues.  Slopes must be nonincreasing.
  static GammaFunction piecewise_concave(std::vector<std::pair<double, double>> pts);

  double eval(double t) const;
  // Inverse on the increasing range; bisection with bracket doubling,
  // closed form for the power family.
  double invert(double y) const;

  double domain_floor() const { return floor_; }
  Family family() const { return family_; }
  double param1() const { return p1_; }
  double param2() const { return p2_; }
  int param_k() const { return k_; }
  std::string render() const;

 private:
  double formula(double t) const;  // value for t >= floor_

  Family family_ = Family::Power;
  double p1_ = 1.0, p2_ = 1.0;
  int k_ = 1;
  double floor_ = 0.0;
  double floor_value_ = 0.0, floor_slope_ = 0.0;  // affine extension data
  std::vector<std::pair<double, double>> pts_;
};

}  // namespace orlicz
