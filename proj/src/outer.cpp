#include <cmath>
#include <complex>
#include <stdexcept>

#include "orlicz/boundary.hpp"

namespace orlicz {

namespace {
constexpr double kTwoPi = 6.283185307179586;

// Integral over the arc [a, a+L] (circle fractions) of the Herglotz kernel
// (zeta+z)/(zeta-z) dm(theta).  With zeta = e^{2 pi i theta} the kernel is
// -1 + 2 zeta/(zeta-z), and the second term has the exact antiderivative
// (1/(i pi)) Log(zeta - z); the arc is subdivided so each principal-branch
// increment is small, which makes the accumulated sum the continuous
// branch difference.
std::complex<double> kernel_integral(double a, double L, std::complex<double> z) {
  double margin = 1.0 - std::abs(z);
  int steps = std::max(32, int(std::ceil(kTwoPi * L * 8.0 / margin)));
  std::complex<double> acc = 0.0;
  std::complex<double> prev = std::polar(1.0, kTwoPi * a) - z;
  for (int k = 1; k <= steps; ++k) {
    std::complex<double> cur = std::polar(1.0, kTwoPi * (a + L * k / steps)) - z;
    acc += std::log(cur / prev);
    prev = cur;
  }
  const std::complex<double> ipi(0.0, M_PI);
  return -L + 2.0 * acc / (2.0 * ipi);
}
}  // namespace

std::complex<double> outer_eval(const StepFunction& f, std::complex<double> z) {
  if (!f.positioned_mode())
    throw std::invalid_argument("position_unrepresentable: outer_eval needs positioned arcs");
  if (!(std::abs(z) < 1)) throw std::domain_error("evaluation point must lie in the open disk");
  std::complex<double> log_f = 0.0;
  for (const auto& arc : f.arcs()) {
    if (std::isinf(arc.log_value))
      throw std::domain_error("log-modulus not integrable: arc with modulus zero");
    if (arc.log_value != 0.0)
      log_f += arc.log_value * kernel_integral(arc.start, arc.length, z);
  }
  return log_f;  // the remainder has modulus 1 and contributes nothing
}

}  // namespace orlicz
