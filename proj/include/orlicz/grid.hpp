#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace orlicz {

// Strictly increasing sampling grid.
struct Grid {
  enum class Scale { Linear, Geometric };

  std::vector<double> points;
  Scale scale = Scale::Linear;

  static Grid linear(double lo, double hi, int n) {
    if (n < 2 || !(lo < hi)) throw std::invalid_argument("bad grid bounds");
    Grid g;
    g.scale = Scale::Linear;
    g.points.reserve(n);
    for (int i = 0; i < n; ++i) g.points.push_back(lo + (hi - lo) * i / (n - 1));
    return g;
  }

  static Grid geometric(double lo, double hi, int n) {
    if (n < 2 || !(0 < lo && lo < hi)) throw std::invalid_argument("bad grid bounds");
    Grid g;
    g.scale = Scale::Geometric;
    g.points.reserve(n);
    double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < n; ++i) g.points.push_back(std::exp(llo + (lhi - llo) * i / (n - 1)));
    return g;
  }

  double front() const { return points.front(); }
  double back() const { return points.back(); }
  size_t size() const { return points.size(); }
};

}  // namespace orlicz
