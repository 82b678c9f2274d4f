#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "orlicz/disk.hpp"

using namespace orlicz;

TEST_CASE("pseudohyperbolic distance") {
  CHECK(pseudo_distance({0, 0}, {0.3, 0.4}) == doctest::Approx(0.5));
  CHECK(pseudo_distance({0.2, -0.1}, {0.2, -0.1}) == 0.0);
  CHECK(pseudo_distance({0.5, 0}, {0.75, 0}) == doctest::Approx(0.4));
  CHECK(pseudo_distance({0.5, 0}, {0.75, 0}) ==
        doctest::Approx(pseudo_distance({0.75, 0}, {0.5, 0})));
  CHECK_THROWS_AS(pseudo_distance({1.0, 0}, {0, 0}), std::invalid_argument);
}

TEST_CASE("carleson constant of small and radial sequences") {
  CHECK(carleson_constant(DiskSequence{{{0.3, 0.2}}}) == 1.0);
  CHECK(carleson_constant(DiskSequence{{{0.5, 0}, {0.75, 0}}}) == doctest::Approx(0.4));
  auto l20 = radial_carleson(0.5, 20), l40 = radial_carleson(0.5, 40);
  double d20 = carleson_constant(l20), d40 = carleson_constant(l40);
  // the infimum sits at a middle point, whose excluded product carries
  // near-1/3 adjacent factors on both sides: delta_40 ~ 0.0147
  CHECK(d40 > 0.014);
  CHECK(d40 < 0.015);
  CHECK(std::abs(d40 - d20) < 2e-4);
  CHECK(d40 <= d20);  // infimum over a larger set
  // independent product oracle at the observed minimizer
  double best = 1.0;
  for (int i = 1; i <= 40; ++i) {
    double lp = 0.0;
    for (int j = 1; j <= 40; ++j) {
      if (j == i) continue;
      double a = std::pow(2.0, -std::min(i, j)), b = std::pow(2.0, -std::max(i, j));
      lp += std::log((a - b) / (a + b - a * b));
    }
    best = std::min(best, std::exp(lp));
  }
  CHECK(d40 == doctest::Approx(best).epsilon(1e-9));
}

TEST_CASE("radial carleson family") {
  auto seq = radial_carleson(0.5, 2);
  REQUIRE(seq.points.size() == 2);
  CHECK(seq.points[0].re == doctest::Approx(0.5));
  CHECK(seq.points[1].re == doctest::Approx(0.75));
  for (int n = 1; n <= 8; ++n) {
    auto s = radial_carleson(0.3, n);
    double q_n = std::pow(0.3, n);
    double w = 1.0 - s.points.back().re * s.points.back().re;
    CHECK(w == doctest::Approx(q_n * (2 - q_n)).epsilon(1e-12));
  }
}

namespace {
DiskSequence dyadic_weights_sequence(int N) {
  DiskSequence seq;
  for (int n = 1; n <= N; ++n) seq.points.push_back({std::sqrt(1.0 - std::pow(2.0, -n)), 0.0});
  return seq;
}
}  // namespace

TEST_CASE("blaschke weights: tail gains and telescoping certificate") {
  auto seq = dyadic_weights_sequence(30);
  auto rep = blaschke_weights(seq, 0.5);
  for (int n = 1; n <= 30; ++n) {
    CHECK(rep.weights[n - 1] == doctest::Approx(std::pow(2.0, -n)).epsilon(1e-9));
    // tail_n ~ 2^{1-n} (finite truncation), gamma_n ~ 2^{(n-1)/2}
    // finite truncation shifts tail_n by 2^-30, so the tolerance grows
    // with n
    if (n <= 20)
      CHECK(rep.gamma[n - 1] ==
            doctest::Approx(std::pow(2.0, 0.5 * (n - 1))).epsilon(std::pow(2.0, n - 30)));
  }
  for (size_t i = 0; i + 1 < rep.gamma.size(); ++i) CHECK(rep.gamma[i] < rep.gamma[i + 1]);
  CHECK(rep.weighted_sum <= rep.telescope_bound);
  // single weight: gamma = w^{-1/2}
  auto one = blaschke_weights(DiskSequence{{{0.6, 0}}}, 0.5);
  CHECK(one.gamma[0] == doctest::Approx(1.0 / std::sqrt(0.64)));
}

TEST_CASE("pairing against direct-form targets") {
  auto psi = DefiningFunction::exp_pow(0.5);  // direct form e^{sqrt x}
  DiskSequence l1;
  std::vector<double> gamma;
  for (int n = 2; n <= 6; ++n) {
    l1.points.push_back({1.0 - std::pow(2.0, -n), 0.0});
    gamma.push_back(std::exp(double(n)));
  }
  auto pair = pair_with_targets(l1, psi, gamma);
  REQUIRE(pair.d.size() == 5);
  for (int i = 0; i < 5; ++i) {
    int n = i + 2;
    CHECK(pair.d[i] == doctest::Approx(2.0 / (n * n - 1.0)).epsilon(1e-9));
    CHECK(pseudo_distance(pair.lambda1.points[i], pair.lambda2.points[i]) ==
          doctest::Approx(pair.d[i]).epsilon(1e-10));
  }
  // the union cannot be Carleson-better than the closest pair
  DiskSequence uni = pair.lambda1;
  for (auto p : pair.lambda2.points) uni.points.push_back(p);
  double dmin = *std::min_element(pair.d.begin(), pair.d.end());
  CHECK(carleson_constant(uni) <= dmin);
  // the decay floor clips from below
  auto floored = pair_with_targets(l1, psi, {1e9, 1e9, 1e9, 1e9, 1e9}, 0.5);
  for (double d : floored.d) CHECK(d == 0.5);
}

TEST_CASE("trace sums") {
  auto psi = DefiningFunction::exp_pow(0.5);
  DiskSequence l1;
  std::vector<double> gamma;
  for (int n = 2; n <= 8; ++n) {
    l1.points.push_back({1.0 - std::pow(2.0, -n), 0.0});
    gamma.push_back(std::exp(double(n)));
  }
  auto pair = pair_with_targets(l1, psi, gamma);
  size_t n = pair.d.size();
  // a == 0: sum w Psi(0)
  auto z = trace_sum(pair, psi, std::vector<double>(n, 0.0), std::vector<double>(n, 0.0));
  double expected = 0;
  for (const auto& p : pair.lambda1.points)
    expected += (1 - p.re * p.re) * std::exp(psi.eval_log(0.0));
  CHECK(z.value.value() == doctest::Approx(expected).epsilon(1e-10));
  // equal rows: difference quotient drops out
  std::vector<double> a(n, 0.5);
  auto eq = trace_sum(pair, psi, a, a);
  double expected2 = 0;
  for (const auto& p : pair.lambda1.points)
    expected2 += (1 - p.re * p.re) * std::exp(psi.eval_log(0.5));
  CHECK(eq.value.value() == doctest::Approx(expected2).epsilon(1e-10));
  // worst case certified against the gains
  auto worst = trace_sum_worst(pair, psi, gamma);
  CHECK(worst.term_bounded_by_gamma);
  CHECK(std::abs(worst.max_term_excess) <= 1e-9);  // equality when the floor is inactive
  CHECK(worst.sum.value.value() <= worst.gamma_bound_sum * (1 + 1e-9));
}

TEST_CASE("weighted rearrangement") {
  WeightedSequence a{{1.0, 3.0}, {0.5, 0.5}};
  auto r = weighted_rearrangement(a);
  CHECK(r.values == std::vector<double>{3.0, 1.0});
  CHECK(r.value_at(0.25) == 3.0);
  CHECK(r.value_at(0.5) == 1.0);  // right-continuous
  CHECK(r.value_at(1.0) == 1.0);
  CHECK(r.integral_to(0.5) == doctest::Approx(1.5));
  CHECK(r.integral_to(1.0) == doctest::Approx(2.0));
  // permutation invariance
  auto r2 = weighted_rearrangement(WeightedSequence{{3.0, 1.0}, {0.5, 0.5}});
  CHECK(r2.values == r.values);
  CHECK(r2.breakpoints == r.breakpoints);
}

TEST_CASE("calderon split hand example and edge levels") {
  WeightedSequence a{{3.0, 1.0}, {0.5, 0.5}};
  auto [b, c] = calderon_split(a, 0.5);
  CHECK(b.values == std::vector<double>{2.0, 0.0});
  CHECK(c.values == std::vector<double>{1.0, 1.0});
  double l1b = 0;
  for (size_t i = 0; i < 2; ++i) l1b += b.weights[i] * std::abs(b.values[i]);
  auto r = weighted_rearrangement(a);
  CHECK(l1b == doctest::Approx(r.integral_to(0.5) - 0.5 * r.value_at(0.5)));
  // top level: nothing exceeds the maximum
  auto [b0, c0] = calderon_split(WeightedSequence{{2.0, 2.0}, {0.3, 0.3}}, 0.0);
  CHECK(b0.values == std::vector<double>{0.0, 0.0});
  // full level: capped at the minimum, reconstruction exact
  auto [bl, cl] = calderon_split(a, 1.0);
  for (size_t i = 0; i < 2; ++i) CHECK(bl.values[i] + cl.values[i] == a.values[i]);
  CHECK_THROWS_AS(calderon_split(a, 0.25), std::invalid_argument);
}

TEST_CASE("calderon split properties on random sequences") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> val(-3.0, 3.0), wt(0.1, 1.0);
  for (int rep = 0; rep < 200; ++rep) {
    int n = 2 + int(rng() % 6);
    WeightedSequence a;
    for (int i = 0; i < n; ++i) {
      a.values.push_back(val(rng));
      a.weights.push_back(wt(rng));
    }
    auto r = weighted_rearrangement(a);
    std::vector<double> ss = r.breakpoints;
    ss.push_back(0.0);
    for (double s : ss) {
      auto [b, c] = calderon_split(a, s);
      double level = r.value_at(std::min(s, r.total));
      double l1b = 0;
      for (int i = 0; i < n; ++i) {
        CHECK(b.values[i] + c.values[i] == a.values[i]);  // exact reconstruction
        CHECK(std::abs(c.values[i]) <= level + 1e-15);
        l1b += a.weights[i] * std::abs(b.values[i]);
      }
      CHECK(l1b == doctest::Approx(r.integral_to(s) - s * level).epsilon(1e-12));
    }
  }
}

TEST_CASE("majorization comparisons") {
  WeightedSequence u{{1.0, 1.0}, {0.5, 0.5}}, v{{2.0, 0.0}, {0.5, 0.5}};
  CHECK(majorization_leq(u, v));
  CHECK(majorization_leq(u, u));
  CHECK(!majorization_leq(v, u));
  CHECK_THROWS_AS(majorization_leq(u, WeightedSequence{{1.0}, {0.3}}), std::invalid_argument);
}

TEST_CASE("majorization implies ordered luxemburg functionals") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> val(0.0, 2.0), lam(0.0, 1.0);
  auto psis = {DefiningFunction::exp_pow(0.5), DefiningFunction::pow(2.0)};
  for (int rep = 0; rep < 100; ++rep) {
    int n = 2 + int(rng() % 5);
    double L = 0.2 + 0.3 * lam(rng);
    WeightedSequence v;
    for (int i = 0; i < n; ++i) {
      v.values.push_back(val(rng));
      v.weights.push_back(L / n);
    }
    // repeated pinching (equal weights) produces a majorized u
    WeightedSequence u = v;
    for (int k = 0; k < 4; ++k) {
      size_t i = rng() % n, j = rng() % n;
      double m = 0.5 * (u.values[i] + u.values[j]), t = lam(rng);
      u.values[i] = (1 - t) * u.values[i] + t * m;
      u.values[j] = (1 - t) * u.values[j] + t * m;
    }
    REQUIRE(majorization_leq(u, v));
    for (const auto& psi : psis) {
      double lu = luxemburg_direct(u, psi, 1e-11);
      double lv = luxemburg_direct(v, psi, 1e-11);
      CHECK(lu <= lv + 1e-9);
    }
  }
}

TEST_CASE("luxemburg functional is infinite when the direct form cannot shrink below 1") {
  // total mass 1 and Psi(0) = e^{1/2} > 1: no scale brings the modular
  // below 1
  WeightedSequence a{{0.1, 0.1}, {0.5, 0.5}};
  CHECK(std::isinf(luxemburg_direct(a, DefiningFunction::exp_pow(0.5))));
}
